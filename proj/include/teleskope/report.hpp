#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "teleskope/core.hpp"

namespace teleskope {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Json, Csv, Table };
OutputFormat parse_format(const std::string& text);  // throws ParseError

struct AnalysisRequest {
  std::vector<std::string> fixed;  // decimal strings, user order
  std::string tele_lo;
  std::string tele_hi;
  int tele_index = -1;  // 1-based position of the telescopic leg; -1 = last
  bool recursive_factorization = false;
  int grid = 0;     // verify only; 0 = dimension default
  int threads = 0;  // 0 = hardware
};

struct NormalizedRequest {
  TelescopicData data;
  std::vector<int> permutation;  // original position -> normalized position, 1-based
  int tele_index;                // resolved original position of the telescopic leg
};

// Sorts the fixed legs ascending (stable) and moves the telescopic leg to
// the last index, recording where every original position went.
NormalizedRequest normalize_request(const AnalysisRequest& req);

struct ReportResult {
  Json body;
  int exit_code = 0;  // 0 ok, 2 non-generic
};

ReportResult analyze_report(const AnalysisRequest& req);
ReportResult verify_report(const AnalysisRequest& req);
ReportResult equilateral_report(const std::string& n_text, const std::string& a_text,
                                const std::string& b_text);
ReportResult sweep_report(const std::vector<std::string>& fixed_texts);

std::string render(const Json& report, OutputFormat format);

// Line-delimited records in, one result per line out, input order preserved.
// Returns 0 when every record succeeded, 1 otherwise.
int run_batch(std::istream& in, std::ostream& out, int threads);

int env_thread_cap();  // TELESKOPE_THREADS, 0 when unset/invalid

extern const int kDefaultGridN4;
extern const int kDefaultGridN5;

}  // namespace teleskope
