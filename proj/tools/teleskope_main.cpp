#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "teleskope/report.hpp"

namespace {

using teleskope::AnalysisRequest;
using teleskope::OutputFormat;
using teleskope::ReportResult;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::pair<std::string, std::string> split_interval(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
    throw teleskope::ParseError("telescopic interval must look like lo:hi, got '" + text + "'");
  return {text.substr(0, colon), text.substr(colon + 1)};
}

int emit(const ReportResult& result, OutputFormat format) {
  std::cout << teleskope::render(result.body, format);
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Betti numbers and structure of planar linkages with one telescopic leg"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format_text = "json";
  app.add_option("--format", format_text, "Output format: json, csv or table")
      ->capture_default_str();

  std::string fixed_csv, tele_text;
  int tele_index = -1;
  bool recursive = false;
  int grid = 0;

  auto add_instance_options = [&](CLI::App* cmd) {
    cmd->add_option("--fixed", fixed_csv, "Comma-separated fixed leg lengths (decimal strings)")
        ->required();
    cmd->add_option("--tele", tele_text, "Telescopic interval lo:hi")->required();
    cmd->add_option("--tele-index", tele_index,
                    "1-based input position of the telescopic leg (default: last)");
    cmd->add_flag("--recursive-factorization", recursive,
                  "Keep splitting off circle factors while the small-leg condition holds");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Betti numbers and structure of one instance");
  add_instance_options(analyze);

  CLI::App* verify = app.add_subcommand("verify", "Analyze plus grid-based numerical cross-check (n <= 5)");
  add_instance_options(verify);
  verify->add_option("--grid", grid, "Cells per angle (default 1024 for n=4, 128 for n=5, 256 for n=3)");

  std::string sweep_fixed;
  CLI::App* sweep = app.add_subcommand("sweep", "Betti profile per chamber pair of the telescopic interval");
  sweep->add_option("--fixed", sweep_fixed, "Comma-separated fixed leg lengths")->required();

  std::string eq_n, eq_a, eq_b;
  CLI::App* equilateral = app.add_subcommand("equilateral", "Closed forms for unit legs, cross-checked");
  equilateral->add_option("-n,--n", eq_n, "Total leg count including the telescopic one")->required();
  equilateral->add_option("-a,--a", eq_a, "Lower telescopic bound")->required();
  equilateral->add_option("-b,--b", eq_b, "Upper telescopic bound")->required();

  std::string batch_input;
  CLI::App* batch = app.add_subcommand("batch", "Process line-delimited JSON records ('-' = stdin)");
  batch->add_option("input", batch_input, "Input file of records, one JSON object per line")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }

  try {
    const OutputFormat format = teleskope::parse_format(format_text);
    const int threads = teleskope::env_thread_cap();

    if (analyze->parsed() || verify->parsed()) {
      AnalysisRequest req;
      req.fixed = split_list(fixed_csv);
      auto [lo, hi] = split_interval(tele_text);
      req.tele_lo = lo;
      req.tele_hi = hi;
      req.tele_index = tele_index;
      req.recursive_factorization = recursive;
      req.grid = grid;
      req.threads = threads;
      return emit(analyze->parsed() ? teleskope::analyze_report(req) : teleskope::verify_report(req),
                  format);
    }
    if (sweep->parsed()) return emit(teleskope::sweep_report(split_list(sweep_fixed)), format);
    if (equilateral->parsed()) return emit(teleskope::equilateral_report(eq_n, eq_a, eq_b), format);
    if (batch->parsed()) {
      if (batch_input == "-") return teleskope::run_batch(std::cin, std::cout, threads);
      std::ifstream in(batch_input);
      if (!in) {
        std::cerr << "cannot open input file '" << batch_input << "'\n";
        return 3;
      }
      return teleskope::run_batch(in, std::cout, threads);
    }
  } catch (const teleskope::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const teleskope::ContractError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 3;
  } catch (const teleskope::UnsupportedDimensionError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 3;
  } catch (const teleskope::GenericityError& e) {
    std::cerr << "non-generic input: " << e.what() << "\n";
    return 2;
  } catch (const teleskope::DegenerateSubsetError& e) {
    std::cerr << "degenerate subset: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 3;
}
