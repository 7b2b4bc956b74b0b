#include "teleskope/report.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "teleskope/betti.hpp"
#include "teleskope/oracle.hpp"
#include "teleskope/structure.hpp"

namespace teleskope {

const int kDefaultGridN4 = 1024;
const int kDefaultGridN5 = 128;
namespace {
constexpr int kDefaultGridN3 = 256;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "table") return OutputFormat::Table;
  throw ParseError("unknown format '" + text + "' (expected json, csv or table)");
}

int env_thread_cap() {
  const char* v = std::getenv("TELESKOPE_THREADS");
  if (v == nullptr) return 0;
  char* end = nullptr;
  long parsed = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || parsed <= 0 || parsed > 1024) return 0;
  return static_cast<int>(parsed);
}

namespace {

Json rationals_json(const std::vector<Rational>& vals) {
  Json arr = Json::array();
  for (const auto& v : vals) arr.push_back(v.str());
  return arr;
}

Json profile_json(const BettiProfile& p) {
  Json j = Json::object();
  j["dim"] = p.dim();
  j["ranks"] = p.ranks;
  j["torsion_free"] = p.torsion_free;
  j["euler"] = p.euler;
  return j;
}

Json degeneracies_json(const GenericityError& e) {
  Json arr = Json::array();
  for (const auto& w : e.witnesses()) {
    Json item = Json::object();
    item["endpoint"] = w.which;
    item["zero_sign_vector"] = w.signs;
    arr.push_back(std::move(item));
  }
  return arr;
}

Json structure_json(const TelescopicData& data, bool recursive) {
  const StructureReport s = structure_report(data);
  Json j = Json::object();
  j["nonempty"] = s.nonempty;
  j["components"] = s.components;
  if (s.rigid_triple)
    j["rigid_triple"] = *s.rigid_triple;
  else
    j["rigid_triple"] = nullptr;

  Json decs = Json::array();
  if (s.collapse) {
    Json d = Json::object();
    d["kind"] = "collapse";
    d["boundary_ranks"] = s.collapse->boundary.ranks;
    decs.push_back(std::move(d));
  }
  if (s.circle_factor) {
    TelescopicData reduced = s.circle_factor->reduced;
    while (true) {
      Json d = Json::object();
      d["kind"] = "circle_factor";
      d["fixed"] = rationals_json(reduced.fixed().values());
      d["tele_lo"] = reduced.lo().str();
      d["tele_hi"] = reduced.hi().str();
      decs.push_back(std::move(d));
      if (!recursive) break;
      auto next = detect_circle_factor(reduced);
      if (!next) break;
      reduced = next->reduced;
    }
  }
  if (s.two_tori) {
    Json d = Json::object();
    d["kind"] = "two_tori";
    d["expected_ranks"] = s.two_tori->expected_ranks;
    decs.push_back(std::move(d));
  }
  j["decompositions"] = std::move(decs);
  return j;
}

Json chambers_json(const TelescopicData& data) {
  const auto criticals = critical_lengths(data.fixed());
  auto window = [&](const Rational& x) {
    Json w = Json::array({nullptr, nullptr});
    for (const auto& c : criticals) {
      if (c < x) w[0] = c.str();
      if (x < c) {
        w[1] = c.str();
        break;
      }
    }
    return w;
  };
  Json j = Json::object();
  j["critical_lengths"] = rationals_json(criticals);
  j["lo_window"] = window(data.lo());
  j["hi_window"] = window(data.hi());
  return j;
}

}  // namespace

NormalizedRequest normalize_request(const AnalysisRequest& req) {
  if (req.fixed.size() < 2) throw ContractError("need at least two fixed legs");
  const int n = static_cast<int>(req.fixed.size()) + 1;
  int tele = req.tele_index == -1 ? n : req.tele_index;
  if (tele < 1 || tele > n)
    throw ContractError("telescopic index " + std::to_string(tele) + " outside 1.." + std::to_string(n));

  std::vector<Rational> fixed_vals;
  fixed_vals.reserve(req.fixed.size());
  for (const auto& t : req.fixed) fixed_vals.push_back(Rational::parse(t));
  const Rational lo = Rational::parse(req.tele_lo);
  const Rational hi = Rational::parse(req.tele_hi);

  // Stable sort of the fixed legs; rank[i] is the new 0-based slot of input leg i.
  std::vector<int> order(fixed_vals.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return fixed_vals[static_cast<std::size_t>(a)] < fixed_vals[static_cast<std::size_t>(b)]; });
  std::vector<int> rank(fixed_vals.size());
  for (std::size_t slot = 0; slot < order.size(); ++slot) rank[static_cast<std::size_t>(order[slot])] = static_cast<int>(slot);

  std::vector<Rational> sorted_vals;
  sorted_vals.reserve(fixed_vals.size());
  for (std::size_t slot = 0; slot < order.size(); ++slot)
    sorted_vals.push_back(fixed_vals[static_cast<std::size_t>(order[slot])]);

  std::vector<int> permutation(static_cast<std::size_t>(n), 0);
  int input_leg = 0;
  for (int pos = 1; pos <= n; ++pos) {
    if (pos == tele) {
      permutation[static_cast<std::size_t>(pos - 1)] = n;
    } else {
      permutation[static_cast<std::size_t>(pos - 1)] = rank[static_cast<std::size_t>(input_leg)] + 1;
      ++input_leg;
    }
  }

  return NormalizedRequest{TelescopicData(LengthVector(std::move(sorted_vals)), lo, hi),
                           std::move(permutation), tele};
}

namespace {

Json request_echo(const AnalysisRequest& req, const NormalizedRequest& norm) {
  Json j = Json::object();
  j["command"] = "analyze";
  Json in = Json::object();
  in["fixed"] = req.fixed;
  in["tele_lo"] = req.tele_lo;
  in["tele_hi"] = req.tele_hi;
  in["tele_index"] = norm.tele_index;
  j["input"] = std::move(in);
  Json nj = Json::object();
  nj["fixed"] = rationals_json(norm.data.fixed().values());
  nj["tele_lo"] = norm.data.lo().str();
  nj["tele_hi"] = norm.data.hi().str();
  nj["permutation"] = norm.permutation;
  nj["n"] = norm.data.n();
  j["normalized"] = std::move(nj);
  return j;
}

}  // namespace

ReportResult analyze_report(const AnalysisRequest& req) {
  const NormalizedRequest norm = normalize_request(req);
  Json j = request_echo(req, norm);
  try {
    require_generic(norm.data);
  } catch (const GenericityError& e) {
    j["generic"] = false;
    j["degeneracies"] = degeneracies_json(e);
    return {std::move(j), 2};
  }
  j["generic"] = true;
  j["betti"] = profile_json(betti_telescopic(norm.data));
  j["structure"] = structure_json(norm.data, req.recursive_factorization);
  // The chamber list is exponential in the leg count; beyond the enumeration
  // cap the report simply omits it.
  if (norm.data.fixed().size() <= 24)
    j["chambers"] = chambers_json(norm.data);
  else
    j["chambers"] = nullptr;
  return {std::move(j), 0};
}

ReportResult verify_report(const AnalysisRequest& req) {
  ReportResult base = analyze_report(req);
  base.body["command"] = "verify";
  if (base.exit_code != 0) return base;

  const NormalizedRequest norm = normalize_request(req);
  const int n = norm.data.n();
  if (n > 5)
    throw UnsupportedDimensionError("grid verification supports n <= 5, got n = " + std::to_string(n));
  int grid = req.grid;
  if (grid <= 0) grid = n == 4 ? kDefaultGridN4 : (n == 5 ? kDefaultGridN5 : kDefaultGridN3);

  const BettiProfile profile = betti_telescopic(norm.data);
  const OracleRun run = oracle_verify(norm.data, grid, req.threads, /*with_euler=*/n == 4);

  Json o = Json::object();
  o["requested_grid"] = grid;
  o["grid"] = run.resolution_used;
  o["ambiguous"] = run.ambiguous;
  o["marked_cells"] = run.marked;
  o["components"] = run.components;
  o["components_match"] = run.components == profile.rank(0);
  if (run.euler) {
    o["euler"] = *run.euler;
    o["euler_match"] = *run.euler == profile.euler;
  } else {
    o["euler"] = nullptr;
    o["euler_match"] = nullptr;
  }
  o["stable"] = run.stable;
  o["low_confidence"] = run.ambiguous > 0;
  o["wall_margin"] = run.wall_margin;
  base.body["oracle"] = std::move(o);
  return base;
}

ReportResult equilateral_report(const std::string& n_text, const std::string& a_text,
                                const std::string& b_text) {
  const Rational n_val = Rational::parse(n_text);
  if (!n_val.is_integer() || n_val < Rational(3) || n_val > Rational(40))
    throw ContractError("n must be an integer in 3..40");
  const int n = static_cast<int>(n_val.num().convert_to<long long>());
  const Rational a = Rational::parse(a_text);
  const Rational b = Rational::parse(b_text);

  Json j = Json::object();
  j["command"] = "equilateral";
  Json in = Json::object();
  in["n"] = n_text;
  in["a"] = a_text;
  in["b"] = b_text;
  j["input"] = std::move(in);

  BettiProfile closed;
  try {
    closed = betti_equilateral(n, a, b);
  } catch (const GenericityError& e) {
    j["generic"] = false;
    j["degeneracies"] = degeneracies_json(e);
    return {std::move(j), 2};
  }
  j["generic"] = true;

  const LengthVector ones(std::vector<Rational>(static_cast<std::size_t>(n - 1), Rational(1)));
  const BettiProfile general = betti_telescopic(TelescopicData(ones, a, b));

  j["closed_form_ranks"] = closed.ranks;
  j["cross_check_ranks"] = general.ranks;
  const bool match = closed.ranks == general.ranks;
  j["match"] = match;
  if (!match)
    throw std::logic_error("equilateral closed form disagrees with the general count: " + j.dump());
  j["betti"] = profile_json(closed);
  return {std::move(j), 0};
}

ReportResult sweep_report(const std::vector<std::string>& fixed_texts) {
  std::vector<Rational> vals;
  vals.reserve(fixed_texts.size());
  for (const auto& t : fixed_texts) vals.push_back(Rational::parse(t));
  std::sort(vals.begin(), vals.end());
  const LengthVector fixed(vals);
  if (fixed.size() < 2) throw ContractError("need at least two fixed legs");

  const auto criticals = critical_lengths(fixed);
  std::vector<Rational> bounds;
  if (criticals.empty() || !(criticals.front() == Rational(0))) bounds.push_back(Rational(0));
  bounds.insert(bounds.end(), criticals.begin(), criticals.end());
  const int chambers = static_cast<int>(bounds.size());

  auto midpoint = [&](int i) {
    if (i + 1 < chambers) return (bounds[static_cast<std::size_t>(i)] + bounds[static_cast<std::size_t>(i + 1)]) / Rational(2);
    return bounds.back() + Rational(1);
  };
  auto pair_samples = [&](int i, int j) {
    if (i != j) return std::pair<Rational, Rational>(midpoint(i), midpoint(j));
    if (i + 1 < chambers) {
      const Rational w = bounds[static_cast<std::size_t>(i + 1)] - bounds[static_cast<std::size_t>(i)];
      return std::pair<Rational, Rational>(bounds[static_cast<std::size_t>(i)] + w / Rational(3),
                                           bounds[static_cast<std::size_t>(i)] + (w + w) / Rational(3));
    }
    return std::pair<Rational, Rational>(bounds.back() + Rational(1), bounds.back() + Rational(2));
  };

  Json j = Json::object();
  j["command"] = "sweep";
  Json in = Json::object();
  in["fixed"] = fixed_texts;
  j["input"] = std::move(in);
  j["normalized_fixed"] = rationals_json(fixed.values());
  j["critical_lengths"] = rationals_json(criticals);

  Json chs = Json::array();
  for (int i = 0; i < chambers; ++i) {
    Json c = Json::object();
    c["index"] = i;
    c["from"] = bounds[static_cast<std::size_t>(i)].str();
    if (i + 1 < chambers)
      c["to"] = bounds[static_cast<std::size_t>(i + 1)].str();
    else
      c["to"] = nullptr;
    chs.push_back(std::move(c));
  }
  j["chambers"] = std::move(chs);

  Json rows = Json::array();
  for (int i = 0; i < chambers; ++i)
    for (int jj = i; jj < chambers; ++jj) {
      auto [lo, hi] = pair_samples(i, jj);
      const TelescopicData data(fixed, lo, hi);
      Json row = Json::object();
      row["lo_chamber"] = i;
      row["hi_chamber"] = jj;
      row["lo_sample"] = lo.str();
      row["hi_sample"] = hi.str();
      row["empty"] = !is_nonempty(data);
      row["ranks"] = betti_telescopic(data).ranks;
      rows.push_back(std::move(row));
    }
  j["rows"] = std::move(rows);
  return {std::move(j), 0};
}

namespace {

std::string render_csv(const Json& report) {
  std::ostringstream os;
  const std::string cmd = report.value("command", "");
  if (cmd == "sweep") {
    std::size_t width = 0;
    for (const auto& row : report.at("rows")) width = std::max(width, row.at("ranks").size());
    os << "lo_chamber,hi_chamber";
    for (std::size_t k = 0; k < width; ++k) os << ",b" << k;
    os << ",empty\n";
    for (const auto& row : report.at("rows")) {
      os << row.at("lo_chamber").get<int>() << "," << row.at("hi_chamber").get<int>();
      const auto& ranks = row.at("ranks");
      for (std::size_t k = 0; k < width; ++k)
        os << "," << (k < ranks.size() ? ranks[k].get<std::int64_t>() : 0);
      os << "," << (row.at("empty").get<bool>() ? 1 : 0) << "\n";
    }
    return os.str();
  }
  os << "k,rank\n";
  if (report.contains("betti")) {
    const auto& ranks = report.at("betti").at("ranks");
    for (std::size_t k = 0; k < ranks.size(); ++k) os << k << "," << ranks[k].get<std::int64_t>() << "\n";
  }
  return os.str();
}

std::string join_ranks(const Json& ranks) {
  std::ostringstream os;
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    if (k) os << ", ";
    os << ranks[k].get<std::int64_t>();
  }
  return os.str();
}

std::string render_table(const Json& report) {
  std::ostringstream os;
  const std::string cmd = report.value("command", "");
  if (cmd == "sweep") {
    os << "critical lengths:";
    for (const auto& c : report.at("critical_lengths")) os << " " << c.get<std::string>();
    os << "\n";
    os << "lo-ch  hi-ch  sample            ranks\n";
    for (const auto& row : report.at("rows")) {
      os << "  " << row.at("lo_chamber").get<int>() << "     " << row.at("hi_chamber").get<int>()
         << "    [" << row.at("lo_sample").get<std::string>() << ", "
         << row.at("hi_sample").get<std::string>() << "]  (" << join_ranks(row.at("ranks")) << ")";
      if (row.at("empty").get<bool>()) os << "  empty";
      os << "\n";
    }
    return os.str();
  }
  if (report.contains("generic") && !report.at("generic").get<bool>()) {
    os << "not generic\n";
    for (const auto& d : report.at("degeneracies")) {
      os << "  zero signed sum";
      const std::string ep = d.at("endpoint").get<std::string>();
      if (!ep.empty()) os << " at " << ep;
      os << ": (";
      const auto& sv = d.at("zero_sign_vector");
      for (std::size_t i = 0; i < sv.size(); ++i) {
        if (i) os << ",";
        os << (sv[i].get<int>() > 0 ? "+1" : "-1");
      }
      os << ")\n";
    }
    return os.str();
  }
  if (report.contains("normalized")) {
    const auto& nj = report.at("normalized");
    os << "n: " << nj.at("n").get<int>() << "\nfixed:";
    for (const auto& f : nj.at("fixed")) os << " " << f.get<std::string>();
    os << "\ntelescopic: [" << nj.at("tele_lo").get<std::string>() << ", "
       << nj.at("tele_hi").get<std::string>() << "]\n";
  }
  if (report.contains("betti")) {
    const auto& bj = report.at("betti");
    os << "betti ranks: (" << join_ranks(bj.at("ranks")) << ")   euler: "
       << bj.at("euler").get<std::int64_t>() << "   torsion-free: yes\n";
  }
  if (report.contains("structure")) {
    const auto& sj = report.at("structure");
    os << "nonempty: " << (sj.at("nonempty").get<bool>() ? "yes" : "no")
       << "   components: " << sj.at("components").get<int>();
    if (sj.at("rigid_triple").is_null())
      os << "   rigid triple: none";
    else
      os << "   rigid triple: (" << sj.at("rigid_triple")[0].get<int>() << ","
         << sj.at("rigid_triple")[1].get<int>() << "," << sj.at("rigid_triple")[2].get<int>() << ")";
    os << "\n";
    for (const auto& d : sj.at("decompositions")) {
      os << "decomposition: " << d.at("kind").get<std::string>() << "\n";
    }
  }
  if (report.contains("oracle")) {
    const auto& oj = report.at("oracle");
    os << "oracle: grid " << oj.at("grid").get<int>() << ", components "
       << oj.at("components").get<int>()
       << (oj.at("components_match").get<bool>() ? " (match)" : " (MISMATCH)");
    if (!oj.at("euler").is_null())
      os << ", euler " << oj.at("euler").get<std::int64_t>()
         << (oj.at("euler_match").get<bool>() ? " (match)" : " (MISMATCH)");
    os << ", ambiguous " << oj.at("ambiguous").get<std::int64_t>() << "\n";
  }
  if (cmd == "equilateral" && report.contains("match"))
    os << "closed form matches general count: " << (report.at("match").get<bool>() ? "yes" : "no")
       << "\n";
  return os.str();
}

}  // namespace

std::string render(const Json& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json:
      return report.dump(2) + "\n";
    case OutputFormat::Csv:
      return render_csv(report);
    case OutputFormat::Table:
      return render_table(report);
  }
  return {};
}

namespace {

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string field_as_string(const Json& j, const std::string& name) {
  if (!j.contains(name)) throw ParseError("record is missing field '" + name + "'");
  const auto& v = j.at(name);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_float())
    throw ParseError("field '" + name + "' must be a string to stay exact");
  throw ParseError("field '" + name + "' has an unsupported type");
}

std::vector<std::string> fixed_from_record(const Json& j) {
  if (!j.contains("fixed")) throw ParseError("record is missing field 'fixed'");
  const auto& v = j.at("fixed");
  if (v.is_string()) return split_csv(v.get<std::string>());
  if (!v.is_array()) throw ParseError("field 'fixed' must be an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& e = v[i];
    if (e.is_string())
      out.push_back(e.get<std::string>());
    else if (e.is_number_integer())
      out.push_back(std::to_string(e.get<std::int64_t>()));
    else if (e.is_number_unsigned())
      out.push_back(std::to_string(e.get<std::uint64_t>()));
    else
      throw ParseError("entry " + std::to_string(i) + " of 'fixed' must be a string");
  }
  return out;
}

struct BatchOutcome {
  std::string line;
  bool failed = false;
};

BatchOutcome process_record(const std::string& line) {
  Json echo = Json::object();
  try {
    Json rec = Json::parse(line);
    if (!rec.is_object()) throw ParseError("record must be a JSON object");
    echo = Json(rec);
    const std::string cmd = field_as_string(rec, "command");
    Json result;
    if (cmd == "analyze" || cmd == "verify") {
      AnalysisRequest req;
      req.fixed = fixed_from_record(rec);
      req.tele_lo = field_as_string(rec, "tele_lo");
      req.tele_hi = field_as_string(rec, "tele_hi");
      if (rec.contains("tele_index"))
        req.tele_index = static_cast<int>(Rational::parse(field_as_string(rec, "tele_index")).num().convert_to<long long>());
      if (rec.contains("recursive")) req.recursive_factorization = rec.at("recursive").get<bool>();
      req.threads = 1;  // records already run in parallel
      if (cmd == "verify") {
        if (rec.contains("grid"))
          req.grid = static_cast<int>(Rational::parse(field_as_string(rec, "grid")).num().convert_to<long long>());
        result = verify_report(req).body;
      } else {
        result = analyze_report(req).body;
      }
    } else if (cmd == "equilateral") {
      result = equilateral_report(field_as_string(rec, "n"), field_as_string(rec, "a"),
                                  field_as_string(rec, "b"))
                   .body;
    } else if (cmd == "sweep") {
      result = sweep_report(fixed_from_record(rec)).body;
    } else {
      throw ParseError("unknown command '" + cmd + "'");
    }
    echo["result"] = std::move(result);
    return {echo.dump(), false};
  } catch (const std::exception& e) {
    if (echo.is_null() || echo.empty()) {
      echo = Json::object();
      echo["raw"] = line;
    }
    Json err = Json::object();
    err["message"] = e.what();
    echo["error"] = std::move(err);
    return {echo.dump(), true};
  }
}

}  // namespace

int run_batch(std::istream& in, std::ostream& out, int threads) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    lines.push_back(line);
  }
  std::vector<BatchOutcome> results(lines.size());
  if (!lines.empty()) {
    int cap = threads > 0 ? threads : env_thread_cap();
    if (cap <= 0) {
      unsigned hc = std::thread::hardware_concurrency();
      cap = hc == 0 ? 1 : static_cast<int>(hc);
    }
    const int workers = std::min<int>({cap, static_cast<int>(lines.size()), 16});
    if (workers <= 1) {
      for (std::size_t i = 0; i < lines.size(); ++i) results[i] = process_record(lines[i]);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
          while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= lines.size()) return;
            results[i] = process_record(lines[i]);
          }
        });
      for (auto& t : pool) t.join();
    }
  }
  bool any_failed = false;
  for (const auto& r : results) {
    out << r.line << "\n";
    any_failed |= r.failed;
  }
  return any_failed ? 1 : 0;
}

}  // namespace teleskope
