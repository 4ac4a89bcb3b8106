#include "sf5/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>

#include "sf5/acceptance.hpp"
#include "sf5/parallel.hpp"

namespace sf5::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

i64 get_int(const json& args, const char* key) {
  if (!args.contains(key)) throw UsageError(std::string("missing parameter '") + key + "'");
  const auto& v = args.at(key);
  if (!v.is_number_integer()) throw UsageError(std::string("parameter '") + key + "' must be an integer");
  return v.get<i64>();
}

std::string get_string(const json& args, const char* key) {
  if (!args.contains(key) || !args.at(key).is_string())
    throw UsageError(std::string("missing string parameter '") + key + "'");
  return args.at(key).get<std::string>();
}

MetacyclicPresentation presentation_arg(const json& args) {
  try {
    return MetacyclicPresentation::validate(get_int(args, "m"), get_int(args, "n"), get_int(args, "r"));
  } catch (const PresentationError& e) {
    throw UsageError(e.what());
  } catch (const SizeError& e) {
    throw UsageError(e.what());
  }
}

WeightMatrix weights_arg(const json& args, const char* key = "weights") {
  try {
    return WeightMatrix::parse(get_string(args, key));
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

IntMatrix square_matrix_arg(const json& args, const char* key, std::size_t k) {
  std::string text = get_string(args, key);
  std::replace(text.begin(), text.end(), '/', ';');
  IntMatrix out(k, k);
  std::size_t row = 0, col = 0;
  std::stringstream rows(text);
  std::string row_text;
  while (std::getline(rows, row_text, ';')) {
    if (row >= k) throw UsageError(std::string(key) + ": expected " + std::to_string(k) + " rows");
    std::stringstream cols(row_text);
    std::string cell;
    col = 0;
    while (std::getline(cols, cell, ',')) {
      if (col >= k) throw UsageError(std::string(key) + ": expected " + std::to_string(k) + " columns");
      try {
        std::size_t used = 0;
        out(row, col) = std::stoll(cell, &used);
        if (cell.find_first_not_of(' ', used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw UsageError(std::string(key) + ": not an integer: '" + cell + "'");
      }
      ++col;
    }
    if (col != k) throw UsageError(std::string(key) + ": expected " + std::to_string(k) + " columns");
    ++row;
  }
  if (row != k) throw UsageError(std::string(key) + ": expected " + std::to_string(k) + " rows");
  return out;
}

void check_cap(const MetacyclicPresentation& g, const RunConfig& config) {
  (void)config;
  if (g.order() > kDefaultOrderCap) throw UsageError("group order exceeds the enumeration cap 10000");
}

OptimizerParams optimizer_from(const RunConfig& c) {
  OptimizerParams p;
  p.restarts = static_cast<int>(c.restarts);
  p.max_iters = static_cast<int>(c.max_iters);
  p.seed = c.seed;
  return p;
}

SamplerParams sampler_from(const RunConfig& c) {
  SamplerParams p;
  p.restarts = static_cast<int>(c.restarts);
  p.max_iters = static_cast<int>(c.max_iters);
  p.seed = c.seed;
  return p;
}

void pass(Report& r) { r.summary = {{"passed", true}, {"failures", json::array()}}; }

void fail(Report& r, json failures) {
  r.summary = {{"passed", false}, {"failures", std::move(failures)}};
  r.exit_code = kFailure;
}

// --- commands --------------------------------------------------------------

void groups_check(Report& r) {
  const auto g = presentation_arg(r.args);
  check_cap(g, r.config);
  r.payload = group_report(g);
  pass(r);
}

void groups_enumerate(Report& r) {
  const i64 max_order = get_int(r.args, "max_order");
  if (max_order < 1 || max_order > kDefaultOrderCap) throw UsageError("max_order must be in [1, 10000]");
  std::vector<std::array<i64, 3>> all;
  for (i64 m = 1; m <= max_order; ++m)
    for (i64 n = 1; m * n <= max_order; ++n)
      for (i64 k = 0; k < m; ++k)
        if (powmod(k, n, m) == 1 % m) all.push_back({m, n, k});
  const auto verdicts = parallel_map(all.size(), default_thread_count(), [&](std::size_t i) {
    const auto g = MetacyclicPresentation::validate(all[i][0], all[i][1], all[i][2]);
    return is_spherical_5_space_group(g);
  });
  json spherical = json::array();
  i64 cyclic = 0, noncyclic_spherical = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& v = verdicts[i];
    if (v.cyclic) {
      ++cyclic;
      continue;
    }
    if (!v.verdict) continue;
    ++noncyclic_spherical;
    spherical.push_back({{"m", all[i][0]},
                         {"n", all[i][1]},
                         {"r", all[i][2]},
                         {"order", all[i][0] * all[i][1]},
                         {"witness", {{"m", v.witness->m}, {"n", v.witness->n}, {"r", v.witness->r}}}});
  }
  r.payload = {{"max_order", max_order},
               {"presentations", all.size()},
               {"cyclic", cyclic},
               {"noncyclic", static_cast<i64>(all.size()) - cyclic},
               {"noncyclic_spherical", noncyclic_spherical},
               {"spherical", spherical}};
  pass(r);
}

void groups_harness(Report& r) {
  const i64 max_order = get_int(r.args, "max_order");
  if (max_order < 1 || max_order > kDefaultOrderCap) throw UsageError("max_order must be in [1, 10000]");
  const auto report = spherical_harness(max_order);
  r.payload = to_json(report);
  if (report.passed())
    pass(r);
  else
    fail(r, r.payload["counterexamples"]);
}

void extent_bound(Report& r) {
  const i64 n = get_int(r.args, "n");
  const i64 q = get_int(r.args, "q");
  if (n < 2 || q < 2) throw UsageError("need n >= 2 and q >= 2");
  if (q > 1'000'000) throw UsageError("q must be <= 1000000");
  const auto b = extent_upper_bound(n, static_cast<int>(q));
  r.payload = {{"n", n},
               {"q", q},
               {"alpha_q", alpha_q(static_cast<int>(q))},
               {"bound", b.value},
               {"clamped", b.clamped},
               {"pi_over_3", kPi / 3},
               {"margin_to_pi_over_3", kPi / 3 - b.value},
               {"verdict", b.value < kPi / 3}};
  pass(r);
}

void extent_optimize(Report& r) {
  const i64 q = get_int(r.args, "q");
  if (q < 2 || q > 64) throw UsageError("q must be in [2, 64]");
  if (get_int(r.args, "n") > 1'000'000) throw UsageError("n must be <= 1000000");
  LensSpace lens = [&] {
    try {
      return LensSpace::make(get_int(r.args, "n"), get_int(r.args, "k"), get_int(r.args, "l"));
    } catch (const UsageError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  const auto est = optimize_extent(lens, static_cast<int>(q), optimizer_from(r.config));
  r.payload = to_json(est, lens);
  const bool consistent = est.lower_bound <= est.upper_bound + 1e-9;
  r.payload["consistent"] = consistent;
  if (consistent)
    pass(r);
  else
    fail(r, json::array({"lower bound exceeds the closed-form upper bound"}));
}

void extent_scan(Report& r) {
  const i64 q = r.args.contains("q") ? get_int(r.args, "q") : 5;
  const i64 from = get_int(r.args, "from");
  const i64 to = get_int(r.args, "to");
  if (q < 2 || from < 2 || to < from) throw UsageError("need q >= 2 and 2 <= from <= to");
  if (to - from > 10'000'000) throw UsageError("scan range limited to 10^7 values");
  const auto table = extent_bound_scan(from, to, static_cast<int>(q));
  r.payload = to_json(table);
  if (table.holds) {
    pass(r);
  } else {
    json bad = json::array();
    for (const auto& row : table.rows)
      if (row.n >= 61 && !row.verdict) bad.push_back(row.n);
    fail(r, bad);
  }
}

void torus_analyze(Report& r) {
  const auto w = weights_arg(r.args);
  r.payload = torus_report(w);
  if (w.effective())
    pass(r);
  else
    fail(r, json::array({"weights are not effective; kernel witness " + json(w.kernel_witness()).dump()}));
}

void rep_verify(Report& r) {
  const auto g = presentation_arg(r.args);
  check_cap(g, r.config);
  const i64 c = get_int(r.args, "c");
  try {
    const auto rep = build_standard_rep(g.m(), g.n(), g.r(), c);
    r.payload = rep_report(rep, c, sampler_from(r.config));
    pass(r);
  } catch (const RelationError& e) {
    r.payload = {{"parameters", {{"m", g.m()}, {"n", g.n()}, {"r", g.r()}, {"c", c}}},
                 {"relations_verified", false},
                 {"error", e.what()}};
    fail(r, json::array({e.what()}));
  }
}

void rep_invariance(Report& r) {
  const auto g = presentation_arg(r.args);
  check_cap(g, r.config);
  const i64 c = get_int(r.args, "c");
  const auto w = weights_arg(r.args);
  const auto rho_a = square_matrix_arg(r.args, "rho_a", w.k());
  const auto rho_b = square_matrix_arg(r.args, "rho_b", w.k());
  try {
    const auto rep = build_standard_rep(g.m(), g.n(), g.r(), c);
    const bool holds = verify_pi1_invariance(rep, w, rho_a, rho_b);
    r.payload = {{"parameters", {{"m", g.m()}, {"n", g.n()}, {"r", g.r()}, {"c", c}}},
                 {"weights", w.str()},
                 {"rho_a", rho_a.str()},
                 {"rho_b", rho_b.str()},
                 {"invariant", holds}};
    if (holds)
      pass(r);
    else
      fail(r, json::array({"g t(theta) g^-1 != t(rho(g) theta)"}));
  } catch (const RelationError& e) {
    r.payload = {{"relations_verified", false}, {"error", e.what()}};
    fail(r, json::array({e.what()}));
  }
}

void verify_all(Report& r) {
  acceptance::AcceptanceConfig ac;
  ac.order_cap = r.config.order_cap;
  ac.seed = r.config.seed;
  if (r.args.contains("a1_margin")) {
    if (!r.args.at("a1_margin").is_number()) throw UsageError("a1_margin must be a number");
    ac.a1_margin = r.args.at("a1_margin").get<double>();
  }
  if (ac.order_cap > kDefaultOrderCap) throw UsageError("order_cap must be <= 10000");
  const auto results = acceptance::run_all(ac);
  json criteria = json::array(), failures = json::array(), timing = json::object();
  for (const auto& c : results) {
    criteria.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"detail", c.detail}});
    timing[c.id] = c.seconds;
    if (!c.passed) failures.push_back(c.id);
  }
  r.payload = {{"criteria", criteria}, {"order_cap", ac.order_cap}, {"a1_margin", ac.a1_margin}};
  r.timing = {{"seconds", timing}};
  if (failures.empty())
    pass(r);
  else
    fail(r, failures);
}

const std::map<std::string, std::function<void(Report&)>>& commands() {
  static const std::map<std::string, std::function<void(Report&)>> table{
      {"groups.check", groups_check},       {"groups.enumerate", groups_enumerate},
      {"groups.harness", groups_harness},   {"extent.bound", extent_bound},
      {"extent.optimize", extent_optimize}, {"extent.scan", extent_scan},
      {"torus.analyze", torus_analyze},     {"rep.verify", rep_verify},
      {"rep.invariance", rep_invariance},   {"verify-all", verify_all}};
  return table;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    if (j.size() > 8) {
      out.emplace_back(prefix, "[" + std::to_string(j.size()) + " entries]");
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

// --- RunConfig --------------------------------------------------------------

void RunConfig::validate() const {
  if (seed == 0) throw UsageError("seed must be positive");
  if (restarts <= 0) throw UsageError("restarts must be positive");
  if (max_iters <= 0) throw UsageError("max_iters must be positive");
  if (order_cap <= 0) throw UsageError("order_cap must be positive");
  if (output_format != "table" && output_format != "json" && output_format != "csv")
    throw UsageError("format must be one of table, json, csv");
}

void RunConfig::apply(const std::string& key, const std::string& value) {
  auto as_int = [&](const std::string& v) {
    try {
      std::size_t used = 0;
      const long long x = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return static_cast<i64>(x);
    } catch (const std::exception&) {
      throw UsageError("config: '" + key + "' needs an integer, got '" + v + "'");
    }
  };
  if (key == "seed") {
    const i64 s = as_int(value);
    if (s <= 0) throw UsageError("seed must be positive");
    seed = static_cast<std::uint64_t>(s);
  } else if (key == "restarts") {
    restarts = as_int(value);
  } else if (key == "max_iters") {
    max_iters = as_int(value);
  } else if (key == "order_cap") {
    order_cap = as_int(value);
  } else if (key == "output_format" || key == "format") {
    output_format = value;
  } else if (key == "output_path" || key == "output") {
    output_path = value;
  } else {
    throw UsageError("config: unknown key '" + key + "'");
  }
}

void RunConfig::apply_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
    apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

json to_json(const RunConfig& c) {
  return {{"seed", c.seed},
          {"restarts", c.restarts},
          {"max_iters", c.max_iters},
          {"order_cap", c.order_cap},
          {"output_format", c.output_format},
          {"output_path", c.output_path ? json(*c.output_path) : json(nullptr)}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.seed = j.at("seed").get<std::uint64_t>();
  c.restarts = j.at("restarts").get<i64>();
  c.max_iters = j.at("max_iters").get<i64>();
  c.order_cap = j.at("order_cap").get<i64>();
  c.output_format = j.at("output_format").get<std::string>();
  if (j.contains("output_path") && j.at("output_path").is_string()) c.output_path = j.at("output_path").get<std::string>();
  return c;
}

// --- Report -----------------------------------------------------------------

json to_json(const Report& r) {
  return {{"command", r.command}, {"timestamp", r.timestamp}, {"config", to_json(r.config)},
          {"args", r.args},       {"payload", r.payload},     {"summary", r.summary},
          {"timing", r.timing},   {"exit_code", r.exit_code}};
}

Report report_from_json(const json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.timestamp = j.value("timestamp", "");
  r.config = config_from_json(j.at("config"));
  r.args = j.at("args");
  r.payload = j.at("payload");
  r.summary = j.value("summary", json::object());
  r.timing = j.value("timing", json(nullptr));
  r.exit_code = j.value("exit_code", 0);
  return r;
}

Report run_command(const std::string& command, const json& args, const RunConfig& config) {
  const auto& table = commands();
  const auto it = table.find(command);
  if (it == table.end()) throw UsageError("unknown command '" + command + "'");
  config.validate();
  Report r;
  r.command = command;
  r.timestamp = utc_timestamp();
  r.config = config;
  r.args = args.is_null() ? json::object() : args;
  r.timing = nullptr;
  it->second(r);
  return r;
}

ReplayResult replay(const json& saved_report) {
  Report saved;
  try {
    saved = report_from_json(saved_report);
  } catch (const json::exception& e) {
    throw UsageError(std::string("not a report: ") + e.what());
  }
  ReplayResult out;
  out.replayed = run_command(saved.command, saved.args, saved.config);
  out.identical = out.replayed.payload.dump() == saved.payload.dump();
  return out;
}

std::string render(const Report& r, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    os << to_json(r).dump(2) << "\n";
    return os.str();
  }
  const bool scan = r.command == "extent.scan" && r.payload.contains("rows");
  if (format == "csv") {
    if (scan) {
      os << "n,bound,verdict,margin\n";
      for (const auto& row : r.payload["rows"])
        os << row["n"].get<i64>() << "," << number(row["bound"].get<double>()) << ","
           << (row["verdict"].get<bool>() ? "true" : "false") << "," << number(row["margin"].get<double>()) << "\n";
    } else {
      std::vector<std::pair<std::string, std::string>> flat;
      flatten(r.payload, "", flat);
      os << "key,value\n";
      for (const auto& [k, v] : flat) {
        const bool quote = v.find(',') != std::string::npos;
        os << k << "," << (quote ? "\"" : "") << v << (quote ? "\"" : "") << "\n";
      }
    }
    return os.str();
  }
  os << r.command << "  (" << r.timestamp << ")\n";
  if (r.command == "verify-all") {
    for (const auto& c : r.payload["criteria"])
      os << "  " << std::left << std::setw(4) << c["id"].get<std::string>() << " "
         << (c["passed"].get<bool>() ? "PASS" : "FAIL") << "  " << c["title"].get<std::string>() << " : "
         << c["detail"].get<std::string>() << "\n";
  } else if (scan) {
    const auto& rows = r.payload["rows"];
    os << "  " << std::setw(8) << "n" << std::setw(22) << "bound" << std::setw(9) << "verdict" << std::setw(24)
       << "margin\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows.size() > 20 && i == 10) os << "  ... " << rows.size() - 20 << " rows omitted ...\n";
      if (rows.size() > 20 && i >= 10 && i + 10 < rows.size()) continue;
      const auto& row = rows[i];
      os << "  " << std::setw(8) << row["n"].get<i64>() << std::setw(22) << number(row["bound"].get<double>())
         << std::setw(9) << (row["verdict"].get<bool>() ? "true" : "false") << std::setw(24)
         << number(row["margin"].get<double>()) << "\n";
    }
    os << "  holds for n >= 61: " << (r.payload["holds"].get<bool>() ? "true" : "false") << "\n";
  } else {
    std::vector<std::pair<std::string, std::string>> flat;
    flatten(r.payload, "", flat);
    std::size_t width = 0;
    for (const auto& kv : flat) width = std::max(width, kv.first.size());
    for (const auto& [k, v] : flat) os << "  " << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << "\n";
  }
  os << "result: " << (r.exit_code == kSuccess ? "ok" : "FAILED");
  if (r.summary.contains("failures") && !r.summary["failures"].empty()) os << "  " << r.summary["failures"].dump();
  os << "\n";
  return os.str();
}

}  // namespace sf5::cli
