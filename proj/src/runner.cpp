#include "critlab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <numbers>
#include <regex>
#include <sstream>
#include <thread>

#include "critlab/bubbles.hpp"
#include "critlab/error.hpp"
#include "json.hpp"

#ifndef CRITLAB_VERSION
#define CRITLAB_VERSION "0.0.0"
#endif

namespace critlab {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json_value(const SolveResult& r) {
  json conc = {{"effective_radius", r.diagnostics.effective_radius},
               {"mesh_ratio", r.diagnostics.mesh_ratio},
               {"concentrated", r.diagnostics.concentrated},
               {"any", r.diagnostics.any()}};
  json nehari = {{"residuals", r.nehari.residuals},
                 {"relative_residual", r.nehari.relative_residual},
                 {"on_manifold", r.nehari.on_manifold},
                 {"dominance_margin", r.nehari.dominance_margin},
                 {"min_eigenvalue", r.nehari.a.min_eigenvalue}};
  return {{"kind", to_string(r.kind)},
          {"subset", r.subset},
          {"level", r.level},
          {"quotient", r.quotient},
          {"l6", r.l6},
          {"gradient_norm", r.gradient_norm},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"status", r.status},
          {"regime", r.regime},
          {"semitrivial", r.semitrivial},
          {"start", r.start},
          {"intervals", r.fields.grid()->intervals()},
          {"nehari", nehari},
          {"concentration", conc}};
}

json to_json_value(const EstimateReport& r) {
  json details = json::object();
  for (const auto& [k, v] : r.details) details[k] = finite_or_null(v);
  return {{"name", r.name},           {"lhs", finite_or_null(r.lhs)},
          {"rhs", finite_or_null(r.rhs)}, {"margin", finite_or_null(r.margin)},
          {"tolerance", r.tolerance},  {"pass", r.pass},
          {"provenance", r.provenance}, {"details", details},
          {"notes", r.notes}};
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_manifest(const fs::path& dir, const RunConfig& config) {
  json m = {{"tool", "critlab"},
            {"version", CRITLAB_VERSION},
            {"created", timestamp()},
            {"config", json::parse(to_json(config))}};
  write_text(dir / "manifest.json", m.dump(2) + "\n");
}

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) { row_strings(header); }
  void row(const std::vector<double>& values) {
    for (std::size_t k = 0; k < values.size(); ++k) out_ << (k ? "," : "") << format_number(values[k]);
    out_ << "\n";
  }
  void row_strings(const std::vector<std::string>& values) {
    for (std::size_t k = 0; k < values.size(); ++k) out_ << (k ? "," : "") << values[k];
    out_ << "\n";
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

void write_profile(const fs::path& path, const FieldVector& u) {
  std::vector<std::string> header = {"r"};
  for (std::size_t i = 0; i < u.dim(); ++i) header.push_back("u" + std::to_string(i + 1));
  Csv csv(header);
  const auto r = u.grid()->nodes();
  for (std::size_t k = 0; k < r.size(); ++k) {
    std::vector<double> row = {r[k]};
    for (std::size_t i = 0; i < u.dim(); ++i) row.push_back(u[i][k]);
    csv.row(row);
  }
  write_text(path, csv.str());
}

void write_history(const fs::path& path, const std::vector<double>& history) {
  Csv csv({"iteration", "energy"});
  for (std::size_t k = 0; k < history.size(); ++k) csv.row({static_cast<double>(k), history[k]});
  write_text(path, csv.str());
}

json admissibility_json(const AdmissibilityReport& a) {
  json comps = json::array();
  for (const auto& c : a.components) {
    comps.push_back({{"lambda", c.lambda},
                     {"lower_margin", c.lower_margin},
                     {"upper_margin", c.upper_margin},
                     {"admissible", c.admissible}});
  }
  return {{"window_low", a.window_low}, {"window_high", a.window_high}, {"components", comps},
          {"admissible", a.admissible}};
}

void require_admissible(const ProblemParams& p) {
  const AdmissibilityReport a = check_admissible(p);
  for (std::size_t i = 0; i < p.d; ++i) {
    if (!a.components[i].admissible) {
      std::ostringstream msg;
      msg << "params.lambdas[" << i << "] = " << a.components[i].lambda << " lies outside the window ("
          << a.window_low << ", " << a.window_high << ")";
      throw InvalidInput(msg.str());
    }
  }
}

SolveResult solve_target(const RunConfig& c) {
  if (c.target.level == "m") return solve_single(c.params, c.target.component, c.solve);
  if (c.target.level == "A") return minimize_on_M(c.params, c.solve);
  const Subset s = c.target.subset.empty() ? full_subset(c.params.d) : Subset(c.target.subset);
  return minimize_on_N(c.params, s, c.solve);
}

json run_constants(const RunConfig& c, const fs::path& dir) {
  require_admissible(c.params);
  LevelOracle oracle(c.params, c.solve);
  const ThresholdConstants& k = oracle.constants();
  const LambdaBounds lb = lambda_bounds(c.params.radius, c.solve.intervals);
  const PmaxResult pm = pmax(c.params.beta, c.seed);
  json res = {{"s_tilde", k.s_tilde},
              {"s_tilde_power", sobolev_tilde_power()},
              {"s_quotient", k.s_quotient},
              {"lambda1", lb.lambda1},
              {"lambda1_closed_form", lb.lambda1_closed_form},
              {"lambda_star", lb.lambda_star},
              {"admissibility", admissibility_json(check_admissible(c.params))},
              {"m", k.m},
              {"cbar", k.cbar},
              {"k1", k.k1},
              {"k2", k.k2},
              {"k3", k.k3},
              {"k4", k.k4},
              {"k", k.k},
              {"c1", k.c1},
              {"c2", k.c2},
              {"c3", k.c3},
              {"delta", k.delta},
              {"delta_consistency", k.delta_consistency},
              {"b_limit", k.b_limit},
              {"p_max", k.p_max},
              {"p_max_argmax", pm.argmax}};
  res["notes"] = {
      "delta_consistency checks (3 m_i)^2 < S~^3 / beta_ii - delta with S~^3, not S~^{3/2}; only S~^3 is "
      "compatible with the definition of delta and m_i < S~^{3/2} / (3 sqrt(beta_ii))",
      "K is a sufficient threshold; no optimality is claimed"};
  Csv csv({"name", "value"});
  for (const char* key : {"s_tilde", "s_tilde_power", "s_quotient", "lambda1", "lambda1_closed_form", "lambda_star",
                          "cbar", "k1", "k2", "k3", "k4", "k", "c1", "c2", "c3", "delta", "b_limit", "p_max"}) {
    csv.row_strings({key, format_number(res[key].get<double>())});
  }
  for (std::size_t i = 0; i < k.m.size(); ++i) csv.row_strings({"m" + std::to_string(i + 1), format_number(k.m[i])});
  write_text(dir / "constants.csv", csv.str());
  return res;
}

json run_solve(const RunConfig& c, const fs::path& dir) {
  const SolveResult r = solve_target(c);
  write_profile(dir / "profile.csv", r.fields);
  write_history(dir / "history.csv", r.energy_history);
  json res = to_json_value(r);
  res["admissibility"] = admissibility_json(check_admissible(c.params));
  return res;
}

json run_verify(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  require_admissible(c.params);
  LevelOracle oracle(c.params, c.solve);
  const bool explicit_selection = !c.checks.empty();
  const std::vector<std::string> names = explicit_selection ? c.checks : check_names();
  for (const auto& n : names) {
    const auto all = check_names();
    if (std::find(all.begin(), all.end(), n) == all.end()) throw InvalidInput("checks: unknown check '" + n + "'");
  }
  struct Slot {
    std::future<EstimateReport> future;
  };
  std::vector<Slot> slots;
  for (const auto& n : names) {
    slots.push_back({std::async(std::launch::async, [&oracle, n] { return run_check(n, oracle); })});
  }
  json reports = json::array();
  Csv csv({"name", "lhs", "rhs", "margin", "tolerance", "pass"});
  log << std::left << std::setw(15) << "check" << std::setw(15) << "lhs" << std::setw(15) << "rhs" << std::setw(13)
      << "margin" << "result\n";
  std::string precondition_error;
  for (std::size_t k = 0; k < names.size(); ++k) {
    try {
      const EstimateReport rep = slots[k].future.get();
      reports.push_back(to_json_value(rep));
      csv.row_strings({rep.name, format_number(rep.lhs), format_number(rep.rhs), format_number(rep.margin),
                       format_number(rep.tolerance), rep.pass ? "1" : "0"});
      log << std::left << std::setw(15) << rep.name << std::setw(15) << rep.lhs << std::setw(15) << rep.rhs
          << std::setw(13) << rep.margin << (rep.pass ? "PASS" : "FAIL") << "\n";
    } catch (const InvalidInput& e) {
      if (explicit_selection && precondition_error.empty()) precondition_error = names[k] + ": " + e.what();
      reports.push_back({{"name", names[k]}, {"skipped", e.what()}});
      log << std::left << std::setw(15) << names[k] << "skipped: " << e.what() << "\n";
    }
  }
  write_text(dir / "summary.csv", csv.str());
  if (!precondition_error.empty()) {
    write_text(dir / "results.json", reports.dump(2) + "\n");
    throw InvalidInput(precondition_error);
  }
  return reports;
}

json run_expansion(const RunConfig& c, const fs::path& dir) {
  std::vector<double> eps;
  for (double e : c.expansion.epsilons) eps.push_back(e * c.params.radius);
  const ExpansionTable t = expansion_report(eps, make_grid(c.params.radius, c.expansion.intervals));
  Csv csv({"epsilon", "grad_energy", "l6", "l2", "l3", "l3_log_ratio"});
  for (const auto& row : t.rows) csv.row({row.epsilon, row.grad_energy, row.l6, row.l2, row.l3, row.l3_log_ratio});
  write_text(dir / "expansion.csv", csv.str());
  const double pi = std::numbers::pi;
  return {{"reference", t.reference},
          {"grad_slope", t.grad_slope},
          {"grad_slope_expected", std::sqrt(3.0) * pi * pi * pi / (2.0 * c.params.radius)},
          {"l2_slope", t.l2_slope},
          {"l2_slope_expected", 2.0 * std::sqrt(3.0) * pi * c.params.radius},
          {"l6_order", t.l6_order},
          {"l6_halving_factors", t.l6_halving_factors},
          {"l3_ratio_variation", t.l3_ratio_variation}};
}

struct SweepTarget {
  bool is_beta = false;
  std::size_t i = 0, j = 0;
};

SweepTarget parse_entry(const std::string& entry, std::size_t d) {
  std::smatch m;
  SweepTarget t;
  if (std::regex_match(entry, m, std::regex(R"(beta\[(\d+)\]\[(\d+)\])"))) {
    t.is_beta = true;
    t.i = std::stoul(m[1]);
    t.j = std::stoul(m[2]);
  } else if (std::regex_match(entry, m, std::regex(R"(lambdas\[(\d+)\])"))) {
    t.i = std::stoul(m[1]);
  } else {
    throw InvalidInput("sweep.entry must look like beta[i][j] or lambdas[i]");
  }
  if (t.i >= d || t.j >= d) throw InvalidInput("sweep.entry index is out of range");
  return t;
}

json run_sweep(const RunConfig& c, const fs::path& dir, bool& any_failed) {
  const SweepTarget target = parse_entry(c.sweep.entry, c.params.d);
  bool needs_k = false;
  for (const auto& v : c.sweep.values) needs_k = needs_k || v.times_k;
  double k = 0.0;
  if (needs_k) {
    if (!target.is_beta) throw InvalidInput("sweep.values: times_k applies only to coupling entries");
    require_admissible(c.params);
    LevelOracle oracle(c.params, c.solve);
    k = oracle.constants().k;
  }
  const std::size_t count = c.sweep.values.size();
  std::vector<json> rows(count);
  std::vector<RunConfig> children(count);
  for (std::size_t n = 0; n < count; ++n) {
    RunConfig child = c;
    child.mode = "solve";
    child.sweep = SweepSpec{};
    const double value = c.sweep.values[n].times_k ? c.sweep.values[n].value * k : c.sweep.values[n].value;
    if (target.is_beta) {
      child.params.beta[target.i][target.j] = value;
      child.params.beta[target.j][target.i] = value;
    } else {
      child.params.lambdas[target.i] = value;
    }
    std::ostringstream name;
    name << "run_" << std::setw(3) << std::setfill('0') << n;
    child.output = (dir / name.str()).string();
    children[n] = child;
    rows[n] = {{"index", n}, {"value", value}, {"directory", name.str()}};
  }
  std::atomic<std::size_t> next{0};
  std::vector<RunOutcome> outcomes(count);
  auto worker = [&] {
    for (std::size_t n = next++; n < count; n = next++) {
      std::ostringstream sink;
      outcomes[n] = run(children[n], sink);
    }
  };
  std::vector<std::thread> pool;
  const unsigned workers = std::min<unsigned>(c.sweep.workers, static_cast<unsigned>(count));
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  Csv csv({"index", "value", "level", "converged", "concentrated", "status"});
  for (std::size_t n = 0; n < count; ++n) {
    rows[n]["exit_code"] = outcomes[n].exit_code;
    if (outcomes[n].exit_code != exit_code::ok) {
      any_failed = true;
      rows[n]["error"] = outcomes[n].message;
      csv.row_strings({std::to_string(n), format_number(rows[n]["value"].get<double>()), "", "", "", "failed"});
      continue;
    }
    std::ifstream in(fs::path(children[n].output) / "results.json");
    const json res = json::parse(in);
    rows[n]["level"] = res["level"];
    rows[n]["status"] = res["status"];
    csv.row_strings({std::to_string(n), format_number(rows[n]["value"].get<double>()),
                     format_number(res["level"].get<double>()), res["converged"].get<bool>() ? "1" : "0",
                     res["concentration"]["any"].get<bool>() ? "1" : "0", res["status"].get<std::string>()});
  }
  write_text(dir / "sweep_summary.csv", csv.str());
  return {{"entry", c.sweep.entry}, {"k", k}, {"runs", rows}};
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string solve_result_json(const SolveResult& result) { return to_json_value(result).dump(2); }
std::string report_json(const EstimateReport& report) { return to_json_value(report).dump(2); }

RunConfig config_from_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read manifest '" + path + "'");
  json m;
  try {
    m = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!m.contains("config")) throw InvalidInput("manifest has no config section");
  return parse_run_config(m["config"].dump());
}

RunOutcome run(const RunConfig& config, std::ostream& log) {
  RunOutcome out;
  out.directory = config.output;
  try {
    config.validate();
    RunConfig c = config;
    c.solve.seed = c.seed;
    const fs::path dir(c.output);
    fs::create_directories(dir);
    write_manifest(dir, c);
    json res;
    bool sweep_failed = false;
    if (c.mode == "constants") res = run_constants(c, dir);
    else if (c.mode == "solve") res = run_solve(c, dir);
    else if (c.mode == "verify") res = run_verify(c, dir, log);
    else if (c.mode == "expansion") res = run_expansion(c, dir);
    else res = run_sweep(c, dir, sweep_failed);
    write_text(dir / "results.json", res.dump(2) + "\n");
    if (sweep_failed) {
      out.exit_code = exit_code::numerical_failure;
      out.message = "one or more sweep runs failed";
    }
  } catch (const InvalidInput& e) {
    out.exit_code = exit_code::config_error;
    out.message = e.what();
  } catch (const fs::filesystem_error& e) {
    out.exit_code = exit_code::config_error;
    out.message = std::string("output: ") + e.what();
  } catch (const NumericalFailure& e) {
    out.exit_code = exit_code::numerical_failure;
    out.message = e.what();
  } catch (const std::exception& e) {
    out.exit_code = exit_code::numerical_failure;
    out.message = e.what();
  }
  return out;
}

}  // namespace critlab
