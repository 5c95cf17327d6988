#include "critlab/run_config.hpp"

#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "critlab/error.hpp"
#include "json.hpp"

namespace critlab {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::set<std::string> allowed) {
  if (!obj.is_object()) throw InvalidInput(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw InvalidInput("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidInput(where + "." + key + " has the wrong type");
  }
}

// A lambda entry is a number or {"times_pi2": x}.
double read_lambda(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_object() && v.size() == 1 && v.contains("times_pi2") && v["times_pi2"].is_number()) {
    return v["times_pi2"].get<double>() * std::numbers::pi * std::numbers::pi;
  }
  throw InvalidInput(where + " must be a number or {\"times_pi2\": x}");
}

SweepValue read_sweep_value(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), false};
  if (v.is_object() && v.size() == 1 && v.contains("times_k") && v["times_k"].is_number()) {
    return {v["times_k"].get<double>(), true};
  }
  throw InvalidInput(where + " must be a number or {\"times_k\": x}");
}

json to_json_value(const RunConfig& c) {
  json params = {{"d", c.params.d}, {"lambdas", c.params.lambdas}, {"beta", c.params.beta},
                 {"radius", c.params.radius}};
  const SolveConfig& s = c.solve;
  json solve = {{"intervals", s.intervals},
                {"max_iterations", s.max_iterations},
                {"energy_tolerance", s.energy_tolerance},
                {"gradient_tolerance", s.gradient_tolerance},
                {"initial_step", s.initial_step},
                {"max_step", s.max_step},
                {"armijo", s.armijo},
                {"stall_window", s.stall_window},
                {"init", s.init},
                {"start_scale", s.start_scale}};
  json values = json::array();
  for (const auto& v : c.sweep.values) {
    values.push_back(v.times_k ? json{{"times_k", v.value}} : json(v.value));
  }
  return {{"mode", c.mode},
          {"params", params},
          {"solve", solve},
          {"target", {{"level", c.target.level}, {"component", c.target.component}, {"subset", c.target.subset}}},
          {"checks", c.checks},
          {"expansion", {{"epsilons", c.expansion.epsilons}, {"intervals", c.expansion.intervals}}},
          {"sweep", {{"entry", c.sweep.entry}, {"values", values}, {"workers", c.sweep.workers}}},
          {"output", c.output},
          {"seed", c.seed}};
}

}  // namespace

RunConfig default_run_config() {
  const double lam = -0.5 * std::numbers::pi * std::numbers::pi;
  RunConfig c;
  c.params = make_params({lam, lam}, {{1.0, 0.0}, {0.0, 1.0}});
  return c;
}

void RunConfig::validate() const {
  static const std::set<std::string> modes = {"constants", "solve", "verify", "expansion", "sweep"};
  if (!modes.count(mode)) throw InvalidInput("mode must be one of constants, solve, verify, expansion, sweep");
  params.validate();
  solve.validate();
  if (target.level != "m" && target.level != "C" && target.level != "A") {
    throw InvalidInput("target.level must be one of m, C, A");
  }
  if (target.component >= params.d) throw InvalidInput("target.component is out of range");
  std::set<std::size_t> seen;
  for (std::size_t i : target.subset) {
    if (i >= params.d) throw InvalidInput("target.subset index " + std::to_string(i) + " is out of range");
    if (!seen.insert(i).second) throw InvalidInput("target.subset repeats index " + std::to_string(i));
  }
  for (double e : expansion.epsilons) {
    if (!(e > 0.0 && e < 1.0)) throw InvalidInput("expansion.epsilons must lie in (0, 1)");
  }
  if (expansion.intervals < 256) throw InvalidInput("expansion.intervals must be at least 256");
  if (sweep.workers == 0) throw InvalidInput("sweep.workers must be positive");
  if (mode == "sweep" && sweep.values.empty()) throw InvalidInput("sweep.values must not be empty");
  if (output.empty()) throw InvalidInput("output must not be empty");
}

RunConfig parse_run_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig c = default_run_config();
  reject_unknown(doc, "config", {"mode", "params", "solve", "target", "checks", "expansion", "sweep", "output", "seed"});
  read(doc, "mode", c.mode, "config");
  read(doc, "output", c.output, "config");
  read(doc, "seed", c.seed, "config");
  read(doc, "checks", c.checks, "config");

  if (doc.contains("params")) {
    const json& p = doc["params"];
    reject_unknown(p, "params", {"d", "lambdas", "beta", "radius"});
    read(p, "radius", c.params.radius, "params");
    if (p.contains("lambdas")) {
      if (!p["lambdas"].is_array()) throw InvalidInput("params.lambdas must be an array");
      c.params.lambdas.clear();
      for (std::size_t i = 0; i < p["lambdas"].size(); ++i) {
        c.params.lambdas.push_back(read_lambda(p["lambdas"][i], "params.lambdas[" + std::to_string(i) + "]"));
      }
    }
    read(p, "beta", c.params.beta, "params");
    c.params.d = c.params.lambdas.size();
    if (p.contains("d")) {
      std::size_t d = 0;
      read(p, "d", d, "params");
      if (d != c.params.d) throw InvalidInput("params.d does not match the length of params.lambdas");
    }
  }
  if (doc.contains("solve")) {
    const json& s = doc["solve"];
    reject_unknown(s, "solve", {"intervals", "max_iterations", "energy_tolerance", "gradient_tolerance",
                                "initial_step", "max_step", "armijo", "stall_window", "init", "start_scale"});
    read(s, "intervals", c.solve.intervals, "solve");
    read(s, "max_iterations", c.solve.max_iterations, "solve");
    read(s, "energy_tolerance", c.solve.energy_tolerance, "solve");
    read(s, "gradient_tolerance", c.solve.gradient_tolerance, "solve");
    read(s, "initial_step", c.solve.initial_step, "solve");
    read(s, "max_step", c.solve.max_step, "solve");
    read(s, "armijo", c.solve.armijo, "solve");
    read(s, "stall_window", c.solve.stall_window, "solve");
    read(s, "init", c.solve.init, "solve");
    read(s, "start_scale", c.solve.start_scale, "solve");
  }
  if (doc.contains("target")) {
    const json& t = doc["target"];
    reject_unknown(t, "target", {"level", "component", "subset"});
    read(t, "level", c.target.level, "target");
    read(t, "component", c.target.component, "target");
    read(t, "subset", c.target.subset, "target");
  }
  if (doc.contains("expansion")) {
    const json& e = doc["expansion"];
    reject_unknown(e, "expansion", {"epsilons", "intervals"});
    read(e, "epsilons", c.expansion.epsilons, "expansion");
    read(e, "intervals", c.expansion.intervals, "expansion");
  }
  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    reject_unknown(s, "sweep", {"entry", "values", "workers"});
    read(s, "entry", c.sweep.entry, "sweep");
    read(s, "workers", c.sweep.workers, "sweep");
    if (s.contains("values")) {
      if (!s["values"].is_array()) throw InvalidInput("sweep.values must be an array");
      for (std::size_t i = 0; i < s["values"].size(); ++i) {
        c.sweep.values.push_back(read_sweep_value(s["values"][i], "sweep.values[" + std::to_string(i) + "]"));
      }
    }
  }
  c.solve.seed = c.seed;
  c.validate();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::string to_json(const RunConfig& config, int indent) { return to_json_value(config).dump(indent); }

bool operator==(const RunConfig& a, const RunConfig& b) { return to_json(a, -1) == to_json(b, -1); }

}  // namespace critlab
