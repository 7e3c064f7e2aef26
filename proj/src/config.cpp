#include "refnet/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "refnet/errors.hpp"

namespace refnet {

namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

double number(const json& obj, const std::string& key, const std::string& where) {
  const auto& value = obj.at(key);
  if (!value.is_number()) throw ConfigError(where + "." + key + " must be a number");
  return value.get<double>();
}

int integer(const json& obj, const std::string& key, const std::string& where) {
  const auto& value = obj.at(key);
  if (!value.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return value.get<int>();
}

ModelParams parse_params(const json& obj) {
  only_keys(obj, {"y", "b", "r", "delta", "eta", "gamma", "beta", "c", "phi", "d_f"}, "params");
  ModelParams p;
  for (const auto& [key, _] : obj.items()) {
    if (key == "d_f") {
      p.d_f = integer(obj, key, "params");
    } else {
      set_param(p, key, number(obj, key, "params"));
    }
  }
  return p;
}

CalibrationTargets parse_targets(const json& obj) {
  CalibrationTargets t;
  if (obj.is_boolean()) return t;
  only_keys(obj,
            {"u_target", "market_tightness_inverse", "wage_target", "referral_share",
             "baseline_mean_degree", "d_f"},
            "calibrate");
  if (obj.contains("u_target")) t.u_target = number(obj, "u_target", "calibrate");
  if (obj.contains("market_tightness_inverse")) {
    t.market_tightness_inverse = number(obj, "market_tightness_inverse", "calibrate");
  }
  if (obj.contains("wage_target")) t.wage_target = number(obj, "wage_target", "calibrate");
  if (obj.contains("referral_share")) t.referral_share = number(obj, "referral_share", "calibrate");
  if (obj.contains("baseline_mean_degree")) {
    t.baseline_mean_degree = number(obj, "baseline_mean_degree", "calibrate");
  }
  if (obj.contains("d_f")) t.d_f = integer(obj, "d_f", "calibrate");
  return t;
}

GroupDescriptor parse_group(const json& obj) {
  only_keys(obj, {"family", "mean", "alpha", "size"}, "group");
  GroupDescriptor g;
  const auto family = obj.value("family", std::string("poisson"));
  if (family == "poisson" || family == "erdos-renyi") {
    g.family = Family::Poisson;
  } else if (family == "regular" || family == "degenerate") {
    g.family = Family::Regular;
  } else if (family == "zipf" || family == "scale-free") {
    g.family = Family::Zipf;
  } else {
    throw ConfigError("unknown family '" + family + "'");
  }
  if (obj.contains("mean")) g.mean = number(obj, "mean", "group");
  if (obj.contains("alpha")) g.alpha = number(obj, "alpha", "group");
  if (obj.contains("size")) g.size = number(obj, "size", "group");
  if (g.alpha && g.family != Family::Zipf) throw ConfigError("alpha is only valid for zipf groups");
  return g;
}

SolverConfig parse_solver(const json& obj) {
  only_keys(obj,
            {"residual_tol", "max_outer_iters", "damping", "initial_u", "multistart",
             "multistart_seed"},
            "solver");
  SolverConfig s;
  if (obj.contains("residual_tol")) s.residual_tol = number(obj, "residual_tol", "solver");
  if (obj.contains("max_outer_iters")) s.max_outer_iters = integer(obj, "max_outer_iters", "solver");
  if (obj.contains("damping")) s.damping = number(obj, "damping", "solver");
  if (obj.contains("initial_u")) s.initial_u = number(obj, "initial_u", "solver");
  if (obj.contains("multistart")) s.multistart = integer(obj, "multistart", "solver");
  if (obj.contains("multistart_seed")) {
    s.multistart_seed = obj.at("multistart_seed").get<std::uint64_t>();
  }
  return s;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  try {
    only_keys(doc, {"name", "params", "calibrate", "groups", "sweep", "solver", "gini"}, "scenario");
    Scenario s;
    if (doc.contains("name")) s.name = doc.at("name").get<std::string>();
    if (doc.contains("params")) s.params = parse_params(doc.at("params"));
    if (doc.contains("calibrate")) {
      const auto& c = doc.at("calibrate");
      if (!(c.is_boolean() && !c.get<bool>())) s.calibration = parse_targets(c);
    }
    if (!doc.contains("groups") || !doc.at("groups").is_array() || doc.at("groups").empty()) {
      throw ConfigError("scenario needs a non-empty 'groups' array");
    }
    for (const auto& g : doc.at("groups")) s.groups.push_back(parse_group(g));
    if (doc.contains("sweep")) {
      const auto& sw = doc.at("sweep");
      only_keys(sw, {"axis", "values"}, "sweep");
      SweepAxis axis;
      axis.parameter = sw.at("axis").get<std::string>();
      if (axis.parameter == "mean-degree") axis.parameter = "mean_degree";
      if (axis.parameter == "df") axis.parameter = "d_f";
      axis.values = sw.at("values").get<std::vector<double>>();
      if (axis.values.empty()) throw ConfigError("sweep needs at least one value");
      s.sweep = std::move(axis);
    }
    if (doc.contains("solver")) s.solver = parse_solver(doc.at("solver"));
    if (doc.contains("gini")) {
      const auto base = doc.at("gini").get<std::string>();
      if (base == "group") s.gini_base = GiniBase::Group;
      else if (base == "individual") s.gini_base = GiniBase::Individual;
      else throw ConfigError("gini must be 'group' or 'individual'");
    }

    // Domain checks up front so bad files fail as configuration errors.
    s.params.validate();
    s.solver.validate();
    if (s.calibration) s.calibration->validate();
    for (const auto& g : s.groups) resolve_group(g);
    return s;
  } catch (const ConfigError&) {
    throw;
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace refnet
