#include "refnet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "refnet/errors.hpp"

namespace refnet {

namespace {

constexpr double kBaselineMean = 22.47;
constexpr double kMonotoneSlack = 1e-12;

// Evaluates independent sweep points, at most hardware_concurrency at a
// time, and returns them in task order.
std::vector<SweepRow> run_points(std::vector<std::function<SweepRow()>> tasks) {
  const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  std::vector<SweepRow> rows;
  rows.reserve(tasks.size());
  for (std::size_t start = 0; start < tasks.size(); start += width) {
    const std::size_t stop = std::min(tasks.size(), start + width);
    if (stop - start == 1) {
      rows.push_back(tasks[start]());
      continue;
    }
    std::vector<std::future<SweepRow>> pending;
    for (std::size_t i = start; i < stop; ++i) {
      pending.push_back(std::async(std::launch::async, tasks[i]));
    }
    for (auto& f : pending) rows.push_back(f.get());
  }
  return rows;
}

std::vector<GroupSpec> er_vs(const DegreeDistribution& other, double er_mean) {
  const auto er = er_mean > 0.0 ? DegreeDistribution::poisson(er_mean)
                                : DegreeDistribution::degenerate(0);
  return {GroupSpec{1e6, er}, GroupSpec{1e6, other}};
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

template <class Key>
std::size_t argmax(const std::vector<const SweepRow*>& rows, Key key) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (key(*rows[i]) > key(*rows[best])) best = i;
  }
  return best;
}

template <class Key>
bool nondecreasing(const std::vector<const SweepRow*>& rows, Key key) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (key(*rows[i]) < key(*rows[i - 1]) - kMonotoneSlack) return false;
  }
  return true;
}

double gap(const SweepRow& row) { return row.eq.groups[0].u - row.eq.groups[1].u; }

}  // namespace

void SweepResult::append(const SweepResult& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

GroupSpec resolve_group(const GroupDescriptor& desc) {
  if (!(desc.size > 0.0)) throw ConfigError("group size must be > 0");
  if (desc.mean && *desc.mean == 0.0) return {desc.size, DegreeDistribution::degenerate(0)};
  switch (desc.family) {
    case Family::Poisson:
      if (!desc.mean) throw ConfigError("poisson group needs a mean");
      return {desc.size, DegreeDistribution::poisson(*desc.mean)};
    case Family::Regular: {
      if (!desc.mean) throw ConfigError("regular group needs a mean");
      const double k = *desc.mean;
      if (k != std::floor(k) || k < 0.0) throw ConfigError("regular group mean must be an integer");
      return {desc.size, DegreeDistribution::degenerate(static_cast<int>(k))};
    }
    case Family::Zipf:
      if (desc.alpha) return {desc.size, DegreeDistribution::zipf(*desc.alpha)};
      if (!desc.mean) throw ConfigError("zipf group needs a mean or an alpha");
      return {desc.size, DegreeDistribution::zipf(zipf_alpha_for_mean(*desc.mean))};
  }
  throw ConfigError("unknown family");
}

void set_param(ModelParams& params, const std::string& name, double value) {
  if (name == "y") params.y = value;
  else if (name == "b") params.b = value;
  else if (name == "r") params.r = value;
  else if (name == "delta") params.delta = value;
  else if (name == "eta") params.eta = value;
  else if (name == "gamma") params.gamma = value;
  else if (name == "beta") params.beta = value;
  else if (name == "c") params.c = value;
  else if (name == "phi") params.phi = value;
  else if (name == "d_f") {
    if (value != std::floor(value) || value < 0.0) throw ConfigError("d_f must be a non-negative integer");
    params.d_f = static_cast<int>(value);
  } else {
    throw ConfigError("unknown parameter '" + name + "'");
  }
}

SweepRow make_row(const std::string& scenario, double axis_value, const ModelParams& params,
                  Equilibrium eq, GiniBase base) {
  if (!(eq.residual < kRowResidualTol) || !(std::abs(params.r * eq.V) < kRowFreeEntryTol)) {
    std::ostringstream msg;
    msg << scenario << " at " << axis_value << ": invariants violated (residual " << eq.residual
        << ", rV " << params.r * eq.V << ")";
    std::vector<double> u;
    for (const auto& g : eq.groups) u.push_back(g.u);
    throw ConvergenceError(msg.str(), u, eq.v, eq.residual);
  }
  SweepRow row;
  row.scenario = scenario;
  row.axis_value = axis_value;
  row.params = params;
  row.gini = gini(params, eq, base);
  row.sw = social_welfare(params, eq);
  row.eq = std::move(eq);
  return row;
}

SweepRow solve_row(const std::string& scenario, double axis_value, const ModelParams& params,
                   const std::vector<GroupSpec>& groups, const SolverConfig& solver,
                   GiniBase base) {
  return make_row(scenario, axis_value, params, solve_equilibrium(params, groups, solver), base);
}

SweepResult run_scenario(const Scenario& scenario) {
  ModelParams params = scenario.params;
  if (scenario.calibration) params = calibrate(params, *scenario.calibration);
  if (scenario.groups.empty()) throw ConfigError("scenario has no groups");

  SweepResult result;
  if (!scenario.sweep) {
    std::vector<GroupSpec> groups;
    for (const auto& g : scenario.groups) groups.push_back(resolve_group(g));
    result.axis = "none";
    result.rows.push_back(
        solve_row(scenario.name, 0.0, params, groups, scenario.solver, scenario.gini_base));
    return result;
  }

  const auto& axis = *scenario.sweep;
  result.axis = axis.parameter;
  std::vector<std::function<SweepRow()>> tasks;
  for (const double value : axis.values) {
    if (!std::isfinite(value)) throw ConfigError("sweep values must be finite");
    ModelParams point = params;
    auto descs = scenario.groups;
    if (axis.parameter == "mean_degree") {
      for (auto& d : descs) {
        d.mean = value;
        d.alpha.reset();
      }
    } else {
      set_param(point, axis.parameter, value);
    }
    point.validate();
    std::vector<GroupSpec> groups;
    for (const auto& g : descs) groups.push_back(resolve_group(g));
    tasks.push_back([=, &scenario] {
      return solve_row(scenario.name, value, point, groups, scenario.solver, scenario.gini_base);
    });
  }
  result.rows = run_points(std::move(tasks));
  return result;
}

SweepResult run_table2(const ModelParams& params, const SolverConfig& solver) {
  const std::vector<std::pair<std::string, std::vector<GroupSpec>>> cases{
      {"table2_er",
       {GroupSpec{1e6, DegreeDistribution::poisson(15)}, GroupSpec{1e6, DegreeDistribution::poisson(30)}}},
      {"table2_regular",
       {GroupSpec{1e6, DegreeDistribution::degenerate(15)},
        GroupSpec{1e6, DegreeDistribution::degenerate(30)}}},
      {"table2_scale_free",
       {GroupSpec{1e6, DegreeDistribution::zipf(zipf_alpha_for_mean(15))},
        GroupSpec{1e6, DegreeDistribution::zipf(zipf_alpha_for_mean(30))}}},
  };
  std::vector<std::function<SweepRow()>> tasks;
  for (const auto& [name, groups] : cases) {
    tasks.push_back([=] { return solve_row(name, 0.0, params, groups, solver); });
  }
  SweepResult result;
  result.axis = "table2";
  result.rows = run_points(std::move(tasks));
  return result;
}

SweepResult run_mean_degree_sweep(const ModelParams& params, const SolverConfig& solver,
                                  int max_mean) {
  std::vector<std::function<SweepRow()>> tasks;
  for (int m = 0; m <= max_mean; ++m) {
    tasks.push_back([=] {
      const auto groups = er_vs(DegreeDistribution::degenerate(m), m);
      return solve_row("er_vs_regular", m, params, groups, solver);
    });
  }
  SweepResult result;
  result.axis = "mean_degree";
  result.rows = run_points(std::move(tasks));
  return result;
}

SweepResult run_alpha_sweep(const ModelParams& params, const SolverConfig& solver) {
  std::vector<std::function<SweepRow()>> tasks;
  for (const double alpha : kAlphaGrid) {
    tasks.push_back([=] {
      const auto sf = DegreeDistribution::zipf(alpha);
      return solve_row("er_vs_scale_free", alpha, params, er_vs(sf, sf.mean()), solver);
    });
  }
  SweepResult result;
  result.axis = "alpha";
  result.rows = run_points(std::move(tasks));
  result.notes.push_back("er_vs_scale_free: Erdos-Renyi mean set to zeta(alpha-1)/zeta(alpha)");
  return result;
}

StructureSweeps run_structure_sweeps(const ModelParams& params, const SolverConfig& solver) {
  return {run_mean_degree_sweep(params, solver), run_alpha_sweep(params, solver)};
}

SweepResult run_df_sweep(const ModelParams& params, const SolverConfig& solver) {
  const auto sf = DegreeDistribution::zipf(zipf_alpha_for_mean(kBaselineMean));
  const auto groups = er_vs(sf, kBaselineMean);
  std::vector<std::function<SweepRow()>> tasks;
  for (const int df : kDfGrid) {
    ModelParams point = params;
    point.d_f = df;
    tasks.push_back([=] { return solve_row("df_sweep", df, point, groups, solver); });
  }
  SweepResult result;
  result.axis = "d_f";
  result.rows = run_points(std::move(tasks));
  return result;
}

SweepResult run_phi_sweep(const ModelParams& params, const SolverConfig& solver) {
  const auto sf = DegreeDistribution::zipf(zipf_alpha_for_mean(kBaselineMean));
  const auto groups = er_vs(sf, kBaselineMean);
  std::vector<std::function<SweepRow()>> tasks;
  auto add = [&](const std::string& name, double phi) {
    ModelParams point = params;
    point.phi = phi;
    tasks.push_back([=] { return solve_row(name, phi, point, groups, solver); });
  };
  for (const double phi : kPhiSet) add("phi_set", phi);
  const int steps = static_cast<int>(std::lround(kPhiFineMax / kPhiFineStep));
  for (int i = 0; i <= steps; ++i) add("phi_fine", i * kPhiFineStep);
  SweepResult result;
  result.axis = "phi";
  result.rows = run_points(std::move(tasks));
  result.notes.push_back(
      "phi_set: reference grid {0, 0.001, 0.01, 0.1, 0.408, 0.1, 0.3, 1.0} lists 0.1 twice; "
      "duplicate removed, 0.408 kept as given");
  result.notes.push_back("phi_fine: 0 to 0.3 in steps of 0.005 to locate the Gini peak");
  return result;
}

void write_csv(std::ostream& out, const SweepResult& result, bool header) {
  if (header) out << kCsvHeader << '\n';
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.eq.groups.size(); ++i) {
      const auto& g = row.eq.groups[i];
      out << row.scenario << ',' << fmt(row.axis_value) << ',' << (i + 1) << ',' << fmt(g.u)
          << ',' << fmt(g.w) << ',' << fmt(g.p_market) << ',' << fmt(g.p_referral) << ','
          << fmt(g.P) << ',' << fmt(g.S) << ',' << fmt(row.gini) << ',' << fmt(row.sw) << ','
          << fmt(row.eq.v) << '\n';
    }
  }
}

ReferenceCheck check_value(std::string name, double value, double expected, double tolerance,
                           bool relative) {
  const double err = relative ? std::abs(value - expected) / std::abs(expected)
                              : std::abs(value - expected);
  return {std::move(name), value, expected, tolerance, relative, err <= tolerance};
}

std::vector<const SweepRow*> rows_of(const SweepResult& result, const std::string& scenario) {
  std::vector<const SweepRow*> out;
  for (const auto& row : result.rows) {
    if (row.scenario == scenario) out.push_back(&row);
  }
  return out;
}

std::vector<ReferenceCheck> table2_checks(const SweepResult& table2) {
  auto one = [&](const std::string& name) -> const SweepRow& {
    const auto rows = rows_of(table2, name);
    if (rows.empty()) throw ConfigError("table2 result is missing " + name);
    return *rows.front();
  };
  const auto& er = one("table2_er");
  const auto& reg = one("table2_regular");
  const auto& sf = one("table2_scale_free");
  return {
      check_value("ER u1", er.eq.groups[0].u, 0.0510, 0.0005),
      check_value("ER u2", er.eq.groups[1].u, 0.0394, 0.0005),
      check_value("ER w1", er.eq.groups[0].w, 0.581, 0.002),
      check_value("ER w2", er.eq.groups[1].w, 0.615, 0.002),
      check_value("ER Gini", er.gini, 1.451e-2, 0.10, true),
      check_value("ER SW", er.sw, 0.685, 0.003),
      check_value("Regular u1", reg.eq.groups[0].u, 0.0508, 0.0005),
      check_value("Regular u2", reg.eq.groups[1].u, 0.0393, 0.0005),
      check_value("Regular w1", reg.eq.groups[0].w, 0.582, 0.002),
      check_value("Regular w2", reg.eq.groups[1].w, 0.615, 0.002),
      check_value("Regular Gini", reg.gini, 1.454e-2, 0.10, true),
      check_value("Regular SW", reg.sw, 0.685, 0.003),
      check_value("Scale-free u1", sf.eq.groups[0].u, 0.0814, 0.001),
      check_value("Scale-free u2", sf.eq.groups[1].u, 0.0810, 0.001),
      check_value("Scale-free w1", sf.eq.groups[0].w, 0.529, 0.002),
      check_value("Scale-free w2", sf.eq.groups[1].w, 0.529, 0.002),
      check_value("Scale-free Gini", sf.gini, 2.310e-4, 0.50, true),
      check_value("Scale-free SW", sf.sw, 0.627, 0.003),
  };
}

std::vector<PropertyCheck> sweep_property_checks(const StructureSweeps& structure,
                                                 const SweepResult& df_sweep,
                                                 const SweepResult& phi_sweep) {
  std::vector<PropertyCheck> out;
  std::ostringstream d;

  const auto reg = rows_of(structure.er_vs_regular, "er_vs_regular");
  if (!reg.empty()) {
    const double gap0 = gap(*reg.front());
    const auto& peak = *reg[argmax(reg, gap)];
    const double step = reg.size() > 1 ? reg[1]->axis_value - reg[0]->axis_value : 0.0;
    d << "gap at mean " << reg.front()->axis_value << " = " << gap0 << "; argmax at mean "
      << peak.axis_value << " (grid step " << step << ")";
    out.push_back({"ER-REG gap zero at 0, peak within one step of 25", d.str(),
                   std::abs(gap0) < 1e-12 && std::abs(peak.axis_value - 25.0) <= step});
    d.str("");
    const auto& gpeak = *reg[argmax(reg, [](const SweepRow& r) { return r.gini; })];
    d << "Gini argmax at mean " << gpeak.axis_value;
    out.push_back({"ER-REG Gini peak within one step of 25", d.str(),
                   std::abs(gpeak.axis_value - 25.0) <= step});
    d.str("");
    d << "SW from " << reg.front()->sw << " to " << reg.back()->sw;
    out.push_back({"ER-REG social welfare nondecreasing in mean degree", d.str(),
                   nondecreasing(reg, [](const SweepRow& r) { return r.sw; })});
    d.str("");
  }

  const auto sf = rows_of(structure.er_vs_scale_free, "er_vs_scale_free");
  if (!sf.empty()) {
    bool ok = true;
    for (const auto* row : sf) {
      if (row->axis_value <= 2.1 + 1e-12) {
        d << "alpha " << row->axis_value << ": u_ER " << row->eq.groups[0].u << " u_SF "
          << row->eq.groups[1].u << "; ";
        ok = ok && row->eq.groups[1].u > row->eq.groups[0].u;
      }
    }
    out.push_back({"scale-free u above ER u for alpha <= 2.1", d.str(), ok});
    d.str("");
  }

  const auto df = rows_of(df_sweep, "df_sweep");
  if (!df.empty()) {
    const auto& first = *df.front();
    const bool equal0 = first.axis_value == 0.0 && std::abs(gap(first)) < 1e-12 && first.gini < 1e-12;
    d << "d_f=0 gap " << gap(first) << " Gini " << first.gini << "; Gini at d_f="
      << df.back()->axis_value << " " << df.back()->gini;
    out.push_back({"d_f sweep: equality at 0, Gini and SW nondecreasing", d.str(),
                   equal0 && nondecreasing(df, [](const SweepRow& r) { return r.gini; }) &&
                       nondecreasing(df, [](const SweepRow& r) { return r.sw; })});
    d.str("");
  }

  const auto coarse = rows_of(phi_sweep, "phi_set");
  const auto fine = rows_of(phi_sweep, "phi_fine");
  if (!coarse.empty() && !fine.empty()) {
    const auto& peak = *fine[argmax(fine, [](const SweepRow& r) { return r.gini; })];
    const bool zero = coarse.front()->axis_value == 0.0 && coarse.front()->gini < 1e-12;
    const bool sw_up = nondecreasing(coarse, [](const SweepRow& r) { return r.sw; }) &&
                       nondecreasing(fine, [](const SweepRow& r) { return r.sw; });
    d << "Gini at phi=0 " << coarse.front()->gini << "; fine-grid Gini argmax at phi "
      << peak.axis_value;
    out.push_back({"phi sweep: Gini 0 at 0, SW nondecreasing, Gini peak in [0.05, 0.2]", d.str(),
                   zero && sw_up && peak.axis_value >= 0.05 && peak.axis_value <= 0.2});
  }
  return out;
}

void write_report(std::ostream& out, const std::vector<ReferenceCheck>& values,
                  const std::vector<PropertyCheck>& properties,
                  const std::vector<std::string>& notes) {
  out << "# Reference comparison\n\n";
  for (const auto& c : values) {
    out << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(18) << c.name
        << " value=" << fmt(c.value) << " reference=" << fmt(c.expected) << " tol="
        << fmt(c.tolerance) << (c.relative ? " (relative)" : "") << '\n';
  }
  out << "\n# Qualitative properties\n\n";
  for (const auto& p : properties) {
    out << (p.pass ? "PASS " : "FAIL ") << p.name << "\n     " << p.detail << '\n';
  }
  if (!notes.empty()) {
    out << "\n# Notes\n\n";
    for (const auto& n : notes) out << "- " << n << '\n';
  }
}

}  // namespace refnet
