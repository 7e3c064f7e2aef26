// Command-line front end: single scenarios, calibration, the reference
// table and sweeps, and the Monte Carlo referral check.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "refnet/calibration.hpp"
#include "refnet/config.hpp"
#include "refnet/errors.hpp"
#include "refnet/experiments.hpp"
#include "refnet/simulate.hpp"

namespace {

using namespace refnet;

constexpr int kExitConvergence = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitBadConfig = 4;

void emit_csv(const SweepResult& result, const std::string& path) {
  if (path.empty() || path == "-") {
    write_csv(std::cout, result);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  write_csv(out, result);
}

ModelParams params_from(const std::string& config_path) {
  if (config_path.empty()) return {};
  auto s = load_scenario(config_path);
  return s.calibration ? calibrate(s.params, *s.calibration) : s.params;
}

void print_params(const ModelParams& p) {
  std::printf("y=%.10g b=%.10g r=%.10g delta=%.10g eta=%.10g\n", p.y, p.b, p.r, p.delta, p.eta);
  std::printf("gamma=%.10g beta=%.10g c=%.10g phi=%.10g d_f=%d\n", p.gamma, p.beta, p.c, p.phi,
              p.d_f);
}

int run_solve(const std::string& config_path, const std::string& csv, int multistart) {
  auto scenario = load_scenario(config_path);
  if (multistart > 0) scenario.solver.multistart = multistart;
  if (scenario.solver.multistart > 0 && !scenario.sweep) {
    ModelParams params =
        scenario.calibration ? calibrate(scenario.params, *scenario.calibration) : scenario.params;
    std::vector<GroupSpec> groups;
    for (const auto& g : scenario.groups) groups.push_back(resolve_group(g));
    const auto all = solve_all(params, groups, scenario.solver);
    SweepResult result;
    result.axis = "solution";
    for (std::size_t k = 0; k < all.size(); ++k) {
      result.rows.push_back(
          make_row(scenario.name, static_cast<double>(k), params, all[k], scenario.gini_base));
    }
    std::fprintf(stderr, "%zu distinct equilibria found\n", all.size());
    emit_csv(result, csv);
    return 0;
  }
  emit_csv(run_scenario(scenario), csv);
  return 0;
}

int run_calibrate(const std::string& config_path) {
  ModelParams given;
  CalibrationTargets targets;
  if (!config_path.empty()) {
    auto s = load_scenario(config_path);
    given = s.params;
    if (s.calibration) targets = *s.calibration;
  }
  const auto start = std::chrono::steady_clock::now();
  const auto params = calibrate(given, targets);
  const auto check = verify_calibration(params, targets);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  print_params(params);
  const auto& g = check.equilibrium.groups.front();
  std::printf("verification: u=%.10g v=%.10g w=%.10g referral_share=%.10g max_rel_error=%.3g\n",
              check.equilibrium.u, check.equilibrium.v, g.w, g.p_referral / g.p_total,
              check.max_error());
  std::printf("elapsed_ms=%.1f\n", ms);
  return 0;
}

int run_table2_cmd(const std::string& config_path, const std::string& csv, bool report) {
  const auto result = run_table2(params_from(config_path));
  emit_csv(result, csv);
  if (report) write_report(std::cerr, table2_checks(result), {}, result.notes);
  return 0;
}

int run_sweep_cmd(const std::string& axis, const std::string& config_path, const std::string& csv) {
  const auto params = params_from(config_path);
  SweepResult result;
  if (axis == "mean-degree") result = run_mean_degree_sweep(params);
  else if (axis == "alpha") result = run_alpha_sweep(params);
  else if (axis == "df") result = run_df_sweep(params);
  else if (axis == "phi") result = run_phi_sweep(params);
  else throw ConfigError("unknown axis '" + axis + "'");
  emit_csv(result, csv);
  for (const auto& note : result.notes) std::cerr << "note: " << note << '\n';
  return 0;
}

struct SimulateOptions {
  std::string family = "poisson";
  double mean = 22.47;
  double alpha = 0.0;
  std::size_t workers = 100'000;
  std::size_t trials = 100'000;
  std::uint64_t seed = 1;
  int reps = 1;
  ReferralContext context;
  int d_f = 16;
};

int run_simulate(const SimulateOptions& opt) {
  GroupDescriptor desc;
  if (opt.family == "poisson") desc.family = Family::Poisson;
  else if (opt.family == "regular") desc.family = Family::Regular;
  else if (opt.family == "zipf") desc.family = Family::Zipf;
  else throw ConfigError("unknown family '" + opt.family + "'");
  desc.mean = opt.mean;
  if (opt.alpha > 0.0) desc.alpha = opt.alpha;
  const auto dist = resolve_group(desc).dist;

  ModelParams params;
  params.phi = opt.context.phi;
  params.d_f = opt.d_f;
  const double P = info_probability(params, opt.context.u_i, opt.context.u, opt.context.v);
  const double mean_field = referral_arrival(dist, P);

  std::printf("rep,seed,estimate,std_error,mean_field,z\n");
  int within = 0;
  for (int rep = 0; rep < opt.reps; ++rep) {
    SimConfig cfg;
    cfg.n_workers = opt.workers;
    cfg.n_trials = opt.trials;
    cfg.seed = opt.seed + static_cast<std::uint64_t>(rep);
    cfg.dist = dist;
    cfg.d_f = opt.d_f;
    const auto est = estimate_referral_rate(cfg, opt.context);
    const double z = est.std_error > 0.0 ? (est.rate - mean_field) / est.std_error : 0.0;
    within += std::abs(est.rate - mean_field) <= 3.0 * est.std_error ? 1 : 0;
    std::printf("%d,%llu,%.10g,%.10g,%.10g,%.4f\n", rep, static_cast<unsigned long long>(cfg.seed),
                est.rate, est.std_error, mean_field, z);
  }
  std::fprintf(stderr, "%s: %d of %d repetitions within 3 standard errors\n",
               dist.describe().c_str(), within, opt.reps);
  return 0;
}

int run_reproduce_all(const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const ModelParams params;
  const auto table2 = run_table2(params);
  const auto structure = run_structure_sweeps(params);
  const auto df = run_df_sweep(params);
  const auto phi = run_phi_sweep(params);
  emit_csv(table2, (fs::path(out_dir) / "table2.csv").string());
  emit_csv(structure.er_vs_regular, (fs::path(out_dir) / "sweep_mean_degree.csv").string());
  emit_csv(structure.er_vs_scale_free, (fs::path(out_dir) / "sweep_alpha.csv").string());
  emit_csv(df, (fs::path(out_dir) / "sweep_df.csv").string());
  emit_csv(phi, (fs::path(out_dir) / "sweep_phi.csv").string());

  auto values = table2_checks(table2);
  const auto calibrated = calibrate(params);
  values.push_back(check_value("calibrated gamma", calibrated.gamma, 0.402, 0.002));
  values.push_back(check_value("calibrated beta", calibrated.beta, 0.028, 0.002));
  values.push_back(check_value("calibrated c", calibrated.c, 7.188, 0.02));
  values.push_back(check_value("calibrated phi", calibrated.phi, 0.048, 0.002));

  std::vector<std::string> notes = structure.er_vs_scale_free.notes;
  notes.insert(notes.end(), phi.notes.begin(), phi.notes.end());
  const auto properties = sweep_property_checks(structure, df, phi);
  std::ofstream report(fs::path(out_dir) / "summary.txt");
  write_report(report, values, properties, notes);
  write_report(std::cout, values, properties, notes);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state search-and-matching equilibria with referral hiring"};
  app.require_subcommand(1);

  std::string config_path;
  std::string csv;
  int multistart = 0;
  auto* solve = app.add_subcommand("solve", "Solve one scenario file");
  solve->add_option("-c,--config", config_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--csv", csv, "Output CSV path (default stdout)");
  solve->add_option("--multistart", multistart, "Extra random starting points");

  auto* calib = app.add_subcommand("calibrate", "Calibrate gamma, beta, c, phi to the targets");
  calib->add_option("-c,--config", config_path, "Scenario JSON with params/calibrate keys")
      ->check(CLI::ExistingFile);

  bool report = false;
  auto* table2 = app.add_subcommand("table2", "Mean degrees (15, 30) under three structures");
  table2->add_option("-c,--config", config_path, "Scenario JSON supplying params")
      ->check(CLI::ExistingFile);
  table2->add_option("--csv", csv, "Output CSV path (default stdout)");
  table2->add_flag("--report", report, "Print the reference comparison to stderr");

  std::string axis;
  auto* sweep = app.add_subcommand("sweep", "Comparative-statics sweep");
  sweep->add_option("--axis", axis, "Sweep axis")
      ->required()
      ->check(CLI::IsMember({"mean-degree", "alpha", "df", "phi"}));
  sweep->add_option("-c,--config", config_path, "Scenario JSON supplying params")
      ->check(CLI::ExistingFile);
  sweep->add_option("--csv", csv, "Output CSV path (default stdout)");

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of the referral rate");
  simulate->add_option("--family", sim.family, "poisson | regular | zipf")
      ->check(CLI::IsMember({"poisson", "regular", "zipf"}));
  simulate->add_option("--mean", sim.mean, "Mean degree");
  simulate->add_option("--alpha", sim.alpha, "Zipf scale parameter (overrides --mean)");
  simulate->add_option("--workers", sim.workers, "Network size");
  simulate->add_option("--trials", sim.trials, "Focal draws per repetition");
  simulate->add_option("--seed", sim.seed, "Base seed");
  simulate->add_option("--reps", sim.reps, "Repetitions (seed, seed+1, ...)");
  simulate->add_option("--u-i", sim.context.u_i, "Group unemployment rate");
  simulate->add_option("--u", sim.context.u, "Aggregate unemployment rate");
  simulate->add_option("--v", sim.context.v, "Vacancy rate");
  simulate->add_option("--phi", sim.context.phi, "Referral frequency");
  simulate->add_option("--d-f", sim.d_f, "Job-network degree");

  std::string out_dir = "results";
  auto* all = app.add_subcommand("reproduce-all", "Every table and sweep plus a summary report");
  all->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadConfig;
  }

  try {
    if (*solve) return run_solve(config_path, csv, multistart);
    if (*calib) return run_calibrate(config_path);
    if (*table2) return run_table2_cmd(config_path, csv, report);
    if (*sweep) return run_sweep_cmd(axis, config_path, csv);
    if (*simulate) return run_simulate(sim);
    if (*all) return run_reproduce_all(out_dir);
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const BracketingError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const InfeasibleCalibration& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadConfig;
  }
  return 0;
}
