#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "refnet/calibration.hpp"
#include "refnet/metrics.hpp"
#include "refnet/model.hpp"
#include "refnet/solver.hpp"

namespace refnet {

enum class Family { Poisson, Regular, Zipf };

/// Group as written in a scenario: a family plus either a mean degree or,
/// for Zipf, a scale parameter.
struct GroupDescriptor {
  Family family = Family::Poisson;
  std::optional<double> mean;
  std::optional<double> alpha;
  double size = 1e6;
};

/// Turns a descriptor into a concrete group. Mean 0 maps to Degenerate(0)
/// for every family; Zipf means are inverted through zipf_alpha_for_mean.
GroupSpec resolve_group(const GroupDescriptor& desc);

struct SweepAxis {
  std::string parameter;  // a ModelParams field or "mean_degree"
  std::vector<double> values;
};

struct Scenario {
  std::string name = "scenario";
  ModelParams params;
  std::optional<CalibrationTargets> calibration;  // replaces gamma, beta, c, phi when set
  std::vector<GroupDescriptor> groups;
  std::optional<SweepAxis> sweep;
  SolverConfig solver;
  GiniBase gini_base = GiniBase::Group;
};

struct SweepRow {
  std::string scenario;
  double axis_value = 0.0;
  ModelParams params;
  Equilibrium eq;
  double gini = 0.0;
  double sw = 0.0;
};

struct SweepResult {
  std::string axis;
  std::vector<SweepRow> rows;
  std::vector<std::string> notes;

  void append(const SweepResult& other);
};

/// Thresholds every emitted row must meet.
inline constexpr double kRowResidualTol = 1e-10;
inline constexpr double kRowFreeEntryTol = 1e-8;

/// Wraps a solved equilibrium as a row after checking flow balance and free
/// entry. Throws ConvergenceError when either fails.
SweepRow make_row(const std::string& scenario, double axis_value, const ModelParams& params,
                  Equilibrium eq, GiniBase base = GiniBase::Group);

/// Solves one point and checks flow balance and free entry before returning.
SweepRow solve_row(const std::string& scenario, double axis_value, const ModelParams& params,
                   const std::vector<GroupSpec>& groups, const SolverConfig& solver,
                   GiniBase base = GiniBase::Group);

/// Sets a ModelParams field by name ("phi", "d_f", ...). Throws ConfigError.
void set_param(ModelParams& params, const std::string& name, double value);

SweepResult run_scenario(const Scenario& scenario);

/// Mean degrees (15, 30) under Poisson, regular and matched-Zipf groups.
SweepResult run_table2(const ModelParams& params = {}, const SolverConfig& solver = {});

/// Erdos-Renyi vs regular over integer mean degrees 0..60.
SweepResult run_mean_degree_sweep(const ModelParams& params = {}, const SolverConfig& solver = {},
                                  int max_mean = 60);

inline const std::vector<double> kAlphaGrid{2.028, 2.05, 2.1, 2.3, 2.5, 3.0, 5.0};

/// Erdos-Renyi vs Zipf(alpha) with the ER mean set to the Zipf mean.
SweepResult run_alpha_sweep(const ModelParams& params = {}, const SolverConfig& solver = {});

struct StructureSweeps {
  SweepResult er_vs_regular;
  SweepResult er_vs_scale_free;
};

StructureSweeps run_structure_sweeps(const ModelParams& params = {},
                                     const SolverConfig& solver = {});

inline const std::vector<int> kDfGrid{0, 1, 2, 3, 5, 10, 16, 20, 40};

/// ER vs Zipf, both with mean 22.47, over the job-network degree grid.
SweepResult run_df_sweep(const ModelParams& params = {}, const SolverConfig& solver = {});

/// Published phi values with the repeated 0.1 removed.
inline const std::vector<double> kPhiSet{0.0, 0.001, 0.01, 0.1, 0.3, 0.408, 1.0};
inline constexpr double kPhiFineMax = 0.3;
inline constexpr double kPhiFineStep = 0.005;

/// ER vs Zipf, both with mean 22.47, over kPhiSet (scenario "phi_set") and
/// a fine grid on [0, 0.3] (scenario "phi_fine").
SweepResult run_phi_sweep(const ModelParams& params = {}, const SolverConfig& solver = {});

/// CSV header of the sweep output.
inline constexpr const char* kCsvHeader =
    "scenario,axis_value,group,u,w,p_market,p_referral,P_i,S,gini,sw,v";

/// One line per (row, group), groups numbered from 1, values with 10
/// significant digits.
void write_csv(std::ostream& out, const SweepResult& result, bool header = true);

/// Comparison of a computed quantity against a published value.
struct ReferenceCheck {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool relative = false;
  bool pass = false;
};

ReferenceCheck check_value(std::string name, double value, double expected, double tolerance,
                           bool relative = false);

/// Reference values for the (15, 30) comparison against a run_table2 result.
std::vector<ReferenceCheck> table2_checks(const SweepResult& table2);

/// Boolean qualitative property with a description of the evidence.
struct PropertyCheck {
  std::string name;
  std::string detail;
  bool pass = false;
};

std::vector<PropertyCheck> sweep_property_checks(const StructureSweeps& structure,
                                                 const SweepResult& df_sweep,
                                                 const SweepResult& phi_sweep);

/// Rows of one scenario, in sweep order.
std::vector<const SweepRow*> rows_of(const SweepResult& result, const std::string& scenario);

void write_report(std::ostream& out, const std::vector<ReferenceCheck>& values,
                  const std::vector<PropertyCheck>& properties,
                  const std::vector<std::string>& notes);

}  // namespace refnet
