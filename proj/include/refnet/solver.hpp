#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "refnet/model.hpp"

namespace refnet {

struct SolverConfig {
  double residual_tol = 1e-12;
  int max_outer_iters = 10'000;
  double damping = 0.5;
  double initial_u = 0.05;
  int multistart = 0;            // extra random initialisations for solve_all
  std::uint64_t multistart_seed = 20230701;

  void validate() const;
};

/// R_i = u_i p_i(u_i, u, v) - delta (1 - u_i) for every group.
std::vector<double> flow_residual(const ModelParams& params, std::span<const GroupSpec> groups,
                                  std::span<const double> u_vec, double v);

/// Steady state (u_1..u_I, v) satisfying flow balance and the vacancy
/// closure, with every GroupState field populated.
///
/// Outer damped fixed point: v from the closure, then one scalar root per
/// group for its own flow balance (aggregate u held fixed), then a damped
/// update. A few Newton steps on the reduced system polish the result once
/// the fixed point is close.
///
/// Throws ConvergenceError or BracketingError.
Equilibrium solve_equilibrium(const ModelParams& params, std::span<const GroupSpec> groups,
                              const SolverConfig& config = {});

/// Same as solve_equilibrium from a given starting vector.
Equilibrium solve_equilibrium_from(const ModelParams& params, std::span<const GroupSpec> groups,
                                   std::vector<double> u_start, const SolverConfig& config);

/// Default solution followed by every distinct solution reached from
/// config.multistart random initial vectors. Solutions are distinct when
/// their u-vectors differ by more than 1e-6 in some component.
std::vector<Equilibrium> solve_all(const ModelParams& params, std::span<const GroupSpec> groups,
                                   const SolverConfig& config);

/// Fills every derived GroupState field for a given (u_vec, v).
Equilibrium assemble_equilibrium(const ModelParams& params, std::span<const GroupSpec> groups,
                                 std::span<const double> u_vec, double v);

}  // namespace refnet
