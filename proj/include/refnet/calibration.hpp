#pragma once

#include "refnet/model.hpp"
#include "refnet/solver.hpp"

namespace refnet {

/// Steady-state moments the symmetric baseline must reproduce.
struct CalibrationTargets {
  double u_target = 0.044;                // unemployment rate
  double market_tightness_inverse = 1.1;  // u / v
  double wage_target = 0.6;               // w_i, labour share with y = 1
  double referral_share = 0.5;            // p^R / p
  double baseline_mean_degree = 22.47;    // Poisson mean of every group
  int d_f = 16;

  void validate() const;
};

/// Recovers gamma, beta, c and phi in closed form from the targets, keeping
/// y, b, r, delta and eta from `given`. Assumes identical Poisson groups, so
/// every step is a scalar inversion. Throws InfeasibleCalibration.
ModelParams calibrate(const ModelParams& given, const CalibrationTargets& targets = {});

struct CalibrationCheck {
  Equilibrium equilibrium;
  double u_error = 0.0;       // relative errors of the four moments
  double v_error = 0.0;
  double wage_error = 0.0;
  double share_error = 0.0;

  double max_error() const;
};

/// Solves the two-group symmetric baseline at `params` and compares the
/// solved moments against `targets`.
CalibrationCheck verify_calibration(const ModelParams& params, const CalibrationTargets& targets,
                                    const SolverConfig& config = {});

/// Residual of the wage equation w(beta) - w_target used to pin beta.
double bargaining_wage_gap(const ModelParams& given, double beta, double arrival,
                           double wage_target);

}  // namespace refnet
