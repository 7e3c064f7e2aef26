#include "refnet/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "refnet/errors.hpp"

namespace refnet {

void CalibrationTargets::validate() const {
  if (!(u_target > 0.0 && u_target < 1.0)) throw DomainError("targets: u must be in (0, 1)");
  if (!(market_tightness_inverse > 0.0)) throw DomainError("targets: u/v must be > 0");
  if (!(wage_target > 0.0)) throw DomainError("targets: wage must be > 0");
  if (!(referral_share >= 0.0 && referral_share <= 1.0)) {
    throw DomainError("targets: referral share must be in [0, 1]");
  }
  if (!(baseline_mean_degree > 0.0)) throw DomainError("targets: mean degree must be > 0");
  if (d_f < 0) throw DomainError("targets: d_f must be >= 0");
}

double bargaining_wage_gap(const ModelParams& given, double beta, double arrival,
                           double wage_target) {
  const double rd = given.r + given.delta;
  return given.y - rd * (1.0 - beta) * (given.y - given.b) / (rd + beta * arrival) - wage_target;
}

ModelParams calibrate(const ModelParams& given, const CalibrationTargets& targets) {
  targets.validate();
  ModelParams out = given;
  out.d_f = targets.d_f;

  const double u = targets.u_target;
  const double v = u / targets.market_tightness_inverse;
  const double p = given.delta * (1.0 - u) / u;
  const double p_referral = p * targets.referral_share;
  const double p_market = p - p_referral;

  out.gamma = p_market * std::pow(u / v, 1.0 - given.eta);

  if (p_referral == 0.0) {
    out.phi = 0.0;
  } else {
    if (!(p_referral < 1.0)) {
      throw InfeasibleCalibration("calibrate: referral arrival rate must be below 1");
    }
    const double info = -std::log1p(-p_referral) / targets.baseline_mean_degree;
    if (!(info <= 1.0)) {
      throw InfeasibleCalibration("calibrate: information probability would exceed 1");
    }
    const double reach =
        targets.d_f == 0 ? 0.0 : 1.0 - std::pow(1.0 - v / (1.0 - u + v), targets.d_f);
    const double capacity = (1.0 - u) * reach;
    if (!(capacity > 0.0)) {
      throw InfeasibleCalibration("calibrate: referral share > 0 needs d_f > 0");
    }
    out.phi = info / capacity;
    if (!(out.phi <= 1.0)) {
      throw InfeasibleCalibration("calibrate: referral frequency phi would exceed 1");
    }
  }

  // w(beta) rises from b at beta = 0 to y at beta = 1.
  const double w = targets.wage_target;
  const double gap_lo = bargaining_wage_gap(given, 0.0, p, w);
  const double gap_hi = bargaining_wage_gap(given, 1.0, p, w);
  if (gap_lo == 0.0) {
    out.beta = 0.0;
  } else if (gap_hi == 0.0) {
    out.beta = 1.0;
  } else if ((gap_lo > 0.0) == (gap_hi > 0.0)) {
    throw InfeasibleCalibration("calibrate: wage target outside [b, y] needs beta outside [0, 1]");
  } else {
    std::uintmax_t iters = 200;
    auto f = [&](double beta) { return bargaining_wage_gap(given, beta, p, w); };
    const auto [a, b] = boost::math::tools::toms748_solve(
        f, 0.0, 1.0, gap_lo, gap_hi, boost::math::tools::eps_tolerance<double>(), iters);
    out.beta = 0.5 * (a + b);
  }

  // Free entry with symmetric groups: c = (1 - beta) q S, q = u p / v.
  const double S = (given.y - given.b) / (given.r + given.delta + out.beta * p);
  out.c = (1.0 - out.beta) * (u * p / v) * S;
  out.validate();
  return out;
}

double CalibrationCheck::max_error() const {
  return std::max({u_error, v_error, wage_error, share_error});
}

CalibrationCheck verify_calibration(const ModelParams& params, const CalibrationTargets& targets,
                                    const SolverConfig& config) {
  const auto dist = DegreeDistribution::poisson(targets.baseline_mean_degree);
  const std::array<GroupSpec, 2> groups{GroupSpec{1e6, dist}, GroupSpec{1e6, dist}};
  CalibrationCheck check;
  check.equilibrium = solve_equilibrium(params, groups, config);
  const auto& eq = check.equilibrium;
  const double v_target = targets.u_target / targets.market_tightness_inverse;
  auto rel = [](double got, double want) {
    return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
  };
  check.u_error = rel(eq.u, targets.u_target);
  check.v_error = rel(eq.v, v_target);
  for (const auto& g : eq.groups) {
    check.wage_error = std::max(check.wage_error, rel(g.w, targets.wage_target));
    check.share_error =
        std::max(check.share_error, rel(g.p_referral / g.p_total, targets.referral_share));
  }
  return check;
}

}  // namespace refnet
