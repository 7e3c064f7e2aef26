#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>
#include <vector>

#include "refnet/calibration.hpp"
#include "refnet/errors.hpp"
#include "refnet/solver.hpp"

using namespace refnet;

namespace {

std::vector<GroupSpec> pair_of(DegreeDistribution a, DegreeDistribution b) {
  return {GroupSpec{1e6, a}, GroupSpec{1e6, b}};
}

// One-group textbook model: u gamma (u/v)^(eta-1) = delta (1 - u) with v from
// the closure, solved by plain bisection on u.
double textbook_unemployment(const ModelParams& p) {
  auto excess = [&](double u) {
    const double v = (p.y - p.b) * (1 - p.beta) * p.delta / p.c * u * (1 - u) /
                     (u * (p.r + p.delta) + p.beta * p.delta * (1 - u));
    return u * p.gamma * std::pow(u / v, p.eta - 1.0) - p.delta * (1 - u);
  };
  double lo = 1e-6, hi = 0.999;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("flow_residual boundary cases") {
  ModelParams p;
  const auto groups = pair_of(DegreeDistribution::poisson(22.47), DegreeDistribution::poisson(22.47));

  ModelParams frozen = p;
  frozen.delta = 0.0;
  // u p_i grows like u^eta as u -> 0, so the residual vanishes with u.
  double prev = 1.0;
  for (double u = 1e-2; u >= 1e-14; u /= 100.0) {
    const std::vector<double> tiny{u, u};
    const double r = std::abs(flow_residual(frozen, groups, tiny, 0.04)[0]);
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev < 1e-9);

  const auto calibrated = calibrate(p);
  const std::vector<double> base{0.044, 0.044};
  for (double r : flow_residual(calibrated, groups, base, 0.04)) CHECK(std::abs(r) < 1e-3);

  const std::vector<double> all_out{1.0, 1.0};
  for (double r : flow_residual(p, groups, all_out, 0.04)) CHECK(r >= 0.0);
}

TEST_CASE("no referrals reduces to the one-group textbook model") {
  ModelParams p;
  p.phi = 0.0;
  const auto eq = solve_equilibrium(
      p, pair_of(DegreeDistribution::poisson(15), DegreeDistribution::zipf(2.3)));
  const double u = textbook_unemployment(p);
  CHECK(eq.groups[0].u == doctest::Approx(u).epsilon(1e-9));
  CHECK(eq.groups[1].u == doctest::Approx(u).epsilon(1e-9));
  CHECK(eq.groups[0].p_referral == 0.0);
}

TEST_CASE("calibrated baseline reproduces the targets") {
  const auto p = calibrate(ModelParams{});
  const auto start = std::chrono::steady_clock::now();
  const auto eq = solve_equilibrium(
      p, pair_of(DegreeDistribution::poisson(22.47), DegreeDistribution::poisson(22.47)));
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(1));
  for (const auto& g : eq.groups) {
    CHECK(std::abs(g.u - 0.044) < 0.001);
    CHECK(std::abs(g.w - 0.600) < 0.002);
    CHECK(std::abs(g.p_total - (g.p_market + g.p_referral)) < 1e-15);
  }
  CHECK(std::abs(eq.v - 0.040) < 0.001);
}

TEST_CASE("mean degrees 15 and 30") {
  const ModelParams p;
  const auto er = solve_equilibrium(
      p, pair_of(DegreeDistribution::poisson(15), DegreeDistribution::poisson(30)));
  CHECK(std::abs(er.groups[0].u - 0.0510) < 0.0005);
  CHECK(std::abs(er.groups[1].u - 0.0394) < 0.0005);
  CHECK(std::abs(er.groups[0].w - 0.581) < 0.002);
  CHECK(std::abs(er.groups[1].w - 0.615) < 0.002);

  const auto sf = solve_equilibrium(
      p, pair_of(DegreeDistribution::zipf(zipf_alpha_for_mean(15)),
                 DegreeDistribution::zipf(zipf_alpha_for_mean(30))));
  CHECK(std::abs(sf.groups[0].u - 0.0814) < 0.001);
  CHECK(std::abs(sf.groups[1].u - 0.0810) < 0.001);
}

TEST_CASE("returned equilibria satisfy flow balance and free entry") {
  const ModelParams p;
  const auto groups = pair_of(DegreeDistribution::degenerate(7), DegreeDistribution::zipf(2.1));
  const auto eq = solve_equilibrium(p, groups);
  std::vector<double> u{eq.groups[0].u, eq.groups[1].u};
  for (double r : flow_residual(p, groups, u, eq.v)) CHECK(std::abs(r) < 1e-12);
  CHECK(eq.v == doctest::Approx(vacancy_closure(p, groups, u)).epsilon(1e-14));
  CHECK(std::abs(p.r * eq.V) < 1e-8);
  CHECK(std::abs(p.r * vacant_job_value(p, eq)) < 1e-8);
}

TEST_CASE("permutation and size scaling") {
  const ModelParams p;
  std::vector<GroupSpec> groups{{1e6, DegreeDistribution::poisson(5)},
                                {2e6, DegreeDistribution::zipf(2.2)},
                                {5e5, DegreeDistribution::degenerate(12)}};
  const auto eq = solve_equilibrium(p, groups);

  std::vector<GroupSpec> rotated{groups[2], groups[0], groups[1]};
  const auto eq_rot = solve_equilibrium(p, rotated);
  CHECK(std::abs(eq_rot.groups[0].u - eq.groups[2].u) < 1e-10);
  CHECK(std::abs(eq_rot.groups[1].u - eq.groups[0].u) < 1e-10);
  CHECK(std::abs(eq_rot.groups[2].u - eq.groups[1].u) < 1e-10);
  CHECK(std::abs(eq_rot.v - eq.v) < 1e-10);

  auto scaled = groups;
  for (auto& g : scaled) g.size *= 37.0;
  const auto eq_big = solve_equilibrium(p, scaled);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    CHECK(std::abs(eq_big.groups[i].u - eq.groups[i].u) < 1e-10);
    CHECK(std::abs(eq_big.groups[i].w - eq.groups[i].w) < 1e-10);
  }
  CHECK(std::abs(eq_big.v - eq.v) < 1e-10);
}

TEST_CASE("more contacts weakly lower a group's unemployment") {
  const ModelParams p;
  double prev = 1.0;
  for (double mean = 2.0; mean <= 40.0; mean += 2.0) {
    const auto eq = solve_equilibrium(
        p, pair_of(DegreeDistribution::poisson(mean), DegreeDistribution::poisson(22.47)));
    CHECK(eq.groups[0].u <= prev);
    prev = eq.groups[0].u;
  }
}

TEST_CASE("non-convergence carries the last iterate") {
  const ModelParams p;
  SolverConfig cfg;
  cfg.max_outer_iters = 2;
  try {
    solve_equilibrium(p, pair_of(DegreeDistribution::poisson(15), DegreeDistribution::poisson(30)),
                      cfg);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_u().size() == 2);
    CHECK(e.residual() > cfg.residual_tol);
    CHECK(e.last_v() > 0.0);
  }
}

TEST_CASE("no job-finding channel is a bracketing failure") {
  ModelParams p;
  p.gamma = 0.0;
  p.phi = 0.0;
  CHECK_THROWS_AS(
      solve_equilibrium(p, pair_of(DegreeDistribution::poisson(5), DegreeDistribution::poisson(5))),
      BracketingError);
}

TEST_CASE("bad inputs") {
  const ModelParams p;
  CHECK_THROWS_AS(solve_equilibrium(p, std::vector<GroupSpec>{}), DomainError);
  SolverConfig cfg;
  cfg.damping = 0.0;
  CHECK_THROWS_AS(solve_equilibrium(p, std::vector<GroupSpec>{GroupSpec{}}, cfg), DomainError);
  std::vector<GroupSpec> empty_group{GroupSpec{0.0, DegreeDistribution::poisson(3)}};
  CHECK_THROWS_AS(solve_equilibrium(p, empty_group), DomainError);
}

TEST_CASE("multistart reports distinct solutions") {
  const ModelParams p;
  SolverConfig cfg;
  cfg.multistart = 6;
  const auto all = solve_all(
      p, pair_of(DegreeDistribution::poisson(15), DegreeDistribution::zipf(2.3)), cfg);
  REQUIRE(!all.empty());
  for (std::size_t a = 0; a < all.size(); ++a) {
    CHECK(all[a].residual < 1e-12);
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      const double d = std::max(std::abs(all[a].groups[0].u - all[b].groups[0].u),
                                std::abs(all[a].groups[1].u - all[b].groups[1].u));
      CHECK(d > 1e-6);
    }
  }
}

TEST_CASE("high referral frequency still converges") {
  ModelParams p;
  p.phi = 1.0;
  p.d_f = 40;
  const auto eq = solve_equilibrium(
      p, pair_of(DegreeDistribution::poisson(22.47), DegreeDistribution::zipf(zipf_alpha_for_mean(22.47))));
  CHECK(eq.residual < 1e-12);
}
