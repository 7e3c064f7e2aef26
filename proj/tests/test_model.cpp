#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "refnet/errors.hpp"
#include "refnet/model.hpp"

using namespace refnet;

namespace {

ModelParams random_params(std::mt19937_64& rng) {
  auto around = [&](double x) { return std::uniform_real_distribution<double>(0.5 * x, 1.5 * x)(rng); };
  ModelParams p;
  p.b = around(0.4);
  p.r = around(0.012);
  p.delta = around(0.036);
  p.eta = around(0.72);
  p.gamma = around(0.402);
  p.beta = around(0.028);
  p.c = around(7.188);
  p.phi = around(0.048);
  p.d_f = std::uniform_int_distribution<int>(8, 24)(rng);
  return p;
}

}  // namespace

TEST_CASE("default parameters are valid and match the calibrated table") {
  const ModelParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.gamma == 0.402);
  CHECK(p.beta == 0.028);
  CHECK(p.c == 7.188);
  CHECK(p.phi == 0.048);
  CHECK(p.d_f == 16);
}

TEST_CASE("parameter validation") {
  auto bad = [](auto mutate) {
    ModelParams p;
    mutate(p);
    return p;
  };
  CHECK_THROWS_AS(bad([](ModelParams& p) { p.b = 1.2; }).validate(), DomainError);
  CHECK_THROWS_AS(bad([](ModelParams& p) { p.r = 0.0; }).validate(), DomainError);
  CHECK_THROWS_AS(bad([](ModelParams& p) { p.delta = 1.5; }).validate(), DomainError);
  CHECK_THROWS_AS(bad([](ModelParams& p) { p.beta = -0.1; }).validate(), DomainError);
  CHECK_THROWS_AS(bad([](ModelParams& p) { p.c = 0.0; }).validate(), DomainError);
  CHECK_THROWS_AS(bad([](ModelParams& p) { p.phi = 1.1; }).validate(), DomainError);
  CHECK_THROWS_AS(bad([](ModelParams& p) { p.d_f = -1; }).validate(), DomainError);
  CHECK_THROWS_AS(bad([](ModelParams& p) { p.eta = 0.0; }).validate(), DomainError);
}

TEST_CASE("market_arrival") {
  const ModelParams p;
  CHECK(market_arrival(p, 0.05, 0.05) == doctest::Approx(0.402));
  CHECK(std::abs(market_arrival(p, 0.044, 0.04) - 0.39139) < 1e-4);
  ModelParams zero = p;
  zero.gamma = 0.0;
  CHECK(market_arrival(zero, 0.03, 0.07) == 0.0);
  CHECK_THROWS_AS(market_arrival(p, 0.0, 0.04), DomainError);
  CHECK_THROWS_AS(market_arrival(p, 0.04, -1.0), DomainError);
}

TEST_CASE("info_probability") {
  ModelParams p;
  CHECK(std::abs(info_probability(p, 0.044, 0.044, 0.04) - 0.022064) < 1e-5);
  CHECK(info_probability(p, 1.0, 0.044, 0.04) == 0.0);
  ModelParams isolated = p;
  isolated.d_f = 0;
  CHECK(info_probability(isolated, 0.1, 0.2, 0.3) == 0.0);
  CHECK_THROWS_AS(info_probability(p, 0.5, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(info_probability(p, 1.5, 0.5, 0.1), DomainError);
  // Bounded by phi.
  for (double v : {0.001, 0.04, 0.5, 5.0}) CHECK(info_probability(p, 0.0, 0.0, v) <= p.phi);
}

TEST_CASE("info_probability rises with v and falls with u_i") {
  const ModelParams p;
  for (double u_i = 0.01; u_i < 0.5; u_i += 0.07) {
    double prev = 0.0;
    for (double v = 0.005; v < 0.3; v += 0.01) {
      const double cur = info_probability(p, u_i, 0.05, v);
      CHECK(cur > prev);
      prev = cur;
    }
  }
  for (double v = 0.01; v < 0.2; v += 0.03) {
    double prev = 1.0;
    for (double u_i = 0.0; u_i <= 1.0; u_i += 0.05) {
      const double cur = info_probability(p, u_i, 0.05, v);
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("referral_arrival delegates to the distribution") {
  CHECK(referral_arrival(DegreeDistribution::poisson(22.47), 0.0) == 0.0);
  CHECK(referral_arrival(DegreeDistribution::degenerate(16), 0.1) ==
        doctest::Approx(1.0 - std::pow(0.9, 16)));
  CHECK(std::abs(referral_arrival(DegreeDistribution::degenerate(16), 0.1) - 0.81469) < 1e-5);
  CHECK(std::abs(referral_arrival(DegreeDistribution::poisson(22.47), 0.022064) - 0.390903) < 1e-5);
}

TEST_CASE("surplus and wage") {
  const ModelParams p;
  CHECK(surplus(p, 0.0) == doctest::Approx(12.5));
  CHECK(std::abs(surplus(p, 0.78218) - 8.585) < 0.01);
  CHECK(wage(p, 0.0) == p.y);
  CHECK(std::abs(wage(p, 8.585) - 0.600) < 0.002);
  ModelParams no_power = p;
  no_power.beta = 0.0;
  CHECK(surplus(no_power, 0.9) == doctest::Approx(12.5));
  ModelParams all_power = p;
  all_power.beta = 1.0;
  CHECK(wage(all_power, 3.7) == all_power.y);
  CHECK_THROWS_AS(surplus(p, -0.1), DomainError);
}

TEST_CASE("wage rises with the arrival rate") {
  const ModelParams p;
  double prev_s = surplus(p, 0.0);
  double prev_w = wage(p, prev_s);
  for (double rate = 0.05; rate < 3.0; rate += 0.05) {
    const double s = surplus(p, rate);
    const double w = wage(p, s);
    CHECK(s < prev_s);
    CHECK(w > prev_w);
    prev_s = s;
    prev_w = w;
  }
}

TEST_CASE("vacancy_closure") {
  const ModelParams p;
  const std::array<GroupSpec, 2> groups{GroupSpec{}, GroupSpec{}};
  const std::array<double, 2> base{0.044, 0.044};
  CHECK(std::abs(vacancy_closure(p, groups, base) - 0.0400) < 0.0005);
  const std::array<double, 2> everyone{1.0, 1.0};
  CHECK(vacancy_closure(p, groups, everyone) == 0.0);
  ModelParams frozen = p;
  frozen.delta = 0.0;
  CHECK(vacancy_closure(frozen, groups, base) == 0.0);
  CHECK_THROWS_AS(vacancy_closure(p, std::span<const GroupSpec>{}, std::span<const double>{}),
                  DomainError);
}

TEST_CASE("vacancy_closure is symmetric under permutation") {
  const ModelParams p;
  std::vector<GroupSpec> groups{{1e6, DegreeDistribution::poisson(5)},
                                {3e6, DegreeDistribution::zipf(2.5)},
                                {2e6, DegreeDistribution::degenerate(4)}};
  std::vector<double> u{0.03, 0.09, 0.06};
  const double v = vacancy_closure(p, groups, u);
  std::vector<std::size_t> idx{0, 1, 2};
  while (std::next_permutation(idx.begin(), idx.end())) {
    std::vector<GroupSpec> g2;
    std::vector<double> u2;
    for (auto i : idx) {
      g2.push_back(groups[i]);
      u2.push_back(u[i]);
    }
    CHECK(vacancy_closure(p, g2, u2) == doctest::Approx(v).epsilon(1e-14));
  }
}

TEST_CASE("value_functions") {
  const ModelParams p;
  const auto indifferent = value_functions(p, p.b, 0.7);
  CHECK(indifferent.W == doctest::Approx(p.b / p.r));
  CHECK(indifferent.U == doctest::Approx(p.b / p.r));
  CHECK(std::abs(value_functions(p, 0.6, 0.78218).J - 8.333) < 0.01);
  CHECK(value_functions(p, p.y, 0.5).J == 0.0);
  CHECK_THROWS_AS(value_functions(p, 0.6, -(p.r + p.delta)), DomainError);
}

TEST_CASE("Bellman equations and the bargaining split hold on random parameter draws") {
  std::mt19937_64 rng(5);
  for (int draw = 0; draw < 200; ++draw) {
    const auto p = random_params(rng);
    REQUIRE_NOTHROW(p.validate());
    const double rate = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
    const double S = surplus(p, rate);
    const double w = wage(p, S);
    const auto val = value_functions(p, w, rate);
    CHECK(std::isfinite(val.W));
    CHECK(std::isfinite(val.U));
    CHECK(std::abs(val.J - (1.0 - p.beta) * S) < 1e-10);
    CHECK(std::abs((val.W - val.U) - p.beta * S) < 1e-10);
    CHECK(std::abs(p.r * val.W - (w - p.delta * (val.W - val.U))) < 1e-9);
    CHECK(std::abs(p.r * val.U - (p.b + rate * (val.W - val.U))) < 1e-9);
    CHECK(std::abs(p.r * val.J - (p.y - w - p.delta * val.J)) < 1e-9);
    CHECK(w >= p.b - 1e-12);
    CHECK(w <= p.y + 1e-12);
  }
}

TEST_CASE("outputs stay finite across the parameter box") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> rate(0.005, 0.3);
  for (int draw = 0; draw < 200; ++draw) {
    const auto p = random_params(rng);
    const double u = rate(rng);
    const double v = rate(rng);
    const double P = info_probability(p, u, u, v);
    const double pr = referral_arrival(DegreeDistribution::zipf(2.05), P);
    const double pm = market_arrival(p, u, v);
    std::vector<GroupSpec> g{GroupSpec{}};
    std::vector<double> uv{u};
    CHECK(std::isfinite(pm));
    CHECK(std::isfinite(pr));
    CHECK(std::isfinite(vacancy_closure(p, g, uv)));
    CHECK(std::isfinite(wage(p, surplus(p, pm + pr))));
  }
}
