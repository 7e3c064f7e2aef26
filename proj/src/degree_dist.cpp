#include "refnet/degree_dist.hpp"

#include <cmath>
#include <sstream>

#include "refnet/errors.hpp"
#include "refnet/special_functions.hpp"

namespace refnet {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kAlphaLo = 2.0 + 1e-6;
constexpr double kAlphaHi = 50.0;
constexpr double kMeanTol = 1e-8;

}  // namespace

DegreeDistribution DegreeDistribution::poisson(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("poisson: lambda must be finite and > 0");
  }
  return DegreeDistribution(Poisson{lambda});
}

DegreeDistribution DegreeDistribution::degenerate(int k) {
  if (k < 0) throw DomainError("degenerate: k must be >= 0");
  return DegreeDistribution(Degenerate{k});
}

DegreeDistribution DegreeDistribution::zipf(double alpha) {
  if (!(alpha > 2.0) || !std::isfinite(alpha)) {
    throw DomainError("zipf: alpha must be > 2 for a finite mean");
  }
  return DegreeDistribution(Zipf{alpha});
}

double DegreeDistribution::mean() const {
  return std::visit(Overloaded{
                        [](const Poisson& d) { return d.lambda; },
                        [](const Degenerate& d) { return static_cast<double>(d.k); },
                        [](const Zipf& d) { return zeta(d.alpha - 1.0) / zeta(d.alpha); },
                    },
                    law_);
}

double DegreeDistribution::pmf(long k) const {
  if (k < 0) return 0.0;
  const double kd = static_cast<double>(k);
  return std::visit(
      Overloaded{
          [&](const Poisson& d) {
            return std::exp(kd * std::log(d.lambda) - d.lambda - std::lgamma(kd + 1.0));
          },
          [&](const Degenerate& d) { return k == d.k ? 1.0 : 0.0; },
          [&](const Zipf& d) { return k == 0 ? 0.0 : std::pow(kd, -d.alpha) / zeta(d.alpha); },
      },
      law_);
}

double DegreeDistribution::referral_expectation(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("referral_expectation: probability outside [0, 1]");
  }
  if (p == 0.0) return 0.0;
  return std::visit(Overloaded{
                        [&](const Poisson& d) { return -std::expm1(-d.lambda * p); },
                        [&](const Degenerate& d) { return 1.0 - std::pow(1.0 - p, d.k); },
                        [&](const Zipf& d) {
                          return 1.0 - polylog(d.alpha, 1.0 - p) / zeta(d.alpha);
                        },
                    },
                    law_);
}

std::string DegreeDistribution::describe() const {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const Poisson& d) { out << "poisson(" << d.lambda << ")"; },
                 [&](const Degenerate& d) { out << "regular(" << d.k << ")"; },
                 [&](const Zipf& d) { out << "zipf(" << d.alpha << ")"; },
             },
             law_);
  return out.str();
}

double zipf_alpha_for_mean(double target_mean) {
  if (!(target_mean > 1.0) || !std::isfinite(target_mean)) {
    throw DomainError("zipf_alpha_for_mean: target mean must be > 1");
  }
  // The zipf mean decreases in alpha.
  auto excess = [&](double a) { return zeta(a - 1.0) / zeta(a) - target_mean; };
  double lo = kAlphaLo;
  double hi = kAlphaHi;
  if (excess(lo) < 0.0 || excess(hi) > 0.0) {
    throw DomainError("zipf_alpha_for_mean: target mean cannot be bracketed on (2, 50]");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double e = excess(mid);
    if (std::abs(e) < kMeanTol) return mid;
    (e > 0.0 ? lo : hi) = mid;
    if (hi - lo < 1e-15) break;
  }
  const double mid = 0.5 * (lo + hi);
  if (std::abs(excess(mid)) >= kMeanTol) {
    throw DomainError("zipf_alpha_for_mean: bisection did not reach tolerance");
  }
  return mid;
}

}  // namespace refnet
