#include "refnet/special_functions.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "refnet/errors.hpp"

namespace refnet {

namespace {

// Direct terms before switching to the Euler-Maclaurin tail. With the B2 and B4
// corrections the remainder is below 1e-12 relative for every s > 1.
constexpr int kZetaDirectTerms = 32;

constexpr long kPolylogMaxTerms = 1'000'000;
constexpr double kPolylogRelTol = 1e-12;

// Below this -ln(x) the direct series needs hundreds of terms or more.
constexpr double kPolylogSeriesMinMu = 0.05;
constexpr int kPolylogDirectTerms = 64;

// sum_{k>=1} e^{-mu k} k^{-s} for small mu: direct head, then the
// Euler-Maclaurin tail with an exp-sinh quadrature for the integral.
double polylog_euler_maclaurin(double s, double mu) {
  const int n = kPolylogDirectTerms;
  double head = 0.0;
  for (int k = n - 1; k >= 1; --k) {
    head += std::exp(-mu * k - s * std::log(static_cast<double>(k)));
  }
  const double nd = n;
  auto integrand = [&](double t) { return std::exp(-mu * (t + nd) - s * std::log(t + nd)); };
  boost::math::quadrature::exp_sinh<double> integrator;
  const double integral = integrator.integrate(integrand, 1e-14);

  const double f = std::exp(-mu * nd - s * std::log(nd));
  const double g1 = -mu - s / nd;           // (ln f)'
  const double g2 = s / (nd * nd);          // (ln f)''
  const double g3 = -2.0 * s / (nd * nd * nd);
  const double f1 = f * g1;
  const double f3 = f * (g1 * g1 * g1 + 3.0 * g1 * g2 + g3);
  return head + integral + 0.5 * f - f1 / 12.0 + f3 / 720.0;
}

}  // namespace

double zeta(double s) {
  if (!(s > 1.0) || !std::isfinite(s)) {
    throw DomainError("zeta: requires finite s > 1, got " + std::to_string(s));
  }
  const double n = kZetaDirectTerms;
  double sum = 0.0;
  for (int k = kZetaDirectTerms - 1; k >= 1; --k) {
    sum += std::pow(static_cast<double>(k), -s);
  }
  const double n_pow = std::pow(n, -s);
  sum += n * n_pow / (s - 1.0);
  sum += 0.5 * n_pow;
  sum += s * n_pow / (12.0 * n);
  sum -= s * (s + 1.0) * (s + 2.0) * n_pow / (720.0 * n * n * n);
  return sum;
}

double polylog(double s, double x) {
  if (!(s > 1.0) || !std::isfinite(s)) {
    throw DomainError("polylog: requires finite s > 1, got " + std::to_string(s));
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("polylog: requires 0 <= x <= 1, got " + std::to_string(x));
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return zeta(s);

  const double mu = -std::log(x);
  if (mu < kPolylogSeriesMinMu) return polylog_euler_maclaurin(s, mu);

  const double one_minus_x = 1.0 - x;
  double sum = 0.0;
  double x_pow = 1.0;
  for (long k = 1; k <= kPolylogMaxTerms; ++k) {
    x_pow *= x;
    const double kd = static_cast<double>(k);
    sum += x_pow * std::pow(kd, -s);
    // Geometric bound on everything after term k.
    const double tail_bound = x_pow * x / (one_minus_x * std::pow(kd + 1.0, s));
    if (tail_bound < kPolylogRelTol * sum) return sum;
    if (x_pow == 0.0) return sum;
  }
  return sum;
}

}  // namespace refnet
