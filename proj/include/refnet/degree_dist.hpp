#pragma once

#include <string>
#include <variant>

namespace refnet {

struct Poisson {
  double lambda;
  friend bool operator==(const Poisson&, const Poisson&) = default;
};

struct Degenerate {
  int k;
  friend bool operator==(const Degenerate&, const Degenerate&) = default;
};

/// Zeta law on k >= 1 with pmf k^-alpha / zeta(alpha).
struct Zipf {
  double alpha;
  friend bool operator==(const Zipf&, const Zipf&) = default;
};

/// Degree law of one group's social network.
///
/// Erdos-Renyi groups are Poisson, regular groups are Degenerate and
/// scale-free groups are Zipf. Construction validates parameters, so every
/// instance has a finite mean.
class DegreeDistribution {
 public:
  using Law = std::variant<Poisson, Degenerate, Zipf>;

  static DegreeDistribution poisson(double lambda);
  static DegreeDistribution degenerate(int k);
  static DegreeDistribution zipf(double alpha);

  const Law& law() const noexcept { return law_; }

  double mean() const;
  double pmf(long k) const;

  /// E[1 - (1 - p)^d] = 1 - G(1 - p), G the probability generating function.
  double referral_expectation(double p) const;

  /// Short label such as "poisson(22.47)".
  std::string describe() const;

  friend bool operator==(const DegreeDistribution&, const DegreeDistribution&) = default;

 private:
  explicit DegreeDistribution(Law law) : law_(law) {}
  Law law_;
};

inline double mean(const DegreeDistribution& dist) { return dist.mean(); }

inline double referral_expectation(const DegreeDistribution& dist, double p) {
  return dist.referral_expectation(p);
}

/// Zipf scale parameter whose mean zeta(a-1)/zeta(a) equals target_mean,
/// found by bisection on (2 + 1e-6, 50]. Requires target_mean > 1.
double zipf_alpha_for_mean(double target_mean);

}  // namespace refnet
