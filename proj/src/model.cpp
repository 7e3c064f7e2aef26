#include "refnet/model.hpp"

#include <cmath>
#include <numeric>

#include "refnet/errors.hpp"

namespace refnet {

void ModelParams::validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!(finite(y) && finite(b) && finite(r) && finite(delta) && finite(eta) && finite(gamma) &&
        finite(beta) && finite(c) && finite(phi))) {
    throw DomainError("params: all parameters must be finite");
  }
  if (!(b > 0.0 && y > b)) throw DomainError("params: require y > b > 0");
  if (!(r > 0.0)) throw DomainError("params: require r > 0");
  if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("params: require 0 <= delta <= 1");
  if (!(eta > 0.0)) throw DomainError("params: require eta > 0");
  if (!(gamma >= 0.0)) throw DomainError("params: require gamma >= 0");
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("params: require 0 <= beta <= 1");
  if (!(c > 0.0)) throw DomainError("params: require c > 0");
  if (!(phi >= 0.0 && phi <= 1.0)) throw DomainError("params: require 0 <= phi <= 1");
  if (d_f < 0) throw DomainError("params: require d_f >= 0");
}

double market_arrival(const ModelParams& params, double u, double v) {
  if (!(u > 0.0) || !(v > 0.0)) {
    throw DomainError("market_arrival: u and v must be positive");
  }
  if (params.gamma == 0.0) return 0.0;
  return params.gamma * std::pow(u / v, params.eta - 1.0);
}

double info_probability(const ModelParams& params, double u_i, double u, double v) {
  if (!(u_i >= 0.0 && u_i <= 1.0) || !(u >= 0.0 && u <= 1.0) || !(v >= 0.0)) {
    throw DomainError("info_probability: rates out of range");
  }
  const double denom = 1.0 - u + v;
  if (!(denom > 0.0)) throw DomainError("info_probability: 1 - u + v must be positive");
  if (params.d_f == 0) return 0.0;
  const double all_filled = std::pow(1.0 - v / denom, params.d_f);
  return params.phi * (1.0 - u_i) * (1.0 - all_filled);
}

double referral_arrival(const DegreeDistribution& dist, double P_i) {
  return dist.referral_expectation(P_i);
}

double surplus(const ModelParams& params, double p_i) {
  if (!(p_i >= 0.0)) throw DomainError("surplus: arrival rate must be >= 0");
  return (params.y - params.b) / (params.r + params.delta + params.beta * p_i);
}

double wage(const ModelParams& params, double S_i) {
  return params.y - (params.r + params.delta) * (1.0 - params.beta) * S_i;
}

double vacancy_closure(const ModelParams& params, std::span<const GroupSpec> groups,
                       std::span<const double> u_vec) {
  if (groups.empty()) throw DomainError("vacancy_closure: no groups");
  if (groups.size() != u_vec.size()) throw DomainError("vacancy_closure: size mismatch");
  const double rd = params.r + params.delta;
  const double bd = params.beta * params.delta;
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const double ui = u_vec[i];
    const double li = groups[i].size;
    total += li;
    const double den = ui * rd + bd * (1.0 - ui);
    if (den > 0.0) weighted += ui * (1.0 - ui) * li / den;
  }
  return (params.y - params.b) * (1.0 - params.beta) * params.delta / (params.c * total) * weighted;
}

AssetValues value_functions(const ModelParams& params, double w_i, double p_i) {
  const double emp_den = params.r + params.delta + p_i;
  if (emp_den == 0.0) throw DomainError("value_functions: r + delta + p_i is zero");
  const double gap = (w_i - params.b) / emp_den;  // W - U
  const double U = (params.b + p_i * gap) / params.r;
  const double J = (params.y - w_i) / (params.r + params.delta);
  return {U + gap, U, J};
}

double aggregate_unemployment(std::span<const GroupSpec> groups, std::span<const double> u_vec) {
  double total = 0.0;
  double unemployed = 0.0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    total += groups[i].size;
    unemployed += groups[i].size * u_vec[i];
  }
  return unemployed / total;
}

double arrival_rate(const ModelParams& params, const DegreeDistribution& dist, double u_i,
                    double u, double v) {
  return market_arrival(params, u, v) +
         referral_arrival(dist, info_probability(params, u_i, u, v));
}

double vacant_job_value(const ModelParams& params, const Equilibrium& eq) {
  const double total = std::accumulate(eq.sizes.begin(), eq.sizes.end(), 0.0);
  double flow = -params.c;
  for (std::size_t i = 0; i < eq.groups.size(); ++i) {
    const auto& g = eq.groups[i];
    flow += eq.sizes[i] * g.u * g.p_total / (total * eq.v) * g.J;
  }
  return flow / params.r;
}

}  // namespace refnet
