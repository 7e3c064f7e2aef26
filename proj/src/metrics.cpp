#include "refnet/metrics.hpp"

#include <cmath>
#include <numeric>

#include "refnet/errors.hpp"

namespace refnet {

double social_welfare(const ModelParams& params, const Equilibrium& eq) {
  const double total = std::accumulate(eq.sizes.begin(), eq.sizes.end(), 0.0);
  double output = 0.0;
  for (std::size_t i = 0; i < eq.groups.size(); ++i) {
    const double ui = eq.groups[i].u;
    output += (params.y * (1.0 - ui) + params.b * ui) * eq.sizes[i] / total;
  }
  return output - params.c * eq.v;
}

double weighted_gini(std::span<const double> incomes, std::span<const double> weights) {
  if (incomes.size() != weights.size() || incomes.empty()) {
    throw DomainError("gini: incomes and weights must be non-empty and aligned");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw DomainError("gini: total weight must be positive");
  double mean = 0.0;
  for (std::size_t i = 0; i < incomes.size(); ++i) mean += weights[i] / total * incomes[i];
  if (mean == 0.0) throw DomainError("gini: all incomes are zero");
  double spread = 0.0;
  for (std::size_t i = 0; i < incomes.size(); ++i) {
    for (std::size_t j = 0; j < incomes.size(); ++j) {
      spread += weights[i] / total * weights[j] / total * std::abs(incomes[i] - incomes[j]);
    }
  }
  return spread / (2.0 * mean);
}

std::vector<double> group_incomes(const ModelParams& params, const Equilibrium& eq) {
  std::vector<double> out;
  out.reserve(eq.groups.size());
  for (const auto& g : eq.groups) out.push_back(g.u * params.b + (1.0 - g.u) * g.w);
  return out;
}

double gini(const ModelParams& params, const Equilibrium& eq, GiniBase base) {
  if (base == GiniBase::Group) {
    const auto incomes = group_incomes(params, eq);
    return weighted_gini(incomes, eq.sizes);
  }
  std::vector<double> incomes;
  std::vector<double> weights;
  for (std::size_t i = 0; i < eq.groups.size(); ++i) {
    const auto& g = eq.groups[i];
    incomes.push_back(g.w);
    weights.push_back(eq.sizes[i] * (1.0 - g.u));
    incomes.push_back(params.b);
    weights.push_back(eq.sizes[i] * g.u);
  }
  return weighted_gini(incomes, weights);
}

WelfareReport welfare_report(const ModelParams& params, const Equilibrium& eq, GiniBase base) {
  return {gini(params, eq, base), social_welfare(params, eq), group_incomes(params, eq)};
}

}  // namespace refnet
