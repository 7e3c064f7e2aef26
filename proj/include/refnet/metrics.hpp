#pragma once

#include <span>
#include <vector>

#include "refnet/model.hpp"

namespace refnet {

/// Population over which the Gini coefficient is taken.
enum class GiniBase {
  Group,       // one point per group at its expected income u b + (1 - u) w
  Individual,  // employed and unemployed members of each group separately
};

struct WelfareReport {
  double gini = 0.0;
  double social_welfare = 0.0;
  std::vector<double> group_incomes;
};

/// sum_i [y (1 - u_i) + b u_i] L_i / L - c v.
double social_welfare(const ModelParams& params, const Equilibrium& eq);

/// Weighted mean absolute difference over twice the weighted mean.
/// Weights need not be normalised.
double weighted_gini(std::span<const double> incomes, std::span<const double> weights);

/// Expected income per worker in each group.
std::vector<double> group_incomes(const ModelParams& params, const Equilibrium& eq);

double gini(const ModelParams& params, const Equilibrium& eq, GiniBase base = GiniBase::Group);

WelfareReport welfare_report(const ModelParams& params, const Equilibrium& eq,
                             GiniBase base = GiniBase::Group);

}  // namespace refnet
