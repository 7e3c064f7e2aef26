#pragma once

#include <span>
#include <vector>

#include "refnet/degree_dist.hpp"

namespace refnet {

/// Structural parameters. Defaults are the published monthly calibration.
struct ModelParams {
  double y = 1.0;        // output per filled job
  double b = 0.4;        // home production
  double r = 0.012;      // discount rate
  double delta = 0.036;  // job destruction rate
  double eta = 0.72;     // matching-function exponent on unemployment
  double gamma = 0.402;  // market matching efficiency
  double beta = 0.028;   // worker bargaining power
  double c = 7.188;      // vacancy posting cost
  double phi = 0.048;    // referral frequency
  int d_f = 16;          // job-network degree

  /// Throws DomainError when an invariant is violated.
  void validate() const;
};

struct GroupSpec {
  double size = 1e6;
  DegreeDistribution dist = DegreeDistribution::poisson(22.47);
};

struct GroupState {
  double u = 0.0;           // unemployment rate
  double P = 0.0;           // probability an arbitrary member holds vacancy information
  double p_market = 0.0;    // job arrival through the market
  double p_referral = 0.0;  // job arrival through referral
  double p_total = 0.0;
  double q = 0.0;           // arrival rate of this group's workers to a vacancy
  double S = 0.0;           // match surplus
  double w = 0.0;           // wage
  double W = 0.0;           // employed asset value
  double U = 0.0;           // unemployed asset value
  double J = 0.0;           // filled-job asset value
};

struct Equilibrium {
  std::vector<GroupState> groups;
  std::vector<double> sizes;  // L_i, aligned with groups
  double u = 0.0;             // aggregate unemployment rate
  double v = 0.0;             // vacancy rate
  double V = 0.0;             // vacant-job value, zero under free entry
  int iterations = 0;
  double residual = 0.0;      // max_i |u_i p_i - delta (1 - u_i)|
};

struct AssetValues {
  double W;
  double U;
  double J;
};

/// gamma (u / v)^(eta - 1); the per-worker rate of M(Lu, Lv) = gamma (Lu)^eta (Lv)^(1-eta).
double market_arrival(const ModelParams& params, double u, double v);

/// phi (1 - u_i) [1 - (1 - v / (1 - u + v))^d_f].
double info_probability(const ModelParams& params, double u_i, double u, double v);

double referral_arrival(const DegreeDistribution& dist, double P_i);

/// (y - b) / (r + delta + beta p_i).
double surplus(const ModelParams& params, double p_i);

/// y - (r + delta)(1 - beta) S_i.
double wage(const ModelParams& params, double S_i);

/// Vacancy rate implied by free entry and Nash bargaining at the given
/// group unemployment rates.
double vacancy_closure(const ModelParams& params, std::span<const GroupSpec> groups,
                       std::span<const double> u_vec);

/// Bellman values for workers and filled jobs with V = 0 imposed.
AssetValues value_functions(const ModelParams& params, double w_i, double p_i);

/// L-weighted mean of group unemployment rates.
double aggregate_unemployment(std::span<const GroupSpec> groups, std::span<const double> u_vec);

/// Total arrival rate p_i at a given state of the economy.
double arrival_rate(const ModelParams& params, const DegreeDistribution& dist, double u_i,
                    double u, double v);

/// r V = -c + sum_i q_i (J_i - V) solved for V at a populated equilibrium.
double vacant_job_value(const ModelParams& params, const Equilibrium& eq);

}  // namespace refnet
