#include "refnet/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "refnet/errors.hpp"

namespace refnet {

namespace {

constexpr double kEdge = 1e-9;           // inner bracket is [kEdge, 1 - kEdge]
constexpr double kNewtonWindow = 1e-4;   // try Newton once the residual is this small
constexpr double kDistinctTol = 1e-6;

double max_abs(std::span<const double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

// Residual of the reduced system, v eliminated through the closure.
std::vector<double> reduced_residual(const ModelParams& params, std::span<const GroupSpec> groups,
                                     std::span<const double> u_vec) {
  const double v = vacancy_closure(params, groups, u_vec);
  return flow_residual(params, groups, u_vec, v);
}

// Root of u_i p_i(u_i; u, v) = delta (1 - u_i) with aggregate u and v held fixed.
double solve_group(const ModelParams& params, const DegreeDistribution& dist, double u_bar,
                   double v) {
  const double market = market_arrival(params, u_bar, v);
  auto balance = [&](double x) {
    const double p = market + referral_arrival(dist, info_probability(params, x, u_bar, v));
    return x * p - params.delta * (1.0 - x);
  };
  const double lo = kEdge;
  const double hi = 1.0 - kEdge;
  const double f_lo = balance(lo);
  const double f_hi = balance(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    std::ostringstream msg;
    msg << "flow balance has no sign change on (" << lo << ", " << hi << ") for "
        << dist.describe() << " at u=" << u_bar << ", v=" << v;
    throw BracketingError(msg.str());
  }
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      balance, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(), max_iter);
  return 0.5 * (a + b);
}

// Dense solve of A x = rhs by Gaussian elimination with partial pivoting.
bool linear_solve(std::vector<double> a, std::vector<double>& rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row * n + col]) > std::abs(a[pivot * n + col])) pivot = row;
    }
    if (a[pivot * n + col] == 0.0) return false;
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[col * n + k], a[pivot * n + k]);
      std::swap(rhs[col], rhs[pivot]);
    }
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = a[row * n + col] / a[col * n + col];
      for (std::size_t k = col; k < n; ++k) a[row * n + k] -= f * a[col * n + k];
      rhs[row] -= f * rhs[col];
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    for (std::size_t k = col + 1; k < n; ++k) rhs[col] -= a[col * n + k] * rhs[k];
    rhs[col] /= a[col * n + col];
  }
  return true;
}

// One Newton step on the reduced system with a central-difference Jacobian.
// Returns false if the step leaves (0, 1) or does not reduce the residual.
bool newton_polish(const ModelParams& params, std::span<const GroupSpec> groups,
                   std::vector<double>& u_vec, double& residual) {
  const std::size_t n = u_vec.size();
  std::vector<double> f;
  try {
    f = reduced_residual(params, groups, u_vec);
  } catch (const DomainError&) {
    return false;
  }
  std::vector<double> jac(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    const double h = 1e-6 * u_vec[j];
    auto up = u_vec;
    auto dn = u_vec;
    up[j] += h;
    dn[j] -= h;
    const auto fu = reduced_residual(params, groups, up);
    const auto fd = reduced_residual(params, groups, dn);
    for (std::size_t i = 0; i < n; ++i) jac[i * n + j] = (fu[i] - fd[i]) / (2.0 * h);
  }
  auto step = f;
  if (!linear_solve(jac, step)) return false;
  auto trial = u_vec;
  for (std::size_t i = 0; i < n; ++i) {
    trial[i] -= step[i];
    if (!(trial[i] > kEdge && trial[i] < 1.0 - kEdge)) return false;
  }
  double trial_res = 0.0;
  try {
    trial_res = max_abs(reduced_residual(params, groups, trial));
  } catch (const DomainError&) {
    return false;
  }
  if (!(trial_res < residual)) return false;
  u_vec = std::move(trial);
  residual = trial_res;
  return true;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(residual_tol > 0.0)) throw DomainError("solver: residual_tol must be > 0");
  if (!(damping > 0.0 && damping <= 1.0)) throw DomainError("solver: damping must be in (0, 1]");
  if (!(initial_u > 0.0 && initial_u < 1.0)) throw DomainError("solver: initial_u must be in (0, 1)");
  if (max_outer_iters <= 0) throw DomainError("solver: max_outer_iters must be positive");
  if (multistart < 0) throw DomainError("solver: multistart must be >= 0");
}

std::vector<double> flow_residual(const ModelParams& params, std::span<const GroupSpec> groups,
                                  std::span<const double> u_vec, double v) {
  if (groups.size() != u_vec.size()) throw DomainError("flow_residual: size mismatch");
  const double u_bar = aggregate_unemployment(groups, u_vec);
  std::vector<double> out(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const double ui = u_vec[i];
    const double p = arrival_rate(params, groups[i].dist, ui, u_bar, v);
    out[i] = ui * p - params.delta * (1.0 - ui);
  }
  return out;
}

Equilibrium assemble_equilibrium(const ModelParams& params, std::span<const GroupSpec> groups,
                                 std::span<const double> u_vec, double v) {
  Equilibrium eq;
  eq.u = aggregate_unemployment(groups, u_vec);
  eq.v = v;
  double total = 0.0;
  for (const auto& g : groups) total += g.size;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    GroupState s;
    s.u = u_vec[i];
    s.P = info_probability(params, s.u, eq.u, v);
    s.p_market = market_arrival(params, eq.u, v);
    s.p_referral = referral_arrival(groups[i].dist, s.P);
    s.p_total = s.p_market + s.p_referral;
    s.q = groups[i].size * s.u * s.p_total / (total * v);
    s.S = surplus(params, s.p_total);
    s.w = wage(params, s.S);
    const auto values = value_functions(params, s.w, s.p_total);
    s.W = values.W;
    s.U = values.U;
    s.J = values.J;
    eq.groups.push_back(s);
    eq.sizes.push_back(groups[i].size);
  }
  eq.V = vacant_job_value(params, eq);
  eq.residual = max_abs(flow_residual(params, groups, u_vec, v));
  return eq;
}

Equilibrium solve_equilibrium_from(const ModelParams& params, std::span<const GroupSpec> groups,
                                   std::vector<double> u_vec, const SolverConfig& config) {
  params.validate();
  config.validate();
  if (groups.empty()) throw DomainError("solve_equilibrium: no groups");
  if (u_vec.size() != groups.size()) throw DomainError("solve_equilibrium: size mismatch");
  for (const auto& g : groups) {
    if (!(g.size > 0.0)) throw DomainError("solve_equilibrium: group size must be > 0");
  }

  double damping = config.damping;
  double prev_res = std::numeric_limits<double>::infinity();
  int rises = 0;
  double res = prev_res;
  double v = 0.0;
  for (int iter = 0; iter < config.max_outer_iters; ++iter) {
    v = vacancy_closure(params, groups, u_vec);
    res = max_abs(flow_residual(params, groups, u_vec, v));
    if (res < config.residual_tol) {
      auto eq = assemble_equilibrium(params, groups, u_vec, v);
      eq.iterations = iter;
      return eq;
    }
    if (res < kNewtonWindow && newton_polish(params, groups, u_vec, res)) {
      prev_res = res;
      rises = 0;
      continue;
    }
    rises = res > prev_res ? rises + 1 : 0;
    if (rises >= 2) {
      damping *= 0.5;
      rises = 0;
    }
    prev_res = res;

    const double u_bar = aggregate_unemployment(groups, u_vec);
    for (std::size_t i = 0; i < groups.size(); ++i) {
      const double target = solve_group(params, groups[i].dist, u_bar, v);
      u_vec[i] = (1.0 - damping) * u_vec[i] + damping * target;
    }
  }
  std::ostringstream msg;
  msg << "equilibrium not reached after " << config.max_outer_iters
      << " outer iterations, residual " << res;
  throw ConvergenceError(msg.str(), u_vec, v, res);
}

Equilibrium solve_equilibrium(const ModelParams& params, std::span<const GroupSpec> groups,
                              const SolverConfig& config) {
  return solve_equilibrium_from(params, groups,
                                std::vector<double>(groups.size(), config.initial_u), config);
}

std::vector<Equilibrium> solve_all(const ModelParams& params, std::span<const GroupSpec> groups,
                                   const SolverConfig& config) {
  std::vector<Equilibrium> found{solve_equilibrium(params, groups, config)};
  std::mt19937_64 rng(config.multistart_seed);
  std::uniform_real_distribution<double> draw(0.005, 0.5);
  for (int s = 0; s < config.multistart; ++s) {
    std::vector<double> start(groups.size());
    for (auto& x : start) x = draw(rng);
    Equilibrium eq;
    try {
      eq = solve_equilibrium_from(params, groups, start, config);
    } catch (const ConvergenceError&) {
      continue;
    } catch (const BracketingError&) {
      continue;
    }
    const bool seen = std::any_of(found.begin(), found.end(), [&](const Equilibrium& other) {
      for (std::size_t i = 0; i < groups.size(); ++i) {
        if (std::abs(other.groups[i].u - eq.groups[i].u) > kDistinctTol) return false;
      }
      return true;
    });
    if (!seen) found.push_back(std::move(eq));
  }
  return found;
}

}  // namespace refnet
