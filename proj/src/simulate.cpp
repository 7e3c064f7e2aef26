#include "refnet/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <variant>

#include "refnet/errors.hpp"

namespace refnet {

namespace {

constexpr int kParityRedraws = 1000;

long sample_zipf(double alpha, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double am1 = alpha - 1.0;
  const double b = std::pow(2.0, am1);
  for (;;) {
    const double u = 1.0 - unit(rng);  // (0, 1]
    const double v = unit(rng);
    const double x = std::floor(std::pow(u, -1.0 / am1));
    if (x > static_cast<double>(kMaxSampledDegree)) continue;
    const double t = std::pow(1.0 + 1.0 / x, am1);
    if (v * x * (t - 1.0) / (b - 1.0) <= t / b) return static_cast<long>(x);
  }
}

std::mt19937_64 block_stream(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return std::mt19937_64(seq);
}

std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

long sample_degree(const DegreeDistribution& dist, std::mt19937_64& rng) {
  const auto& law = dist.law();
  if (const auto* p = std::get_if<Poisson>(&law)) {
    std::poisson_distribution<long> draw(p->lambda);
    return draw(rng);
  }
  if (const auto* d = std::get_if<Degenerate>(&law)) return d->k;
  return sample_zipf(std::get<Zipf>(law).alpha, rng);
}

Network build_configuration_network(const DegreeDistribution& dist, std::size_t n,
                                    std::uint64_t seed) {
  if (n < 2) throw DomainError("build_configuration_network: need at least two nodes");
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw DomainError("build_configuration_network: too many nodes");
  }
  std::mt19937_64 rng(seed);
  std::vector<long> degrees(n);
  for (auto& d : degrees) d = sample_degree(dist, rng);
  long total = std::accumulate(degrees.begin(), degrees.end(), 0L);
  for (int redraw = 0; total % 2 != 0 && redraw < kParityRedraws; ++redraw) {
    total -= degrees.back();
    degrees.back() = sample_degree(dist, rng);
    total += degrees.back();
  }
  // Odd regular degree on an odd node count: no redraw can fix the parity.
  if (total % 2 != 0) {
    ++degrees.back();
    ++total;
  }

  std::vector<std::uint32_t> stubs;
  stubs.reserve(static_cast<std::size_t>(total));
  for (std::size_t i = 0; i < n; ++i) {
    stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[i]), static_cast<std::uint32_t>(i));
  }
  std::shuffle(stubs.begin(), stubs.end(), rng);

  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] = offsets[i] + static_cast<std::size_t>(degrees[i]);
  std::vector<std::uint32_t> targets(static_cast<std::size_t>(total));
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (std::size_t e = 0; e + 1 < stubs.size(); e += 2) {
    const auto a = stubs[e];
    const auto b = stubs[e + 1];
    targets[fill[a]++] = b;
    targets[fill[b]++] = a;
  }
  return Network(std::move(offsets), std::move(targets));
}

ReferralEstimate estimate_referral_rate(const Network& network, const SimConfig& config,
                                        const ReferralContext& context) {
  if (config.n_trials == 0) throw DomainError("estimate_referral_rate: n_trials must be > 0");
  if (network.size() == 0) throw DomainError("estimate_referral_rate: empty network");
  if (!(context.u_i > 0.0)) {
    throw DomainError("estimate_referral_rate: no unemployed focal candidates (u_i = 0)");
  }
  if (!(context.u_i <= 1.0 && context.phi >= 0.0 && context.phi <= 1.0)) {
    throw DomainError("estimate_referral_rate: context out of range");
  }
  const double denom = 1.0 - context.u + context.v;
  if (!(denom > 0.0)) throw DomainError("estimate_referral_rate: 1 - u + v must be positive");
  const double vacancy_share = context.v / denom;
  const double employed_prob = 1.0 - context.u_i;

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, network.size() - 1);

  std::size_t successes = 0;
  std::vector<std::uint32_t> contacts;
  const std::size_t blocks = (config.n_trials + kTrialBlock - 1) / kTrialBlock;
  for (std::size_t block = 0; block < blocks; ++block) {
    auto rng = block_stream(config.seed, block);
    const std::size_t begin = block * kTrialBlock;
    const std::size_t end = std::min(config.n_trials, begin + kTrialBlock);
    for (std::size_t trial = begin; trial < end; ++trial) {
      const auto focal = static_cast<std::uint32_t>(pick(rng));
      const auto nbrs = network.neighbours(focal);
      contacts.assign(nbrs.begin(), nbrs.end());
      std::sort(contacts.begin(), contacts.end());
      contacts.erase(std::unique(contacts.begin(), contacts.end()), contacts.end());
      bool informed = false;
      for (const auto contact : contacts) {
        if (contact == focal) continue;  // the focal worker is unemployed
        if (unit(rng) >= employed_prob) continue;
        if (unit(rng) >= context.phi) continue;
        for (int job = 0; job < config.d_f; ++job) {
          if (unit(rng) < vacancy_share) {
            informed = true;
            break;
          }
        }
        if (informed) break;
      }
      successes += informed ? 1 : 0;
    }
  }
  ReferralEstimate est;
  est.trials = config.n_trials;
  est.successes = successes;
  est.rate = static_cast<double>(successes) / static_cast<double>(config.n_trials);
  est.std_error = std::sqrt(est.rate * (1.0 - est.rate) / static_cast<double>(config.n_trials));
  return est;
}

ReferralEstimate estimate_referral_rate(const SimConfig& config, const ReferralContext& context) {
  const auto network = build_configuration_network(config.dist, config.n_workers, config.seed);
  return estimate_referral_rate(network, config, context);
}

std::vector<DegreeClass> simulate_cross_section(const Network& network,
                                                const CrossSectionConfig& config) {
  const std::size_t n = network.size();
  if (n == 0) throw DomainError("simulate_cross_section: empty network");
  if (config.periods <= 0 || config.burn_in < 0) {
    throw DomainError("simulate_cross_section: periods must be positive");
  }
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double informed_prob =
      config.phi * (1.0 - std::pow(1.0 - config.vacancy_share, config.d_f));

  std::vector<char> employed(n, 1);
  std::vector<char> informed(n, 0);
  std::vector<double> unemployed_periods(n, 0.0);
  for (int t = 0; t < config.burn_in + config.periods; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      informed[i] = employed[i] && unit(rng) < informed_prob;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (employed[i]) {
        if (unit(rng) < config.delta) employed[i] = 0;
        continue;
      }
      bool hired = unit(rng) < config.p_market;
      if (!hired) {
        for (const auto j : network.neighbours(i)) {
          if (j != i && informed[j]) {
            hired = true;
            break;
          }
        }
      }
      if (hired) employed[i] = 1;
    }
    if (t >= config.burn_in) {
      for (std::size_t i = 0; i < n; ++i) unemployed_periods[i] += employed[i] ? 0.0 : 1.0;
    }
  }

  std::map<std::size_t, std::pair<std::size_t, double>> by_degree;
  for (std::size_t i = 0; i < n; ++i) {
    auto& slot = by_degree[network.degree(i)];
    slot.first += 1;
    slot.second += unemployed_periods[i];
  }
  std::vector<DegreeClass> out;
  for (const auto& [degree, acc] : by_degree) {
    out.push_back({degree, acc.first,
                   acc.second / (static_cast<double>(acc.first) * config.periods)});
  }
  return out;
}

double degree_unemployment_rank_correlation(std::span<const DegreeClass> classes,
                                            std::size_t min_nodes) {
  std::vector<double> degrees;
  std::vector<double> rates;
  for (const auto& c : classes) {
    if (c.nodes >= min_nodes) {
      degrees.push_back(static_cast<double>(c.degree));
      rates.push_back(c.unemployment);
    }
  }
  if (degrees.size() < 3) throw DomainError("rank correlation: fewer than three degree classes");
  const auto rd = average_ranks(degrees);
  const auto ru = average_ranks(rates);
  const double m = 0.5 * static_cast<double>(rd.size() - 1);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rd.size(); ++i) {
    sxy += (rd[i] - m) * (ru[i] - m);
    sxx += (rd[i] - m) * (rd[i] - m);
    syy += (ru[i] - m) * (ru[i] - m);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace refnet
