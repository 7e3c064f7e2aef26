#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "refnet/degree_dist.hpp"

namespace refnet {

/// Undirected multigraph in compressed adjacency form. A self-loop appears
/// twice in its node's list and a multi-edge once per copy, so
/// neighbours(i).size() is the configuration-model degree.
class Network {
 public:
  Network() = default;
  Network(std::vector<std::size_t> offsets, std::vector<std::uint32_t> targets)
      : offsets_(std::move(offsets)), targets_(std::move(targets)) {}

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t degree(std::size_t node) const { return offsets_[node + 1] - offsets_[node]; }
  std::span<const std::uint32_t> neighbours(std::size_t node) const {
    return {targets_.data() + offsets_[node], degree(node)};
  }
  std::size_t stub_count() const noexcept { return targets_.size(); }
  double mean_degree() const {
    return size() == 0 ? 0.0 : static_cast<double>(targets_.size()) / static_cast<double>(size());
  }

  friend bool operator==(const Network&, const Network&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> targets_;
};

/// Draws one degree. Zipf draws use Devroye's rejection sampler truncated at
/// kMaxSampledDegree.
long sample_degree(const DegreeDistribution& dist, std::mt19937_64& rng);

inline constexpr long kMaxSampledDegree = 100'000'000;

/// Configuration model: i.i.d. degrees, the last node redrawn while the stub
/// total is odd, then uniform stub matching. Self-loops and multi-edges kept.
Network build_configuration_network(const DegreeDistribution& dist, std::size_t n,
                                    std::uint64_t seed);

struct SimConfig {
  std::size_t n_workers = 100'000;
  std::uint64_t seed = 1;
  std::size_t n_trials = 100'000;
  DegreeDistribution dist = DegreeDistribution::poisson(22.47);
  int d_f = 16;
};

/// Labour-market state the snapshot is drawn from.
struct ReferralContext {
  double u_i = 0.044;
  double u = 0.044;
  double v = 0.04;
  double phi = 0.048;
};

struct ReferralEstimate {
  double rate = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
};

/// Snapshot estimate of the referral success probability of an unemployed
/// worker. Each trial picks a focal worker at random, marks each distinct
/// neighbour employed with probability 1 - u_i and, if employed, informed
/// when a phi-coin succeeds and at least one of its d_f adjacent jobs is
/// vacant (each with probability v / (1 - u + v)). Trials run in blocks of
/// kTrialBlock, each block on its own stream seeded from (seed, block).
ReferralEstimate estimate_referral_rate(const Network& network, const SimConfig& config,
                                        const ReferralContext& context);

/// Builds the network from config.seed and runs the snapshot estimate.
ReferralEstimate estimate_referral_rate(const SimConfig& config, const ReferralContext& context);

inline constexpr std::size_t kTrialBlock = 4096;

struct CrossSectionConfig {
  double p_market = 0.391;     // market job-finding probability per period
  double delta = 0.036;        // separation probability per period
  double phi = 0.048;
  double vacancy_share = 0.04016;
  int d_f = 16;
  int burn_in = 200;
  int periods = 400;
  std::uint64_t seed = 7;
};

struct DegreeClass {
  std::size_t degree = 0;
  std::size_t nodes = 0;
  double unemployment = 0.0;
};

/// Discrete-time employment dynamics on the network. Each period every
/// employed worker separates with probability delta; an unemployed worker is
/// hired through the market with probability p_market, or through referral
/// when some employed neighbour is informed that period. Returns the
/// time-averaged unemployment rate by degree, ascending in degree.
std::vector<DegreeClass> simulate_cross_section(const Network& network,
                                                const CrossSectionConfig& config);

/// Spearman rank correlation of (degree, unemployment) over classes with at
/// least min_nodes members, weighting every class equally.
double degree_unemployment_rank_correlation(std::span<const DegreeClass> classes,
                                            std::size_t min_nodes);

}  // namespace refnet
