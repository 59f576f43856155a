#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "detbal/action.hpp"
#include "detbal/grid.hpp"
#include "detbal/random.hpp"

namespace detbal {

/// Exponential cooling beta(j) = beta_start * exp(rate * j), j = 0..steps.
struct AnnealSchedule {
  double beta_start = 1e-2;
  double beta_end = 1e10;
  std::size_t steps = 800;
  double rate = 0.0;

  double beta(std::size_t j) const;
  std::vector<double> betas() const;
};

/// rate = ln(beta_end / beta_start) / steps. Throws InputError unless
/// 0 < beta_start < beta_end and steps >= 1.
AnnealSchedule make_schedule(double beta_start, double beta_end, std::size_t steps);

struct AnnealConfig {
  std::size_t sweeps_per_temperature = 1600;
  double epsilon = 1e-3;
  std::size_t starts = 48;
  std::uint64_t master_seed = 20100826;
  std::size_t jobs = 1;  // worker threads for anneal_multi; never affects results

  void validate() const;
};

struct HistoryPoint {
  double beta = 0.0;
  double s = 0.0;           // action after the last sweep at this beta
  double acceptance = 0.0;  // accepted / proposed over this temperature
};

struct AnnealResult {
  std::size_t chain = 0;
  std::uint64_t seed = 0;
  std::vector<double> final_w;  // normalized to sum 1
  ActionValue final_s;
  std::vector<HistoryPoint> history;  // steps + 1 entries
};

struct AnnealAggregate {
  std::vector<double> mean_w;
  std::vector<double> stderr_w;  // sample standard deviation / sqrt(starts); 0 for one start
  double min_s = 0.0;
  double max_s = 0.0;
  std::size_t best_chain = 0;
};

struct MultiStartResult {
  std::vector<AnnealResult> chains;  // ordered by chain index
  AnnealAggregate aggregate;
};

/// Strictly positive uniform draws normalized to sum 1.
Distribution random_start(std::size_t bins, Rng& rng);

struct SweepStats {
  std::size_t proposed = 0;
  std::size_t accepted = 0;
};

/// One Metropolis sweep. Each component x in order gets the proposal
/// w(x) * (1 + t * epsilon), t = 2u - 1, and is accepted when dS <= 0 or when
/// a second draw u' < exp(-beta * dS). The second draw is only taken when
/// dS > 0. Weights are renormalized to sum 1 once, after the last component;
/// S is invariant under rescaling so this does not affect any decision.
/// `uniform` must return doubles in [0, 1).
template <class UniformSource>
SweepStats sweep_with(PairTermCache& state, double beta, double epsilon, UniformSource&& uniform) {
  SweepStats stats;
  const std::size_t n = state.weights().size();
  for (std::size_t x = 0; x < n; ++x) {
    const double t = 2.0 * uniform() - 1.0;
    const double proposal = state.weights()[x] * (1.0 + t * epsilon);
    const auto p = state.propose(x, proposal);
    ++stats.proposed;
    if (p.delta <= 0.0 || uniform() < std::exp(-beta * p.delta)) {
      state.commit();
      ++stats.accepted;
    }
  }
  double sum = 0.0;
  for (double v : state.weights()) sum += v;
  state.rescale(1.0 / sum);
  return stats;
}

inline SweepStats sweep(PairTermCache& state, double beta, double epsilon, Rng& rng) {
  return sweep_with(state, beta, epsilon, [&rng] { return rng.uniform(); });
}

AnnealResult anneal_one(const TransitionMatrix& transitions, const AnnealSchedule& schedule,
                        const AnnealConfig& config, std::uint64_t seed);

/// Runs config.starts chains; chain k uses chain_seed(master_seed, k). Results
/// are identical for any value of config.jobs.
MultiStartResult anneal_multi(const TransitionMatrix& transitions, const AnnealSchedule& schedule,
                              const AnnealConfig& config);

AnnealAggregate aggregate(const std::vector<AnnealResult>& chains);

}  // namespace detbal
