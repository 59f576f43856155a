#include "detbal/anneal.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace detbal {

double AnnealSchedule::beta(std::size_t j) const {
  if (j == steps) return beta_end;
  return beta_start * std::exp(rate * static_cast<double>(j));
}

std::vector<double> AnnealSchedule::betas() const {
  std::vector<double> b(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j) b[j] = beta(j);
  return b;
}

AnnealSchedule make_schedule(double beta_start, double beta_end, std::size_t steps) {
  if (!(beta_start > 0.0) || !(beta_start < beta_end) || !std::isfinite(beta_end)) {
    throw InputError("schedule requires 0 < beta1 < beta2");
  }
  if (steps < 1) throw InputError("schedule requires at least one step");
  return {beta_start, beta_end, steps, std::log(beta_end / beta_start) / static_cast<double>(steps)};
}

void AnnealConfig::validate() const {
  if (sweeps_per_temperature < 1) throw InputError("sweeps per temperature must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  if (starts < 1) throw InputError("need at least one start");
}

Distribution random_start(std::size_t bins, Rng& rng) {
  Distribution d{std::vector<double>(bins)};
  for (double& v : d.weights) v = rng.uniform_open();
  return d.normalized();
}

AnnealResult anneal_one(const TransitionMatrix& transitions, const AnnealSchedule& schedule,
                        const AnnealConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);
  PairTermCache state(transitions, random_start(transitions.size(), rng).weights);

  AnnealResult result;
  result.seed = seed;
  result.history.reserve(schedule.steps + 1);
  for (std::size_t j = 0; j <= schedule.steps; ++j) {
    const double beta = schedule.beta(j);
    SweepStats total;
    for (std::size_t s = 0; s < config.sweeps_per_temperature; ++s) {
      const auto st = sweep(state, beta, config.epsilon, rng);
      total.proposed += st.proposed;
      total.accepted += st.accepted;
    }
    state.refresh();
    result.history.push_back(
        {beta, state.value().s, static_cast<double>(total.accepted) / static_cast<double>(total.proposed)});
  }
  result.final_w.assign(state.weights().begin(), state.weights().end());
  result.final_s = action(transitions, result.final_w);
  return result;
}

AnnealAggregate aggregate(const std::vector<AnnealResult>& chains) {
  AnnealAggregate agg;
  if (chains.empty()) return agg;
  const std::size_t n = chains.front().final_w.size();
  const double count = static_cast<double>(chains.size());
  agg.mean_w.assign(n, 0.0);
  agg.stderr_w.assign(n, 0.0);
  for (const auto& c : chains) {
    for (std::size_t x = 0; x < n; ++x) agg.mean_w[x] += c.final_w[x];
  }
  for (double& m : agg.mean_w) m /= count;
  if (chains.size() > 1) {
    for (std::size_t x = 0; x < n; ++x) {
      double ss = 0.0;
      for (const auto& c : chains) {
        const double d = c.final_w[x] - agg.mean_w[x];
        ss += d * d;
      }
      agg.stderr_w[x] = std::sqrt(ss / (count - 1.0)) / std::sqrt(count);
    }
  }
  agg.min_s = agg.max_s = chains.front().final_s.s;
  for (std::size_t k = 1; k < chains.size(); ++k) {
    const double s = chains[k].final_s.s;
    if (s < agg.min_s) {
      agg.min_s = s;
      agg.best_chain = k;
    }
    agg.max_s = std::max(agg.max_s, s);
  }
  return agg;
}

MultiStartResult anneal_multi(const TransitionMatrix& transitions, const AnnealSchedule& schedule,
                              const AnnealConfig& config) {
  config.validate();
  MultiStartResult out;
  out.chains.resize(config.starts);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < config.starts; k = next++) {
      try {
        out.chains[k] = anneal_one(transitions, schedule, config, chain_seed(config.master_seed, k));
        out.chains[k].chain = k;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t jobs = std::clamp<std::size_t>(config.jobs, 1, config.starts);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (std::size_t i = 0; i < jobs; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  out.aggregate = aggregate(out.chains);
  return out;
}

}  // namespace detbal
