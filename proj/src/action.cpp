#include "detbal/action.hpp"

#include <cmath>
#include <algorithm>
#include <cstring>
#include <string>

namespace detbal {

namespace {

void require_size(const TransitionMatrix& t, std::size_t n) {
  if (t.size() != n) {
    throw std::invalid_argument("dimension mismatch: matrix is " + std::to_string(t.size()) + "x" +
                                std::to_string(t.size()) + ", distribution has " + std::to_string(n) + " bins");
  }
}

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv1a(std::span<const double> values, std::uint64_t h = kFnvOffset) {
  for (double v : values) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffu;
      h *= kFnvPrime;
    }
  }
  return h;
}

}  // namespace

ActionValue action(const TransitionMatrix& transitions, std::span<const double> weights) {
  const std::size_t n = weights.size();
  require_size(transitions, n);
  double sum = 0.0;
  std::size_t k = 0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      bool included = false;
      const double r = pair_residual(transitions(x, y) * weights[y], transitions(y, x) * weights[x], included);
      if (included) {
        sum += r * r;
        ++k;
      }
    }
  }
  return {k > 0 ? sum / static_cast<double>(k) : 0.0, k};
}

SquareMatrix balance_residuals(const TransitionMatrix& transitions, std::span<const double> weights) {
  const std::size_t n = weights.size();
  require_size(transitions, n);
  SquareMatrix out(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      bool included = false;
      const double r = pair_residual(transitions(x, y) * weights[y], transitions(y, x) * weights[x], included);
      out(x, y) = r;
      out(y, x) = -r;
    }
  }
  return out;
}

double fixed_point_residual(const TransitionMatrix& normalized, std::span<const double> weights) {
  const std::size_t n = weights.size();
  require_size(normalized, n);
  double worst = 0.0;
  for (std::size_t y = 0; y < n; ++y) {
    double image = 0.0;
    for (std::size_t x = 0; x < n; ++x) image += normalized(y, x) * weights[x];
    worst = std::max(worst, std::abs(weights[y] - image));
  }
  return worst;
}

PairTermCache::PairTermCache(const TransitionMatrix& transitions, std::vector<double> weights)
    : transitions_(&transitions),
      weights_(std::move(weights)),
      terms_(weights_.size()),
      included_(weights_.size() * weights_.size(), 0),
      transitions_hash_(fnv1a(transitions.data())),
      pending_terms_(weights_.size(), 0.0),
      pending_included_(weights_.size(), 0) {
  require_size(transitions, weights_.size());
  refresh();
}

double PairTermCache::term(std::size_t x, std::size_t y, double wx, double wy, bool& included) const {
  const auto& t = *transitions_;
  const double r = pair_residual(t(x, y) * wy, t(y, x) * wx, included);
  return r * r;
}

void PairTermCache::refresh() {
  const std::size_t n = weights_.size();
  total_ = 0.0;
  k_ = 0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      bool inc = false;
      const double v = term(x, y, weights_[x], weights_[y], inc);
      terms_(x, y) = terms_(y, x) = v;
      included_[x * n + y] = included_[y * n + x] = inc;
      if (inc) {
        total_ += v;
        ++k_;
      }
    }
  }
  pending_ = false;
}

ActionValue PairTermCache::value() const {
  return {k_ > 0 ? total_ / static_cast<double>(k_) : 0.0, k_};
}

PairTermCache::Proposal PairTermCache::propose(std::size_t x, double new_weight) {
  const std::size_t n = weights_.size();
  double dsum = 0.0;
  std::ptrdiff_t dk = 0;
  for (std::size_t y = 0; y < n; ++y) {
    if (y == x) continue;
    bool inc = false;
    const double v = term(x, y, new_weight, weights_[y], inc);
    pending_terms_[y] = v;
    pending_included_[y] = inc;
    const bool was = included_[x * n + y];
    dsum += (inc ? v : 0.0) - (was ? terms_(x, y) : 0.0);
    dk += static_cast<std::ptrdiff_t>(inc) - static_cast<std::ptrdiff_t>(was);
  }
  pending_ = true;
  pending_x_ = x;
  pending_weight_ = new_weight;
  pending_dsum_ = dsum;
  pending_k_ = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(k_) + dk);

  Proposal p;
  p.value = {pending_k_ > 0 ? (total_ + dsum) / static_cast<double>(pending_k_) : 0.0, pending_k_};
  // with K unchanged the local sum difference is the exact increment
  p.delta = (dk == 0 && k_ > 0) ? dsum / static_cast<double>(k_) : p.value.s - value().s;
  return p;
}

void PairTermCache::commit() {
  if (!pending_) return;
  const std::size_t n = weights_.size();
  const std::size_t x = pending_x_;
  for (std::size_t y = 0; y < n; ++y) {
    if (y == x) continue;
    terms_(x, y) = terms_(y, x) = pending_terms_[y];
    included_[x * n + y] = included_[y * n + x] = pending_included_[y];
  }
  weights_[x] = pending_weight_;
  total_ += pending_dsum_;
  k_ = pending_k_;
  pending_ = false;
}

void PairTermCache::rescale(double factor) {
  for (double& v : weights_) v *= factor;
  pending_ = false;
}

std::uint64_t PairTermCache::fingerprint() const { return fnv1a(weights_, transitions_hash_); }

std::uint64_t PairTermCache::fingerprint(const TransitionMatrix& transitions, std::span<const double> weights) {
  return fnv1a(weights, fnv1a(transitions.data()));
}

ActionValue action_delta(const TransitionMatrix& transitions, std::span<const double> weights, std::size_t x,
                         double new_weight, PairTermCache& cache) {
  require_size(transitions, weights.size());
  if (PairTermCache::fingerprint(transitions, weights) != cache.fingerprint()) {
    throw StaleCacheError("pair-term cache does not match the given transitions and weights");
  }
  if (x >= weights.size()) throw std::out_of_range("bin index out of range");
  return cache.propose(x, new_weight).value;
}

}  // namespace detbal
