#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "detbal/grid.hpp"

namespace detbal {

/// S[w] together with the number K of pairs x < y that contributed.
/// K == 0 means every pair had W(x,y)w(y) + W(y,x)w(x) == 0; s is then 0.
struct ActionValue {
  double s = 0.0;
  std::size_t k_terms = 0;

  bool degenerate() const { return k_terms == 0; }
};

class StaleCacheError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Signed relative violation (a - b) / (a + b) of one pair, or 0 when
/// a + b == 0. `included` reports whether the pair enters the sum.
inline double pair_residual(double a, double b, bool& included) {
  const double denom = a + b;
  included = denom > 0.0;
  return included ? (a - b) / denom : 0.0;
}

/// Mean over contributing pairs x < y of ((a - b) / (a + b))^2 with
/// a = W(x,y) w(y) and b = W(y,x) w(x). The diagonal never contributes.
ActionValue action(const TransitionMatrix& transitions, std::span<const double> weights);

/// Antisymmetric matrix of pair residuals; entry (x,y) uses a = W(x,y) w(y).
SquareMatrix balance_residuals(const TransitionMatrix& transitions, std::span<const double> weights);

/// max_y |w(y) - sum_x W(y,x) w(x)| for a column-stochastic W.
double fixed_point_residual(const TransitionMatrix& normalized, std::span<const double> weights);

/// Per-pair terms of S for one configuration, so that changing a single
/// weight costs O(N) instead of O(N^2). The cache keeps a reference to the
/// transition matrix, which must outlive it. One cache per annealing chain.
class PairTermCache {
 public:
  struct Proposal {
    ActionValue value;  // action after the change
    double delta = 0.0; // value.s - current s
  };

  PairTermCache(const TransitionMatrix& transitions, std::vector<double> weights);

  const TransitionMatrix& transitions() const { return *transitions_; }
  std::span<const double> weights() const { return weights_; }
  ActionValue value() const;

  /// Evaluates replacing weight x by new_weight. Nothing changes until commit().
  Proposal propose(std::size_t x, double new_weight);
  void commit();

  /// Multiplies every weight by factor > 0. Terms are scale-invariant and kept.
  void rescale(double factor);
  /// Recomputes every term and the running total from scratch.
  void refresh();

  /// Hash of the transition matrix and current weights, used to detect a
  /// cache that no longer describes the caller's (W, w).
  std::uint64_t fingerprint() const;
  static std::uint64_t fingerprint(const TransitionMatrix& transitions, std::span<const double> weights);

 private:
  double term(std::size_t x, std::size_t y, double wx, double wy, bool& included) const;

  const TransitionMatrix* transitions_;
  std::vector<double> weights_;
  SquareMatrix terms_;                 // squared residuals, symmetric
  std::vector<unsigned char> included_; // row-major pair mask, symmetric
  double total_ = 0.0;
  std::size_t k_ = 0;
  std::uint64_t transitions_hash_ = 0;

  bool pending_ = false;
  std::size_t pending_x_ = 0;
  double pending_weight_ = 0.0;
  double pending_dsum_ = 0.0;
  std::size_t pending_k_ = 0;
  std::vector<double> pending_terms_;
  std::vector<unsigned char> pending_included_;
};

/// Action after setting w(x) = new_weight, computed from `cache`. Throws
/// StaleCacheError if the cache was built for a different (W, w).
ActionValue action_delta(const TransitionMatrix& transitions, std::span<const double> weights, std::size_t x,
                         double new_weight, PairTermCache& cache);

}  // namespace detbal
