#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "detbal/series.hpp"

namespace detbal {

/// Uniform discretization of the returns axis into half-open bins
/// [lower + k*width, lower + (k+1)*width), k = 0..bins-1. Bin indices are
/// zero-based throughout the library.
struct BinGrid {
  double lower = -0.02;
  double upper = 0.02;
  std::size_t bins = 25;

  double width() const { return (upper - lower) / static_cast<double>(bins); }
  double center(std::size_t k) const { return lower + (static_cast<double>(k) + 0.5) * width(); }
  std::vector<double> centers() const;

  /// Throws InputError unless lower < upper, both finite, and bins >= 2.
  void validate() const;
};

/// Dense row-major N x N matrix of doubles.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }
  double& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  std::span<const double> data() const { return data_; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

enum class TransitionKind { counts, density };

/// W(x, y): weight of moving to destination bin x from source bin y, so
/// W(x, y) is stored at row x, column y and columns index the current state.
class TransitionMatrix : public SquareMatrix {
 public:
  TransitionMatrix() = default;
  TransitionMatrix(std::size_t n, TransitionKind kind) : SquareMatrix(n), kind_(kind) {}

  TransitionKind kind() const { return kind_; }
  double total() const;

 private:
  TransitionKind kind_ = TransitionKind::counts;
};

/// Nonnegative weights over bins. `weights` need not sum to one unless the
/// producer says so; normalized() returns the simplex projection.
struct Distribution {
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  double sum() const;
  Distribution normalized() const;
};

std::optional<std::size_t> bin_index(double r, const BinGrid& grid);

struct TransitionCounts {
  TransitionMatrix counts;
  std::size_t dropped_pairs = 0;
};

/// Counts consecutive pairs (r(i), r(i+1)) as W(bin(r(i+1)), bin(r(i))).
/// Pairs with either member outside the grid are dropped.
TransitionCounts build_transitions(const ReturnsSeries& returns, const BinGrid& grid);

struct ColumnNormalization {
  TransitionMatrix normalized;          // kind density; nonzero columns sum to 1
  std::vector<double> column_sums;      // C(y)
  std::vector<std::size_t> empty_columns;
};

ColumnNormalization column_normalize(const TransitionMatrix& w);

/// Histogram of in-range returns, normalized to sum 1. Throws InputError if
/// no return falls inside the grid.
Distribution marginal_histogram(const ReturnsSeries& returns, const BinGrid& grid);

}  // namespace detbal
