#include "detbal/grid.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace detbal {

std::vector<double> BinGrid::centers() const {
  std::vector<double> c(bins);
  for (std::size_t k = 0; k < bins; ++k) c[k] = center(k);
  return c;
}

void BinGrid::validate() const {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
    throw InputError("invalid grid range: lower must be below upper");
  }
  if (bins < 2) throw InputError("invalid grid: need at least 2 bins");
}

double TransitionMatrix::total() const {
  const auto d = data();
  return std::accumulate(d.begin(), d.end(), 0.0);
}

double Distribution::sum() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

Distribution Distribution::normalized() const {
  Distribution out = *this;
  const double s = sum();
  if (s > 0.0) {
    for (double& v : out.weights) v /= s;
  }
  return out;
}

std::optional<std::size_t> bin_index(double r, const BinGrid& grid) {
  if (!(r >= grid.lower) || !(r < grid.upper)) return std::nullopt;
  auto k = static_cast<std::size_t>(std::floor((r - grid.lower) / grid.width()));
  // r < upper but rounding can push the quotient onto bins
  if (k >= grid.bins) k = grid.bins - 1;
  return k;
}

TransitionCounts build_transitions(const ReturnsSeries& returns, const BinGrid& grid) {
  grid.validate();
  if (returns.size() < 2) throw InputError("need at least 2 returns to form a transition");
  TransitionCounts out{TransitionMatrix(grid.bins, TransitionKind::counts), 0};

  auto source = bin_index(returns.values[0], grid);
  for (std::size_t i = 1; i < returns.size(); ++i) {
    const auto dest = bin_index(returns.values[i], grid);
    if (source && dest) {
      out.counts(*dest, *source) += 1.0;
    } else {
      ++out.dropped_pairs;
    }
    source = dest;
  }
  return out;
}

ColumnNormalization column_normalize(const TransitionMatrix& w) {
  const std::size_t n = w.size();
  ColumnNormalization out{TransitionMatrix(n, TransitionKind::density), std::vector<double>(n, 0.0), {}};
  for (std::size_t y = 0; y < n; ++y) {
    double c = 0.0;
    for (std::size_t x = 0; x < n; ++x) c += w(x, y);
    out.column_sums[y] = c;
    if (c > 0.0) {
      for (std::size_t x = 0; x < n; ++x) out.normalized(x, y) = w(x, y) / c;
    } else {
      out.empty_columns.push_back(y);
    }
  }
  return out;
}

Distribution marginal_histogram(const ReturnsSeries& returns, const BinGrid& grid) {
  grid.validate();
  Distribution d{std::vector<double>(grid.bins, 0.0)};
  std::size_t in_range = 0;
  for (double r : returns.values) {
    if (const auto k = bin_index(r, grid)) {
      d.weights[*k] += 1.0;
      ++in_range;
    }
  }
  if (in_range == 0) throw InputError("no returns fall inside the grid range");
  for (double& v : d.weights) v /= static_cast<double>(in_range);
  return d;
}

}  // namespace detbal
