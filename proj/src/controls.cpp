#include "detbal/controls.hpp"

#include <algorithm>
#include <cmath>

namespace detbal {

TransitionMatrix metropolis_transition(const Distribution& base) {
  const std::size_t n = base.size();
  for (double v : base.weights) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("metropolis base must be strictly positive");
  }
  TransitionMatrix w(n, TransitionKind::density);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      w(x, y) = std::min(base.weights[x] / base.weights[y], 1.0);
    }
  }
  return w;
}

TransitionMatrix uniform_random_transition(std::size_t bins, Rng& rng) {
  if (bins < 2) throw InputError("need at least 2 bins");
  TransitionMatrix w(bins, TransitionKind::density);
  for (std::size_t x = 0; x < bins; ++x) {
    for (std::size_t y = 0; y < bins; ++y) w(x, y) = rng.uniform_open();
  }
  return w;
}

ReturnsSeries simulate_chain(const Distribution& base, const BinGrid& grid, std::size_t length, Rng& rng) {
  grid.validate();
  if (base.size() != grid.bins) throw InputError("base distribution does not match grid");
  if (length < 2) throw InputError("series too short");
  for (double v : base.weights) {
    if (!(v > 0.0)) throw InputError("simulation base must be strictly positive");
  }
  const auto centers = grid.centers();

  std::size_t state = grid.bins - 1;
  {
    const double target = rng.uniform() * base.sum();
    double acc = 0.0;
    for (std::size_t k = 0; k < grid.bins; ++k) {
      acc += base.weights[k];
      if (target < acc) {
        state = k;
        break;
      }
    }
  }

  ReturnsSeries out;
  out.values.reserve(length);
  out.values.push_back(centers[state]);
  while (out.values.size() < length) {
    const std::size_t proposal = rng.below(grid.bins);
    const double ratio = base.weights[proposal] / base.weights[state];
    if (ratio >= 1.0 || rng.uniform() < ratio) state = proposal;
    out.values.push_back(centers[state]);
  }
  return out;
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"uniform", "two_point", "fat_tail"};
  return names;
}

Distribution fixture(std::string_view name, const BinGrid& grid) {
  grid.validate();
  const std::size_t n = grid.bins;
  Distribution d{std::vector<double>(n, 0.0)};
  if (name == "uniform") {
    std::fill(d.weights.begin(), d.weights.end(), 1.0);
  } else if (name == "two_point") {
    if (n < 3) throw InputError("two_point fixture needs at least 3 bins");
    const std::size_t lo = (3 * n) / 10;
    const std::size_t hi = (3 * n) / 4;
    std::fill(d.weights.begin(), d.weights.end(), 0.20 / static_cast<double>(n - 2));
    d.weights[lo] = 0.35;
    d.weights[hi] = 0.45;
  } else if (name == "fat_tail") {
    for (std::size_t k = 0; k < n; ++k) {
      d.weights[k] = std::exp(-std::pow(std::abs(grid.center(k)) / 0.004, 0.8));
    }
  } else {
    std::string list;
    for (const auto& f : fixture_names()) list += (list.empty() ? "" : ", ") + f;
    throw InputError("unknown fixture '" + std::string(name) + "'; available: " + list);
  }
  return d.normalized();
}

}  // namespace detbal
