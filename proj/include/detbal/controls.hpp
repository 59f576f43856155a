#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "detbal/grid.hpp"
#include "detbal/random.hpp"
#include "detbal/series.hpp"

namespace detbal {

/// W(x,y) = min(base(x) / base(y), 1), diagonal 1. Satisfies
/// W(x,y) base(y) == W(y,x) base(x) for every pair. Throws InputError if any
/// base weight is not strictly positive.
TransitionMatrix metropolis_transition(const Distribution& base);

/// Independent uniform entries on (0, 1), diagonal included.
TransitionMatrix uniform_random_transition(std::size_t bins, Rng& rng);

/// Metropolis chain over bin centers: from bin y propose x uniformly among
/// all bins and accept with probability min(base(x) / base(y), 1). The first
/// state is drawn from base. Emits `length` return values.
ReturnsSeries simulate_chain(const Distribution& base, const BinGrid& grid, std::size_t length, Rng& rng);

/// Named base distributions over a grid:
///   uniform   - equal weights
///   two_point - 0.35 and 0.45 on two off-centre bins, the remaining 0.20
///               spread evenly over the other bins
///   fat_tail  - exp(-(|c| / 0.004)^0.8) at bin centre c, normalized
Distribution fixture(std::string_view name, const BinGrid& grid);
const std::vector<std::string>& fixture_names();

}  // namespace detbal
