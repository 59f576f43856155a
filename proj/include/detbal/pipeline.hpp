#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "detbal/anneal.hpp"
#include "detbal/grid.hpp"
#include "detbal/series.hpp"

namespace detbal {

/// Every pair has W(x,y) + W(y,x) == 0, so S has no terms (K == 0).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Source { input, metropolis, random, simulate };
enum class Profile { desk, paper };

std::string_view to_string(Source s);
std::string_view to_string(Profile p);

struct RunConfig {
  Source source = Source::metropolis;
  std::filesystem::path input;
  ColumnSelector column = std::size_t{0};
  std::string fixture = "fat_tail";  // base for metropolis control and simulate
  std::size_t length = 1'000'000;    // simulated returns
  Profile profile = Profile::desk;
  BinGrid grid;
  double beta_start = 1e-2;
  double beta_end = 1e10;
  std::size_t steps = 200;
  AnnealConfig anneal{400, 1e-3, 8, 20100826, 1};
  std::filesystem::path out_dir = "detbal_out";
};

/// desk: 200 steps x 400 sweeps, 8 starts. paper: 800 x 1600, 48 starts.
/// Both: N = 25 on [-0.02, 0.02), beta 1e-2 .. 1e10, epsilon 1e-3.
RunConfig profile_config(Profile profile);

struct VariantOutcome {
  std::string name;  // "raw" (W as given) or "normalized" (column-stochastic W-hat)
  TransitionMatrix transitions;
  MultiStartResult result;
};

struct Analysis {
  RunConfig config;
  AnnealSchedule schedule;
  TransitionMatrix transitions;
  ColumnNormalization normalization;
  std::optional<Distribution> marginal;
  std::size_t price_rows = 0;
  std::size_t returns = 0;
  std::size_t dropped_pairs = 0;
  std::optional<std::uint64_t> matrix_seed;
  std::vector<VariantOutcome> variants;

  const VariantOutcome& variant(std::string_view name) const;
};

/// Builds W from the configured source and minimizes S against both W and
/// its column normalization. Writes nothing.
Analysis analyze(const RunConfig& config);

/// Writes every artifact of `analysis` into config.out_dir.
void write_artifacts(const Analysis& analysis);

Analysis run_analyze(const RunConfig& config);

struct SimulationOutput {
  std::filesystem::path csv;
  std::filesystem::path metadata;
  std::uint64_t seed = 0;
  std::size_t prices = 0;
};

/// Simulates a detailed-balance returns chain from the configured fixture
/// and writes it as prices (origin 1000) to out_dir/prices.csv, with the
/// parameters and seed in out_dir/prices.meta.
SimulationOutput run_simulate(const RunConfig& config);

}  // namespace detbal
