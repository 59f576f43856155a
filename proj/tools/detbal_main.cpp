// detbal: test a price series for detailed balance in its returns dynamics.
//
//   detbal --input prices.csv [--column close] --out run/
//   detbal --control metropolis --base fat_tail --out run/
//   detbal --control random --seed 7 --out run/
//   detbal --simulate fat_tail --length 1000000 --out sim/
//
// Exit codes: 0 success, 2 input error, 3 degenerate transitions (K = 0).

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "detbal/controls.hpp"
#include "detbal/io.hpp"
#include "detbal/pipeline.hpp"

namespace {

constexpr int kInputError = 2;
constexpr int kDegenerate = 3;

void print_report(const detbal::Analysis& a) {
  using detbal::format_double;
  std::cout << "source: " << to_string(a.config.source) << "  profile: " << to_string(a.config.profile) << '\n';
  if (a.config.source == detbal::Source::input) {
    std::cout << "returns: " << a.returns << "  dropped pairs: " << a.dropped_pairs << '\n';
  }
  for (const auto& v : a.variants) {
    const auto& agg = v.result.aggregate;
    std::printf("%-10s S_min=%s  ln S=%.4f  log10 S=%.4f  spread=%s  K=%zu\n", v.name.c_str(),
                format_double(agg.min_s).c_str(), std::log(agg.min_s), std::log10(agg.min_s),
                format_double(agg.max_s - agg.min_s).c_str(), v.result.chains[agg.best_chain].final_s.k_terms);
  }
  std::cout << "artifacts: " << a.config.out_dir.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detailed-balance test for price time series"};

  std::string input, control, simulate, base = "fat_tail", column, profile = "desk", out = "detbal_out";
  std::optional<std::size_t> bins, steps, sweeps, starts, length;
  std::optional<double> beta1, beta2, epsilon;
  std::optional<std::uint64_t> seed;
  std::vector<double> range;
  std::size_t jobs = 1;

  auto* in_opt = app.add_option("--input", input, "price CSV/TSV file");
  auto* ctl_opt = app.add_option("--control", control, "synthetic transition density")
                      ->check(CLI::IsMember({"metropolis", "random"}));
  auto* sim_opt = app.add_option("--simulate", simulate, "write a simulated detailed-balance price series");
  in_opt->excludes(ctl_opt, sim_opt);
  ctl_opt->excludes(sim_opt);
  app.add_option("--base", base, "base fixture for --control metropolis");
  app.add_option("--column", column, "price column: zero-based index or header name (default 0)");
  app.add_option("--length", length, "number of simulated returns (default 1000000)");
  app.add_option("--bins", bins, "bin count N");
  app.add_option("--range", range, "return range LO HI")->expected(2);
  app.add_option("--beta1", beta1, "initial inverse temperature");
  app.add_option("--beta2", beta2, "final inverse temperature");
  app.add_option("--steps", steps, "temperature steps n");
  app.add_option("--sweeps", sweeps, "sweeps per temperature");
  app.add_option("--epsilon", epsilon, "relative proposal size");
  app.add_option("--starts", starts, "independent annealing starts");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--jobs", jobs, "worker threads (results do not depend on it)");
  app.add_option("--profile", profile, "parameter preset")->check(CLI::IsMember({"desk", "paper"}));
  app.add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kInputError;
  }

  const int selected = !input.empty() + !control.empty() + !simulate.empty();
  if (selected != 1) {
    std::cerr << "error: choose exactly one of --input, --control, --simulate\n";
    return kInputError;
  }

  auto config = detbal::profile_config(profile == "paper" ? detbal::Profile::paper : detbal::Profile::desk);
  if (!input.empty()) {
    config.source = detbal::Source::input;
    config.input = input;
    if (!column.empty()) {
      if (column.find_first_not_of("0123456789") == std::string::npos) {
        config.column = static_cast<std::size_t>(std::stoull(column));
      } else {
        config.column = column;
      }
    }
  } else if (!control.empty()) {
    config.source = control == "metropolis" ? detbal::Source::metropolis : detbal::Source::random;
    config.fixture = base;
  } else {
    config.source = detbal::Source::simulate;
    config.fixture = simulate;
  }
  if (bins) config.grid.bins = *bins;
  if (!range.empty()) {
    config.grid.lower = range[0];
    config.grid.upper = range[1];
  }
  if (beta1) config.beta_start = *beta1;
  if (beta2) config.beta_end = *beta2;
  if (steps) config.steps = *steps;
  if (sweeps) config.anneal.sweeps_per_temperature = *sweeps;
  if (epsilon) config.anneal.epsilon = *epsilon;
  if (starts) config.anneal.starts = *starts;
  if (seed) config.anneal.master_seed = *seed;
  if (length) config.length = *length;
  config.anneal.jobs = jobs;
  config.out_dir = out;

  try {
    if (config.source == detbal::Source::simulate) {
      const auto sim = detbal::run_simulate(config);
      std::cout << "wrote " << sim.prices << " prices to " << sim.csv.string() << " (seed " << sim.seed << ")\n";
    } else {
      print_report(detbal::run_analyze(config));
    }
  } catch (const detbal::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const detbal::DegenerateError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
