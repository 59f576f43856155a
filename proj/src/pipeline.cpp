#include "detbal/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "detbal/action.hpp"
#include "detbal/controls.hpp"
#include "detbal/io.hpp"
#include "detbal/random.hpp"

namespace detbal {

namespace {

constexpr double kSimulationOrigin = 1000.0;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string join_seeds(const MultiStartResult& r) {
  std::string s;
  for (const auto& c : r.chains) s += (s.empty() ? "" : ",") + std::to_string(c.seed);
  return s;
}

Metadata common_metadata(const Analysis& a) {
  const auto& c = a.config;
  Metadata m{
      {"source", std::string(to_string(c.source))},
      {"profile", std::string(to_string(c.profile))},
      {"grid", "[" + format_double(c.grid.lower) + ", " + format_double(c.grid.upper) + ") bins=" +
                   std::to_string(c.grid.bins) + " width=" + format_double(c.grid.width())},
      {"bin_convention", "half-open [lo, hi); values outside [lower, upper) dropped"},
      {"matrix_convention", "W(x,y): row x = destination bin, column y = source bin"},
  };
  if (c.source == Source::input) m.emplace_back("input", c.input.string());
  if (c.source == Source::metropolis) m.emplace_back("base_fixture", c.fixture);
  if (a.matrix_seed) m.emplace_back("matrix_seed", std::to_string(*a.matrix_seed));
  return m;
}

Metadata with(Metadata m, std::initializer_list<std::pair<std::string, std::string>> extra) {
  m.insert(m.end(), extra.begin(), extra.end());
  return m;
}

void write_summary(std::ostream& out, const Analysis& a) {
  const auto& c = a.config;
  auto kv = [&out](const std::string& key, const std::string& value) { out << key << " = " << value << '\n'; };
  for (const auto& [key, value] : common_metadata(a)) kv(key, value);
  kv("beta1", format_double(a.schedule.beta_start));
  kv("beta2", format_double(a.schedule.beta_end));
  kv("steps", std::to_string(a.schedule.steps));
  kv("rate_b", format_double(a.schedule.rate));
  kv("sweeps_per_temperature", std::to_string(c.anneal.sweeps_per_temperature));
  kv("epsilon", format_double(c.anneal.epsilon));
  kv("starts", std::to_string(c.anneal.starts));
  kv("master_seed", std::to_string(c.anneal.master_seed));
  kv("rng", "mt19937_64; chain k seed = splitmix64(master ^ splitmix64(k))");
  kv("stderr_estimator", "sample standard deviation across starts / sqrt(starts)");
  if (c.source == Source::input) {
    kv("price_rows", std::to_string(a.price_rows));
    kv("returns", std::to_string(a.returns));
  }
  kv("dropped_pairs", std::to_string(a.dropped_pairs));
  kv("transition_total", format_double(a.transitions.total()));
  std::string empty;
  for (auto y : a.normalization.empty_columns) empty += (empty.empty() ? "" : ",") + std::to_string(y);
  kv("empty_columns", empty.empty() ? "none" : empty);

  for (const auto& v : a.variants) {
    const auto& agg = v.result.aggregate;
    const auto& best = v.result.chains[agg.best_chain];
    const std::string p = v.name + ".";
    kv(p + "S_min", format_double(agg.min_s));
    kv(p + "ln_S_min", format_double(std::log(agg.min_s)));
    kv(p + "log10_S_min", format_double(std::log10(agg.min_s)));
    kv(p + "S_max", format_double(agg.max_s));
    kv(p + "S_spread", format_double(agg.max_s - agg.min_s));
    kv(p + "K", std::to_string(best.final_s.k_terms));
    kv(p + "best_chain", std::to_string(agg.best_chain));
    kv(p + "chain_seeds", join_seeds(v.result));
    std::string finals;
    for (const auto& ch : v.result.chains) finals += (finals.empty() ? "" : ",") + format_double(ch.final_s.s);
    kv(p + "chain_S", finals);
  }
}

}  // namespace

std::string_view to_string(Source s) {
  switch (s) {
    case Source::input: return "input";
    case Source::metropolis: return "metropolis";
    case Source::random: return "random";
    case Source::simulate: return "simulate";
  }
  return "?";
}

std::string_view to_string(Profile p) { return p == Profile::paper ? "paper" : "desk"; }

RunConfig profile_config(Profile profile) {
  RunConfig c;
  c.profile = profile;
  if (profile == Profile::paper) {
    c.steps = 800;
    c.anneal.sweeps_per_temperature = 1600;
    c.anneal.starts = 48;
  }
  return c;
}

const VariantOutcome& Analysis::variant(std::string_view name) const {
  for (const auto& v : variants) {
    if (v.name == name) return v;
  }
  throw std::out_of_range("no variant " + std::string(name));
}

Analysis analyze(const RunConfig& config) {
  config.grid.validate();
  config.anneal.validate();
  Analysis a;
  a.config = config;
  a.schedule = make_schedule(config.beta_start, config.beta_end, config.steps);

  switch (config.source) {
    case Source::input: {
      std::ifstream in(config.input);
      if (!in) throw InputError("cannot open input file " + config.input.string());
      const auto parsed = parse_price_csv(in, config.column);
      const auto returns = compute_returns(parsed.prices);
      a.price_rows = parsed.rows;
      a.returns = returns.size();
      a.marginal = marginal_histogram(returns, config.grid);
      auto counts = build_transitions(returns, config.grid);
      a.transitions = std::move(counts.counts);
      a.dropped_pairs = counts.dropped_pairs;
      break;
    }
    case Source::metropolis: {
      const auto base = fixture(config.fixture, config.grid);
      a.transitions = metropolis_transition(base);
      a.marginal = base;
      break;
    }
    case Source::random: {
      a.matrix_seed = mix64(config.anneal.master_seed);
      Rng rng(*a.matrix_seed);
      a.transitions = uniform_random_transition(config.grid.bins, rng);
      break;
    }
    case Source::simulate:
      throw InputError("simulate produces a price file; analyze it with --input");
  }

  const std::vector<double> ones(a.transitions.size(), 1.0);
  if (action(a.transitions, ones).degenerate()) {
    throw DegenerateError("no bin pair has transitions in either direction (K = 0)");
  }
  a.normalization = column_normalize(a.transitions);

  a.variants.push_back({"raw", a.transitions, {}});
  a.variants.push_back({"normalized", a.normalization.normalized, {}});
  for (auto& v : a.variants) v.result = anneal_multi(v.transitions, a.schedule, config.anneal);
  return a;
}

void write_artifacts(const Analysis& a) {
  const auto& dir = a.config.out_dir;
  const auto& grid = a.config.grid;
  std::filesystem::create_directories(dir);
  const auto meta = common_metadata(a);

  {
    auto out = open_out(dir / "transition_counts.tsv");
    write_matrix_tsv(out, a.transitions, grid,
                     with(meta, {{"kind", a.transitions.kind() == TransitionKind::counts ? "counts" : "density"},
                                 {"dropped_pairs", std::to_string(a.dropped_pairs)}}));
  }
  {
    auto out = open_out(dir / "transition_normalized.tsv");
    write_matrix_tsv(out, a.normalization.normalized, grid,
                     with(meta, {{"kind", "column-normalized density"}}));
  }
  if (a.marginal) {
    auto out = open_out(dir / "marginal_hist.tsv");
    write_distribution_tsv(
        out, *a.marginal, grid,
        with(meta, {{"content", a.config.source == Source::input ? "histogram of in-range returns"
                                                                 : "base distribution of the oracle"}}));
  }

  for (const auto& v : a.variants) {
    const auto sub = dir / v.name;
    std::filesystem::create_directories(sub);
    const auto vmeta = with(meta, {{"variant", v.name}});
    for (const auto& chain : v.result.chains) {
      auto out = open_out(sub / ("anneal_history_" + std::to_string(chain.chain) + ".tsv"));
      write_history_tsv(out, chain.history,
                        with(vmeta, {{"chain", std::to_string(chain.chain)},
                                     {"seed", std::to_string(chain.seed)},
                                     {"final_S", format_double(chain.final_s.s)}}));
    }
    {
      auto out = open_out(sub / "final_w.tsv");
      write_aggregate_tsv(out, v.result.aggregate, grid,
                          with(vmeta, {{"starts", std::to_string(v.result.chains.size())},
                                       {"stderr_estimator", "sample sd / sqrt(starts)"}}));
    }
    {
      const auto& best = v.result.chains[v.result.aggregate.best_chain];
      auto out = open_out(sub / "residuals.tsv");
      write_matrix_tsv(out, balance_residuals(v.transitions, best.final_w), grid,
                       with(vmeta, {{"content", "(a-b)/(a+b), a=W(x,y)w(y), b=W(y,x)w(x), best chain"},
                                    {"chain", std::to_string(best.chain)}}));
    }
  }

  auto out = open_out(dir / "summary.txt");
  write_summary(out, a);
}

Analysis run_analyze(const RunConfig& config) {
  auto a = analyze(config);
  write_artifacts(a);
  return a;
}

SimulationOutput run_simulate(const RunConfig& config) {
  config.grid.validate();
  const auto base = fixture(config.fixture, config.grid);
  if (config.length < 2) throw InputError("series too short");

  SimulationOutput result;
  result.seed = config.anneal.master_seed;
  Rng rng(result.seed);
  const auto returns = simulate_chain(base, config.grid, config.length, rng);
  const auto prices = reconstruct_prices(returns, kSimulationOrigin);
  result.prices = prices.size();

  std::filesystem::create_directories(config.out_dir);
  result.csv = config.out_dir / "prices.csv";
  result.metadata = config.out_dir / "prices.meta";
  {
    auto out = open_out(result.csv);
    write_price_csv(out, prices);
  }
  auto meta = open_out(result.metadata);
  write_metadata(meta, {{"generator", "metropolis chain over bin centres, uniform proposals"},
                        {"fixture", config.fixture},
                        {"grid", "[" + format_double(config.grid.lower) + ", " + format_double(config.grid.upper) +
                                     ") bins=" + std::to_string(config.grid.bins)},
                        {"returns", std::to_string(config.length)},
                        {"origin_price", format_double(kSimulationOrigin)},
                        {"seed", std::to_string(result.seed)},
                        {"rng", "mt19937_64"}});
  return result;
}

}  // namespace detbal
