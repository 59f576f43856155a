#include "detbal/io.hpp"

#include <cmath>
#include <cstdio>

namespace detbal {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_metadata(std::ostream& out, const Metadata& meta) {
  for (const auto& [key, value] : meta) out << "# " << key << ": " << value << '\n';
}

void write_matrix_tsv(std::ostream& out, const SquareMatrix& m, const BinGrid& grid, const Metadata& meta) {
  write_metadata(out, meta);
  const std::size_t n = m.size();
  for (std::size_t y = 0; y < n; ++y) out << (y ? "\t" : "") << format_double(grid.center(y));
  out << '\n';
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) out << (y ? "\t" : "") << format_double(m(x, y));
    out << '\n';
  }
}

void write_history_tsv(std::ostream& out, const std::vector<HistoryPoint>& history, const Metadata& meta) {
  write_metadata(out, meta);
  out << "j\tbeta\tS\n";
  for (std::size_t j = 0; j < history.size(); ++j) {
    out << j << '\t' << format_double(history[j].beta) << '\t' << format_double(history[j].s) << '\n';
  }
}

void write_distribution_tsv(std::ostream& out, const Distribution& d, const BinGrid& grid, const Metadata& meta) {
  write_metadata(out, meta);
  out << "bin_center\tweight\n";
  for (std::size_t k = 0; k < d.size(); ++k) {
    out << format_double(grid.center(k)) << '\t' << format_double(d.weights[k]) << '\n';
  }
}

void write_aggregate_tsv(std::ostream& out, const AnnealAggregate& agg, const BinGrid& grid, const Metadata& meta) {
  write_metadata(out, meta);
  out << "bin_center\tmean_w\tstderr_w\n";
  for (std::size_t k = 0; k < agg.mean_w.size(); ++k) {
    out << format_double(grid.center(k)) << '\t' << format_double(agg.mean_w[k]) << '\t'
        << format_double(agg.stderr_w[k]) << '\n';
  }
}

void write_price_csv(std::ostream& out, const PriceSeries& prices) {
  out << "price\n";
  for (double p : prices.quotes) out << format_double(p) << '\n';
}

}  // namespace detbal
