#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "detbal/anneal.hpp"
#include "detbal/grid.hpp"
#include "detbal/series.hpp"

namespace detbal {

/// Ordered "# key: value" lines written at the top of every artifact.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Shortest round-trip decimal form ("%.17g"); "inf", "-inf", "nan" otherwise.
std::string format_double(double v);

void write_metadata(std::ostream& out, const Metadata& meta);

/// Header row of N bin centres, then N rows (destination x) of N values
/// (source y).
void write_matrix_tsv(std::ostream& out, const SquareMatrix& m, const BinGrid& grid, const Metadata& meta);

/// Columns: j, beta, S.
void write_history_tsv(std::ostream& out, const std::vector<HistoryPoint>& history, const Metadata& meta);

/// Columns: bin_center, weight.
void write_distribution_tsv(std::ostream& out, const Distribution& d, const BinGrid& grid, const Metadata& meta);

/// Columns: bin_center, mean_w, stderr_w.
void write_aggregate_tsv(std::ostream& out, const AnnealAggregate& agg, const BinGrid& grid, const Metadata& meta);

/// Single "price" column with a header row; readable by parse_price_csv.
void write_price_csv(std::ostream& out, const PriceSeries& prices);

}  // namespace detbal
