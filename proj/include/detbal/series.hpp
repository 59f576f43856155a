#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace detbal {

/// Raised for malformed or unusable user input (bad CSV rows, short series,
/// invalid parameters). The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered, strictly positive price quotes; quotes[0] is the origin price p(0).
struct PriceSeries {
  std::vector<double> quotes;

  double origin() const { return quotes.front(); }
  std::size_t size() const { return quotes.size(); }
};

/// Log-returns r(i) = ln(p(i) / p(i-1)), i = 1..m. values[0] holds r(1).
struct ReturnsSeries {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

/// Selects the price column either by zero-based index or by header name.
using ColumnSelector = std::variant<std::size_t, std::string>;

struct ParsedPrices {
  PriceSeries prices;
  std::size_t rows = 0;  // data rows consumed (header excluded)
  bool had_header = false;
};

/// Reads one price column from comma- or tab-separated text. The delimiter
/// is detected from the first non-empty line; a header row is recognised by a
/// non-numeric value in the selected column. Errors name the 1-based line.
ParsedPrices parse_price_csv(std::istream& source, const ColumnSelector& column = std::size_t{0});

ReturnsSeries compute_returns(const PriceSeries& prices);

/// Inverse of compute_returns: p(i) = p(i-1) * exp(r(i)) starting at origin.
PriceSeries reconstruct_prices(const ReturnsSeries& returns, double origin);

}  // namespace detbal
