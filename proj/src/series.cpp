#include "detbal/series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace detbal {

namespace {

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n\"'";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    fields.push_back(trim(std::string_view(line).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return fields;
}

bool parse_double(const std::string& field, double& out) {
  if (field.empty()) return false;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

ParsedPrices parse_price_csv(std::istream& source, const ColumnSelector& column) {
  ParsedPrices out;
  std::string line;
  std::size_t line_no = 0;
  char delim = ',';
  bool first = true;
  std::size_t col = 0;

  while (std::getline(source, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (first) {
      delim = line.find('\t') != std::string::npos ? '\t' : ',';
    }
    const auto fields = split(line, delim);

    if (first) {
      first = false;
      if (const auto* name = std::get_if<std::string>(&column)) {
        const auto it = std::find(fields.begin(), fields.end(), *name);
        if (it == fields.end()) {
          throw InputError("line " + std::to_string(line_no) + ": no column named '" + *name + "'");
        }
        col = static_cast<std::size_t>(it - fields.begin());
        out.had_header = true;
        continue;
      }
      col = std::get<std::size_t>(column);
      double probe = 0.0;
      if (col < fields.size() && !parse_double(fields[col], probe)) {
        out.had_header = true;
        continue;
      }
    }

    if (col >= fields.size()) {
      throw InputError("line " + std::to_string(line_no) + ": missing price column " + std::to_string(col));
    }
    double value = 0.0;
    if (!parse_double(fields[col], value) || !std::isfinite(value)) {
      throw InputError("line " + std::to_string(line_no) + ": unparseable price '" + fields[col] + "'");
    }
    if (value <= 0.0) {
      throw InputError("line " + std::to_string(line_no) + ": non-positive price " + fields[col]);
    }
    out.prices.quotes.push_back(value);
  }

  out.rows = out.prices.quotes.size();
  if (out.rows < 2) throw InputError("series too short");
  return out;
}

ReturnsSeries compute_returns(const PriceSeries& prices) {
  if (prices.size() < 2) throw InputError("series too short");
  ReturnsSeries r;
  r.values.reserve(prices.size() - 1);
  for (std::size_t i = 1; i < prices.size(); ++i) {
    const double prev = prices.quotes[i - 1];
    const double cur = prices.quotes[i];
    if (!(prev > 0.0) || !(cur > 0.0)) {
      throw InputError("non-positive price at index " + std::to_string(prev > 0.0 ? i : i - 1));
    }
    r.values.push_back(std::log(cur / prev));
  }
  return r;
}

PriceSeries reconstruct_prices(const ReturnsSeries& returns, double origin) {
  if (!(origin > 0.0) || !std::isfinite(origin)) {
    throw InputError("origin price must be positive");
  }
  PriceSeries p;
  p.quotes.reserve(returns.size() + 1);
  p.quotes.push_back(origin);
  for (double r : returns.values) p.quotes.push_back(p.quotes.back() * std::exp(r));
  return p;
}

}  // namespace detbal
