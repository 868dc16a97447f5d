#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tweetarx/dates.hpp"

namespace tweetarx {

struct PriceBar {
  Date date{};
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
  double adj_close = 0.0;
  std::int64_t volume = 0;
};

struct ReturnPoint {
  Date date{};
  double log_return = 0.0;
};

using ReturnSeries = std::vector<ReturnPoint>;

class PriceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PriceOrderingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PriceParseResult {
  std::vector<PriceBar> bars;
  std::uint64_t skipped = 0;  // rows dropped for non-numeric price fields
};

/// Parses a Yahoo-format daily history (header
/// Date,Open,High,Low,Close,Adj Close,Volume). Rows with any non-numeric
/// price field ("null" placeholders) are skipped and counted. Throws
/// PriceFormatError on a bad header or row shape, PriceOrderingError when
/// kept dates fail to strictly increase.
PriceParseResult parse_price_csv(std::istream& in);

/// log-return series: element t is (date_t, ln(adj_t) - ln(adj_{t-1})) over
/// consecutive kept bars, so returns span any skipped-row gaps.
ReturnSeries log_returns(std::span<const PriceBar> bars);

/// CSV with header date,log_return; returns carry 15 significant digits.
void write_returns_csv(std::ostream& out, const ReturnSeries& series);
ReturnSeries read_returns_csv(std::istream& in);

}  // namespace tweetarx
