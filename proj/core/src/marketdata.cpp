#include "tweetarx/marketdata.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace tweetarx {

namespace {

constexpr const char* kHeader = "Date,Open,High,Low,Close,Adj Close,Volume";

bool parse_double(const std::string& field, double& out) {
  if (field.empty()) return false;
  const char* begin = field.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + field.size() && std::isfinite(out);
}

bool parse_volume(const std::string& field, std::int64_t& out) {
  if (field.empty()) return false;
  const char* begin = field.c_str();
  char* end = nullptr;
  out = std::strtoll(begin, &end, 10);
  return end == begin + field.size();
}

}  // namespace

PriceParseResult parse_price_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw PriceFormatError("empty price file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw PriceFormatError("unexpected price header: " + line);

  PriceParseResult result;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string date_s, open_s, high_s, low_s, close_s, adj_s, volume_s;
    if (!std::getline(fields, date_s, ',') || !std::getline(fields, open_s, ',') ||
        !std::getline(fields, high_s, ',') || !std::getline(fields, low_s, ',') ||
        !std::getline(fields, close_s, ',') || !std::getline(fields, adj_s, ',') ||
        !std::getline(fields, volume_s)) {
      throw PriceFormatError("bad price row at line " + std::to_string(lineno));
    }
    auto date = try_parse_date(date_s);
    if (!date) throw PriceFormatError("bad date at line " + std::to_string(lineno));
    PriceBar bar;
    bar.date = *date;
    if (!parse_double(open_s, bar.open) || !parse_double(high_s, bar.high) ||
        !parse_double(low_s, bar.low) || !parse_double(close_s, bar.close) ||
        !parse_double(adj_s, bar.adj_close) || !parse_volume(volume_s, bar.volume)) {
      ++result.skipped;
      continue;
    }
    if (!result.bars.empty() && bar.date <= result.bars.back().date) {
      throw PriceOrderingError("non-increasing date " + format_date(bar.date) + " at line " +
                               std::to_string(lineno));
    }
    result.bars.push_back(bar);
  }
  return result;
}

ReturnSeries log_returns(std::span<const PriceBar> bars) {
  if (bars.size() < 2) throw std::invalid_argument("log_returns needs at least 2 bars");
  for (const PriceBar& bar : bars) {
    if (!(bar.adj_close > 0.0)) {
      throw std::domain_error("nonpositive adjusted close on " + format_date(bar.date));
    }
  }
  ReturnSeries series;
  series.reserve(bars.size() - 1);
  for (std::size_t i = 1; i < bars.size(); ++i) {
    series.push_back({bars[i].date, std::log(bars[i].adj_close) - std::log(bars[i - 1].adj_close)});
  }
  return series;
}

void write_returns_csv(std::ostream& out, const ReturnSeries& series) {
  out << "date,log_return\n";
  char buf[64];
  for (const ReturnPoint& p : series) {
    std::snprintf(buf, sizeof(buf), "%.15g", p.log_return);
    out << format_date(p.date) << ',' << buf << '\n';
  }
}

ReturnSeries read_returns_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty returns CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "date,log_return") throw std::runtime_error("unexpected returns header: " + line);
  ReturnSeries series;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("bad returns row at line " + std::to_string(lineno));
    ReturnPoint p;
    p.date = parse_date(line.substr(0, comma));
    std::string value = line.substr(comma + 1);
    double r = 0.0;
    if (!parse_double(value, r))
      throw std::runtime_error("bad return value at line " + std::to_string(lineno));
    p.log_return = r;
    if (!series.empty() && p.date <= series.back().date)
      throw std::runtime_error("non-increasing date at line " + std::to_string(lineno));
    series.push_back(p);
  }
  return series;
}

}  // namespace tweetarx
