#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace tweetarx {

using Date = std::chrono::sys_days;
using Timestamp = std::chrono::sys_seconds;

/// Parses "YYYY-MM-DD". Throws std::invalid_argument on malformed input.
Date parse_date(std::string_view text);
std::optional<Date> try_parse_date(std::string_view text);

std::string format_date(Date d);

/// Parses an ISO-8601 instant: "2020-02-01T12:34:56Z", a space separator
/// instead of 'T', optional fractional seconds (truncated), and a trailing
/// "Z", "+HH:MM", "+HHMM" or "+HH" designator. No designator means UTC.
std::optional<Timestamp> try_parse_timestamp(std::string_view text);
Timestamp parse_timestamp(std::string_view text);

std::chrono::weekday weekday_of(Date d);

/// Closed date interval.
struct DateRange {
  Date start{};
  Date end{};

  bool contains(Date d) const { return d >= start && d <= end; }
};

inline Date make_date(int year, unsigned month, unsigned day) {
  using namespace std::chrono;
  return sys_days{year_month_day{std::chrono::year{year}, std::chrono::month{month},
                                 std::chrono::day{day}}};
}

}  // namespace tweetarx
