#include "tweetarx/dates.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace tweetarx {

namespace {

bool read_digits(std::string_view s, std::size_t pos, std::size_t count, int& out) {
  if (pos + count > s.size()) return false;
  int value = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  return true;
}

std::optional<Date> parse_ymd(std::string_view s) {
  int y = 0, m = 0, d = 0;
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (!read_digits(s, 0, 4, y) || !read_digits(s, 5, 2, m) || !read_digits(s, 8, 2, d))
    return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                        std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) return std::nullopt;
  return std::chrono::sys_days{ymd};
}

}  // namespace

std::optional<Date> try_parse_date(std::string_view text) { return parse_ymd(text); }

Date parse_date(std::string_view text) {
  if (auto d = parse_ymd(text)) return *d;
  throw std::invalid_argument("invalid date: '" + std::string(text) + "' (expected YYYY-MM-DD)");
}

std::string format_date(Date d) {
  const std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                unsigned(ymd.day()));
  return buf;
}

std::optional<Timestamp> try_parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  if (text.size() < 19) return std::nullopt;
  auto date = parse_ymd(text.substr(0, 10));
  if (!date) return std::nullopt;
  if (text[10] != 'T' && text[10] != 't' && text[10] != ' ') return std::nullopt;

  int hh = 0, mm = 0, ss = 0;
  if (text[13] != ':' || text[16] != ':') return std::nullopt;
  if (!read_digits(text, 11, 2, hh) || !read_digits(text, 14, 2, mm) ||
      !read_digits(text, 17, 2, ss))
    return std::nullopt;
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  if (ss == 60) ss = 59;  // fold leap seconds

  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::size_t digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      ++digits;
    }
    if (digits == 0) return std::nullopt;
  }

  int offset_min = 0;
  if (pos < text.size()) {
    const char c = text[pos];
    if (c == 'Z' || c == 'z') {
      ++pos;
    } else if (c == '+' || c == '-') {
      const int sign = c == '+' ? 1 : -1;
      ++pos;
      int oh = 0, om = 0;
      if (!read_digits(text, pos, 2, oh)) return std::nullopt;
      pos += 2;
      if (pos < text.size() && text[pos] == ':') ++pos;
      if (pos < text.size()) {
        if (!read_digits(text, pos, 2, om)) return std::nullopt;
        pos += 2;
      }
      if (oh > 23 || om > 59) return std::nullopt;
      offset_min = sign * (oh * 60 + om);
    } else {
      return std::nullopt;
    }
  }
  if (pos != text.size()) return std::nullopt;

  const auto local = *date + hours{hh} + minutes{mm} + seconds{ss};
  return Timestamp{local - minutes{offset_min}};
}

Timestamp parse_timestamp(std::string_view text) {
  if (auto t = try_parse_timestamp(text)) return *t;
  throw std::invalid_argument("invalid timestamp: '" + std::string(text) + "'");
}

std::chrono::weekday weekday_of(Date d) { return std::chrono::weekday{d}; }

}  // namespace tweetarx
