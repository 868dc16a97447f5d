#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tweetarx/dates.hpp"

namespace tweetarx {

struct TweetRecord {
  Timestamp timestamp{};
  std::string text;
  bool is_retweet = false;
  std::string user_id;
};

enum class ParseMode { strict, lenient };

/// How a keyword is matched against a tweet. Tokens are the maximal runs of
/// alphanumeric characters of the lowercased text (bytes >= 0x80 are kept
/// inside tokens, so multi-byte UTF-8 sequences never split a token).
///   exact     - tokens equal to the keyword
///   prefix    - tokens starting with the keyword
///   substring - non-overlapping occurrences anywhere in the lowercased text
enum class MatchMode { exact, prefix, substring };

MatchMode parse_match_mode(std::string_view name);
std::string_view to_string(MatchMode mode);

/// Per-day keyword statistics. `share` is mention_count / tweet_count; it
/// counts occurrences, not tweets, so it can exceed 1. Undefined (0) when
/// tweet_count is 0.
struct DailySignal {
  Date date{};
  std::uint64_t mention_count = 0;
  std::uint64_t tweet_count = 0;
  double share = 0.0;
};

class TweetParseError : public std::runtime_error {
 public:
  TweetParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ParseStats {
  std::uint64_t records = 0;
  std::uint64_t malformed = 0;
  std::uint64_t bytes = 0;
};

/// Reads newline-delimited JSON tweets (fields created_at, text, is_retweet,
/// user_id) and feeds each well-formed record to `sink` in file order.
/// Lenient mode counts malformed lines and moves on; strict mode throws
/// TweetParseError with the 1-based line number of the first bad line.
ParseStats parse_tweet_stream(std::istream& in, ParseMode mode,
                              const std::function<void(TweetRecord&&)>& sink);

std::pair<std::vector<TweetRecord>, std::uint64_t> parse_tweet_records(std::istream& in,
                                                                       ParseMode mode);

std::string lowercase_ascii(std::string_view text);

/// True when the lowercased text contains any of the (lowercase) terms as a
/// substring.
bool contains_any_term(std::string_view text, std::span<const std::string> terms);

std::vector<TweetRecord> filter_by_terms(std::vector<TweetRecord> records,
                                         std::span<const std::string> terms);

/// Counts keyword hits in one text under the given match mode. The keyword
/// must be nonempty lowercase.
std::uint64_t count_keyword(std::string_view text, std::string_view keyword, MatchMode mode);

struct AggregateOptions {
  std::string keyword;
  MatchMode mode = MatchMode::exact;
  std::chrono::minutes day_offset{0};  // added to timestamps before bucketing
  bool originals_only = false;         // drop retweets entirely when set
};

/// (mention_count, tweet_count) partial sums keyed by calendar day.
using DailyCounts = std::map<Date, std::pair<std::uint64_t, std::uint64_t>>;

void accumulate(DailyCounts& counts, const TweetRecord& record, const AggregateOptions& opts);
void merge_counts(DailyCounts& into, const DailyCounts& from);
std::vector<DailySignal> to_signals(const DailyCounts& counts);

/// Buckets records into calendar days and computes per-day keyword shares.
/// Days with no records are absent from the output. The result depends only
/// on the multiset of records, not their order.
std::vector<DailySignal> aggregate_daily(std::span<const TweetRecord> records,
                                         const AggregateOptions& opts);

struct IngestResult {
  std::vector<DailySignal> signals;
  std::uint64_t files = 0;
  std::uint64_t records = 0;   // well-formed records read
  std::uint64_t kept = 0;      // records passing the term filter
  std::uint64_t malformed = 0;
  std::uint64_t bytes = 0;
  double seconds = 0.0;
};

/// Parses and aggregates a set of tweet dump files, sharding files across
/// `workers` threads. Per-day partial counts are merged by summation, so the
/// output is identical for any worker count.
IngestResult ingest_files(std::span<const std::string> paths,
                          std::span<const std::string> terms, const AggregateOptions& opts,
                          ParseMode mode, unsigned workers);

/// CSV with header date,mention_count,tweet_count,share; shares carry 10
/// significant digits.
void write_daily_csv(std::ostream& out, std::span<const DailySignal> signals);
std::vector<DailySignal> read_daily_csv(std::istream& in);

namespace detail {
// Hot-path variants that take already-lowercased text.
bool contains_any_lowered(std::string_view lowered, std::span<const std::string> terms);
std::uint64_t count_keyword_lowered(std::string_view lowered, std::string_view keyword,
                                    MatchMode mode);
}  // namespace detail

}  // namespace tweetarx
