#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tweetarx/corpus.hpp"
#include "tweetarx/dates.hpp"

namespace tweetarx {

/// Full run configuration. Defaults reproduce the baseline study layout:
/// keyword "stock" matched exactly inside the six-term corpus filter,
/// collection window 2020-02-01..2020-05-02, regime date 2020-01-20, lag
/// sets {1,7}/{1,7}/{1} for DJIA/SP500/NASDAQ.
struct RunConfig {
  std::vector<std::string> tweet_globs;
  std::string keyword = "stock";
  MatchMode match_mode = MatchMode::exact;
  std::vector<std::string> terms = {"coronavirus",      "coronaphobia",
                                    "coronavirusoutbreak", "covid-19",
                                    "coronavirusitaly", "coronavirusitalia"};
  std::vector<std::pair<std::string, std::string>> price_files;  // index -> path
  DateRange window{make_date(2020, 2, 1), make_date(2020, 5, 2)};
  Date regime_date = make_date(2020, 1, 20);
  std::vector<std::pair<std::string, std::vector<int>>> lag_sets = {
      {"DJIA", {1, 7}}, {"SP500", {1, 7}}, {"NASDAQ", {1}}};
  int pacf_maxlag = 30;
  std::uint64_t seed = 20200502;
  std::string output_dir = "out";
  std::string signal_file;  // defaults to <output_dir>/daily_signal.csv
  unsigned workers = 0;     // 0 = hardware concurrency
  int utc_offset_minutes = 0;
  bool originals_only = false;
  bool strict = false;
  bool weekdays = false;

  const std::vector<int>& lags_for(const std::string& index) const;
  std::string signal_path() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// TOML-subset parser: top-level `key = value` pairs plus [prices] (string
/// values) and [lags] (integer-array values) sections. Values may be quoted
/// strings, integers, booleans, dates (YYYY-MM-DD), or arrays of strings or
/// integers. `#` starts a comment.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

/// One `--lags INDEX=1,7` override.
std::pair<std::string, std::vector<int>> parse_lags_flag(const std::string& value);

/// Deterministic serialization of every field, used for hashing and echoed
/// into reports.
std::string canonical_config(const RunConfig& config);

/// FNV-1a 64-bit hash of the canonical form, as 16 hex digits.
std::string config_hash(const RunConfig& config);

std::uint64_t fnv1a64(std::string_view data);

/// Expands shell-style glob patterns to a sorted, deduplicated file list.
std::vector<std::string> expand_globs(std::span<const std::string> patterns);

}  // namespace tweetarx
