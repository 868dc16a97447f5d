#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tweetarx/config.hpp"
#include "tweetarx/pipeline.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::string keyword;
  std::string match_mode;
  std::string window;
  std::string regime_date;
  std::string out;
  std::string signal;
  std::string seed;
  std::string workers;
  std::string pacf_maxlag;
  std::vector<std::string> lags;
  std::vector<std::string> tweets;
  std::vector<std::string> prices;
  bool strict = false;
  bool originals_only = false;
  bool weekdays = false;
};

void add_common_options(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config_path, "Config file (TOML subset)");
  cmd->add_option("--keyword", flags.keyword, "Keyword to count");
  cmd->add_option("--match-mode", flags.match_mode, "exact|prefix|substring")
      ->check(CLI::IsMember({"exact", "prefix", "substring"}));
  cmd->add_option("--window", flags.window, "Collection window START:END (YYYY-MM-DD)");
  cmd->add_option("--regime-date", flags.regime_date, "First regime=1 date (YYYY-MM-DD)");
  cmd->add_option("--lags", flags.lags, "Lag set override, INDEX=1,7 (repeatable)");
  cmd->add_option("--seed", flags.seed, "Generator seed");
  cmd->add_option("--out", flags.out, "Output directory");
  cmd->add_option("--tweets", flags.tweets, "Tweet NDJSON glob (repeatable)");
  cmd->add_option("--prices", flags.prices, "Price CSV, INDEX=PATH (repeatable)");
  cmd->add_option("--signal", flags.signal, "Daily-signal CSV path");
  cmd->add_option("--workers", flags.workers, "Ingestion worker threads (0 = hardware)");
  cmd->add_option("--pacf-maxlag", flags.pacf_maxlag, "Maximum PACF lag");
  cmd->add_flag("--strict", flags.strict, "Fail on the first malformed tweet line");
  cmd->add_flag("--originals-only", flags.originals_only, "Drop retweets during ingestion");
  cmd->add_flag("--weekdays", flags.weekdays, "Add Monday-Thursday dummies to the baseline");
}

std::uint64_t parse_u64(const std::string& value, const char* flag) {
  try {
    std::size_t pos = 0;
    std::uint64_t parsed = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw tweetarx::ConfigError(std::string(flag) + ": bad integer " + value);
  }
}

tweetarx::RunConfig make_config(const Flags& flags) {
  using tweetarx::ConfigError;
  tweetarx::RunConfig config =
      flags.config_path.empty() ? tweetarx::RunConfig{} : tweetarx::load_config(flags.config_path);

  if (!flags.keyword.empty()) config.keyword = flags.keyword;
  if (!flags.match_mode.empty()) config.match_mode = tweetarx::parse_match_mode(flags.match_mode);
  if (!flags.window.empty()) {
    std::size_t sep = flags.window.find(':');
    if (sep == std::string::npos) throw ConfigError("--window expects START:END");
    auto start = tweetarx::try_parse_date(flags.window.substr(0, sep));
    auto end = tweetarx::try_parse_date(flags.window.substr(sep + 1));
    if (!start || !end) throw ConfigError("--window: bad date in " + flags.window);
    if (*end < *start) throw ConfigError("--window: end before start");
    config.window = {*start, *end};
  }
  if (!flags.regime_date.empty()) {
    auto date = tweetarx::try_parse_date(flags.regime_date);
    if (!date) throw ConfigError("--regime-date: bad date " + flags.regime_date);
    config.regime_date = *date;
  }
  for (const std::string& entry : flags.lags) {
    auto [index, lag_set] = tweetarx::parse_lags_flag(entry);
    bool replaced = false;
    for (auto& [name, lags] : config.lag_sets) {
      if (name == index) {
        lags = lag_set;
        replaced = true;
        break;
      }
    }
    if (!replaced) config.lag_sets.emplace_back(index, lag_set);
  }
  for (const std::string& entry : flags.prices) {
    std::size_t eq = entry.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("--prices expects INDEX=PATH (got " + entry + ")");
    std::string index = entry.substr(0, eq);
    std::string path = entry.substr(eq + 1);
    bool replaced = false;
    for (auto& [name, existing] : config.price_files) {
      if (name == index) {
        existing = path;
        replaced = true;
        break;
      }
    }
    if (!replaced) config.price_files.emplace_back(std::move(index), std::move(path));
  }
  if (!flags.tweets.empty()) config.tweet_globs = flags.tweets;
  if (!flags.seed.empty()) config.seed = parse_u64(flags.seed, "--seed");
  if (!flags.out.empty()) config.output_dir = flags.out;
  if (!flags.signal.empty()) config.signal_file = flags.signal;
  if (!flags.workers.empty())
    config.workers = static_cast<unsigned>(parse_u64(flags.workers, "--workers"));
  if (!flags.pacf_maxlag.empty()) {
    config.pacf_maxlag = static_cast<int>(parse_u64(flags.pacf_maxlag, "--pacf-maxlag"));
    if (config.pacf_maxlag < 1) throw ConfigError("--pacf-maxlag must be >= 1");
  }
  if (flags.strict) config.strict = true;
  if (flags.originals_only) config.originals_only = true;
  if (flags.weekdays) config.weekdays = true;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tweetarx: daily keyword-share AR-X pipeline"};
  app.require_subcommand(1);
  Flags flags;

  CLI::App* ingest_tweets = app.add_subcommand(
      "ingest-tweets", "Aggregate tweet NDJSON dumps into a daily keyword-share CSV");
  CLI::App* ingest_prices =
      app.add_subcommand("ingest-prices", "Convert price CSVs into log-return CSVs");
  CLI::App* build = app.add_subcommand(
      "build", "Align signal and returns into regression samples with descriptive stats");
  CLI::App* fit =
      app.add_subcommand("fit", "Fit the per-index AR-X models and write report tables");
  CLI::App* robustness =
      app.add_subcommand("robustness", "Run the weekday, trailing-window, and subsample checks");
  CLI::App* report =
      app.add_subcommand("report", "Run build, fit, and robustness in one pass");
  CLI::App* synth =
      app.add_subcommand("synth", "Generate synthetic fixtures with known coefficients");
  for (CLI::App* cmd :
       {ingest_tweets, ingest_prices, build, fit, robustness, report, synth}) {
    add_common_options(cmd, flags);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    tweetarx::RunConfig config = make_config(flags);
    std::vector<std::string> artifacts;
    if (ingest_tweets->parsed()) {
      artifacts = tweetarx::cmd_ingest_tweets(config);
    } else if (ingest_prices->parsed()) {
      artifacts = tweetarx::cmd_ingest_prices(config);
    } else if (build->parsed()) {
      artifacts = tweetarx::cmd_build(config);
    } else if (fit->parsed()) {
      artifacts = tweetarx::cmd_fit(config);
    } else if (robustness->parsed()) {
      artifacts = tweetarx::cmd_robustness(config);
    } else if (report->parsed()) {
      artifacts = tweetarx::cmd_report(config);
    } else if (synth->parsed()) {
      artifacts = tweetarx::cmd_synth(config);
    }
    for (const std::string& artifact : artifacts) std::cout << artifact << '\n';
    return 0;
  } catch (const tweetarx::StageError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "[cli] error: " << e.what() << '\n';
    return 2;
  }
}
