#include "tweetarx/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "tweetarx/dataset.hpp"
#include "tweetarx/econometrics.hpp"
#include "tweetarx/marketdata.hpp"
#include "tweetarx/robustness.hpp"

namespace tweetarx {

namespace {

namespace fs = std::filesystem;

std::string path_join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir, const char* stage) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw StageError(stage, "cannot create directory " + dir + ": " + ec.message());
}

void write_file(const std::string& path, const std::string& content, const char* stage) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StageError(stage, "cannot write " + path);
  out << content;
  out.flush();
  if (!out) throw StageError(stage, "failed writing " + path);
}

std::vector<DailySignal> load_signal(const RunConfig& config, const char* stage) {
  const std::string path = config.signal_path();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StageError(stage, "cannot open daily signal file " + path);
  try {
    return read_daily_csv(in);
  } catch (const std::exception& e) {
    throw StageError(stage, path + ": " + e.what());
  }
}

struct IndexReturns {
  std::string index;
  ReturnSeries returns;
  std::uint64_t bars = 0;
  std::uint64_t skipped = 0;
};

std::vector<IndexReturns> load_returns(const RunConfig& config, const char* stage) {
  if (config.price_files.empty()) throw StageError(stage, "no price files configured");
  std::vector<IndexReturns> out;
  for (const auto& [index, path] : config.price_files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StageError(stage, "cannot open price file " + path + " for " + index);
    try {
      PriceParseResult parsed = parse_price_csv(in);
      IndexReturns entry;
      entry.index = index;
      entry.bars = parsed.bars.size();
      entry.skipped = parsed.skipped;
      entry.returns = log_returns(parsed.bars);
      out.push_back(std::move(entry));
    } catch (const std::exception& e) {
      throw StageError(stage, path + ": " + e.what());
    }
  }
  return out;
}

std::vector<std::pair<std::string, RegressionSample>> build_samples(const RunConfig& config,
                                                                    bool weekdays,
                                                                    const char* stage) {
  std::vector<DailySignal> signal = load_signal(config, stage);
  std::vector<IndexReturns> returns = load_returns(config, stage);
  std::vector<std::pair<std::string, RegressionSample>> samples;
  for (const IndexReturns& entry : returns) {
    try {
      samples.emplace_back(entry.index,
                           build_sample(entry.returns, signal, config.window,
                                        config.regime_date, weekdays, "log_return"));
    } catch (const std::exception& e) {
      throw StageError(stage, entry.index + ": " + e.what());
    }
  }
  return samples;
}

std::string hash_line(const RunConfig& config) {
  return "# config " + config_hash(config) + "\n";
}

nlohmann::json fit_to_json(const FitResult& fit) {
  return nlohmann::json::parse(fit_json(fit));
}

std::string pacf_csv(const PacfResult& result) {
  std::ostringstream out;
  out << "lag,pacf,band\n";
  char buf[96];
  for (std::size_t k = 0; k < result.values.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%zu,%.15g,%.15g\n", k + 1, result.values[k], result.band);
    out << buf;
  }
  return out.str();
}

struct SynthTruth {
  std::map<int, double> lag_coeffs;
  double share_beta;
  double regime_beta;
  double intercept;
  double noise_sd;
};

SynthTruth synth_truth_for(const std::string& index) {
  if (index == "SP500") return {{{1, -0.151}, {7, 0.104}}, -1.310, 0.0009, 0.0004, 0.0107};
  if (index == "NASDAQ") return {{{1, -0.127}}, -1.264, 0.0019, 0.0010, 0.0119};
  return {{{1, -0.148}, {7, 0.121}}, -1.268, 0.0004, 0.0004, 0.0106};
}

Date previous_trading_day(Date date) {
  Date d = date - std::chrono::days{1};
  while (!is_trading_day(d)) d -= std::chrono::days{1};
  return d;
}

std::string synth_prices_csv(Date first_day, std::span<const Date> dates,
                             std::span<const double> y) {
  std::ostringstream out;
  out << "Date,Open,High,Low,Close,Adj Close,Volume\n";
  char buf[160];
  double price = 100.0;
  auto emit = [&](Date date, double p) {
    std::snprintf(buf, sizeof(buf), "%s,%.12f,%.12f,%.12f,%.12f,%.12f,1000000\n",
                  format_date(date).c_str(), p, p, p, p, p);
    out << buf;
  };
  emit(first_day, price);
  for (std::size_t i = 0; i < dates.size(); ++i) {
    price *= std::exp(y[i]);
    emit(dates[i], price);
  }
  return out.str();
}

std::string synth_signal_csv(const RegressionSample& sample) {
  std::vector<DailySignal> signals;
  const std::vector<double>& share = sample.column("share");
  for (std::size_t i = 0; i < sample.rows(); ++i) {
    if (!sample.window.contains(sample.dates[i])) continue;
    DailySignal s;
    s.date = sample.dates[i];
    s.tweet_count = 10000000;
    s.mention_count = static_cast<std::uint64_t>(std::llround(share[i] * 1e7));
    s.share = static_cast<double>(s.mention_count) / static_cast<double>(s.tweet_count);
    signals.push_back(s);
  }
  std::ostringstream out;
  write_daily_csv(out, signals);
  return out.str();
}

std::string synth_config_toml(const RunConfig& config, const RegressionSample& sample) {
  std::ostringstream out;
  out << "keyword = \"" << config.keyword << "\"\n";
  out << "match_mode = \"" << to_string(config.match_mode) << "\"\n";
  out << "window_start = " << format_date(sample.window.start) << "\n";
  out << "window_end = " << format_date(sample.window.end) << "\n";
  out << "regime_date = " << format_date(sample.regime_date) << "\n";
  out << "pacf_maxlag = " << config.pacf_maxlag << "\n";
  out << "seed = " << config.seed << "\n";
  out << "output_dir = \"" << config.output_dir << "\"\n";
  out << "signal_file = \"" << path_join(config.output_dir, "daily_signal.csv") << "\"\n";
  out << "\n[prices]\n";
  for (const auto& [index, lags] : config.lag_sets) {
    out << index << " = \"" << path_join(config.output_dir, "prices_" + index + ".csv")
        << "\"\n";
  }
  out << "\n[lags]\n";
  for (const auto& [index, lags] : config.lag_sets) {
    out << index << " = [";
    for (std::size_t i = 0; i < lags.size(); ++i) out << (i ? ", " : "") << lags[i];
    out << "]\n";
  }
  return out.str();
}

}  // namespace

StageError::StageError(std::string stage, const std::string& message)
    : std::runtime_error("[" + stage + "] error: " + message), stage_(std::move(stage)) {}

std::vector<std::string> cmd_ingest_tweets(const RunConfig& config) {
  constexpr const char* kStage = "ingest-tweets";
  std::vector<std::string> files = expand_globs(config.tweet_globs);
  if (files.empty()) throw StageError(kStage, "no tweet files matched");
  ensure_dir(config.output_dir, kStage);
  {
    fs::path signal_parent = fs::path(config.signal_path()).parent_path();
    if (!signal_parent.empty()) ensure_dir(signal_parent.string(), kStage);
  }

  AggregateOptions opts;
  opts.keyword = config.keyword;
  opts.mode = config.match_mode;
  opts.day_offset = std::chrono::minutes{config.utc_offset_minutes};
  opts.originals_only = config.originals_only;
  unsigned workers = config.workers != 0 ? config.workers
                                         : std::max(1u, std::thread::hardware_concurrency());

  IngestResult result;
  try {
    result = ingest_files(files, config.terms, opts,
                          config.strict ? ParseMode::strict : ParseMode::lenient, workers);
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(kStage, e.what());
  }

  std::ostringstream csv;
  write_daily_csv(csv, result.signals);
  write_file(config.signal_path(), csv.str(), kStage);

  nlohmann::json log;
  log["config_hash"] = config_hash(config);
  log["files"] = files;
  log["records"] = result.records;
  log["kept"] = result.kept;
  log["malformed"] = result.malformed;
  log["bytes"] = result.bytes;
  log["days"] = result.signals.size();
  const std::string log_path = path_join(config.output_dir, "ingest_log.json");
  write_file(log_path, log.dump(2) + "\n", kStage);

  if (result.seconds > 0.0) {
    std::cerr << "[" << kStage << "] " << result.bytes << " bytes in " << result.seconds
              << " s (" << (static_cast<double>(result.bytes) / 1e6 / result.seconds)
              << " MB/s)\n";
  }
  return {config.signal_path(), log_path};
}

std::vector<std::string> cmd_ingest_prices(const RunConfig& config) {
  constexpr const char* kStage = "ingest-prices";
  ensure_dir(config.output_dir, kStage);
  std::vector<IndexReturns> inputs = load_returns(config, kStage);
  std::vector<std::string> artifacts;
  nlohmann::json log;
  log["config_hash"] = config_hash(config);
  nlohmann::json series = nlohmann::json::array();
  for (const IndexReturns& entry : inputs) {
    std::ostringstream csv;
    write_returns_csv(csv, entry.returns);
    const std::string path = path_join(config.output_dir, "returns_" + entry.index + ".csv");
    write_file(path, csv.str(), kStage);
    artifacts.push_back(path);
    series.push_back({{"index", entry.index},
                      {"bars", entry.bars},
                      {"skipped", entry.skipped},
                      {"returns", entry.returns.size()}});
  }
  log["series"] = std::move(series);
  const std::string log_path = path_join(config.output_dir, "prices_log.json");
  write_file(log_path, log.dump(2) + "\n", kStage);
  artifacts.push_back(log_path);
  return artifacts;
}

std::vector<std::string> cmd_build(const RunConfig& config) {
  constexpr const char* kStage = "build";
  ensure_dir(config.output_dir, kStage);
  auto samples = build_samples(config, config.weekdays, kStage);

  std::vector<std::string> artifacts;
  std::ostringstream stats_text;
  stats_text << hash_line(config);
  nlohmann::json stats_json;
  stats_json["config_hash"] = config_hash(config);
  nlohmann::json per_index = nlohmann::json::array();

  for (const auto& [index, sample] : samples) {
    std::ostringstream csv;
    write_sample_csv(csv, sample);
    const std::string sample_path = path_join(config.output_dir, "sample_" + index + ".csv");
    write_file(sample_path, csv.str(), kStage);
    artifacts.push_back(sample_path);

    const std::string meta_path = path_join(config.output_dir, "sample_" + index + ".json");
    write_file(meta_path, sample_metadata_json(sample), kStage);
    artifacts.push_back(meta_path);

    std::ostringstream figure;
    emit_figure_data(figure, sample);
    const std::string figure_path = path_join(config.output_dir, "figure_" + index + ".csv");
    write_file(figure_path, figure.str(), kStage);
    artifacts.push_back(figure_path);

    DescriptiveStats stats = describe(sample);
    stats_text << "\n" << index << " (" << sample.rows() << " trading days)\n";
    stats_text << format_stats_table(stats);
    nlohmann::json vars = nlohmann::json::array();
    for (const VariableStats& v : stats) {
      vars.push_back({{"variable", v.name},
                      {"count", v.count},
                      {"mean", v.mean},
                      {"std_dev", v.std_dev},
                      {"min", v.min},
                      {"max", v.max}});
    }
    per_index.push_back({{"index", index}, {"rows", sample.rows()}, {"variables", vars}});
  }
  stats_json["indices"] = std::move(per_index);

  const std::string stats_path = path_join(config.output_dir, "descriptive_stats.txt");
  write_file(stats_path, stats_text.str(), kStage);
  artifacts.push_back(stats_path);
  const std::string stats_json_path = path_join(config.output_dir, "descriptive_stats.json");
  write_file(stats_json_path, stats_json.dump(2) + "\n", kStage);
  artifacts.push_back(stats_json_path);
  return artifacts;
}

std::vector<std::string> cmd_fit(const RunConfig& config) {
  constexpr const char* kStage = "fit";
  ensure_dir(config.output_dir, kStage);
  auto samples = build_samples(config, config.weekdays, kStage);

  std::vector<std::string> exog = {"share", "regime"};
  if (config.weekdays) {
    exog.insert(exog.end(), {"mon", "tue", "wed", "thu"});
  }

  struct PerIndex {
    FitResult fit;
    PacfResult pacf_result;
    bool has_pacf = false;
    double share_effect = 0.0;
  };
  std::vector<std::future<PerIndex>> futures;
  for (const auto& [index, sample] : samples) {
    const RegressionSample& sample_ref = sample;
    const std::string& index_ref = index;
    futures.push_back(std::async(std::launch::async, [&config, &exog, &sample_ref,
                                                      &index_ref] {
      PerIndex out;
      try {
        const std::size_t n = sample_ref.rows();
        int maxlag = std::min<int>(config.pacf_maxlag,
                                   static_cast<int>(n / 2) - 1);
        if (maxlag >= 1) {
          out.pacf_result = pacf(sample_ref.y, maxlag);
          out.has_pacf = true;
        }
        ModelSpec spec;
        spec.lag_set = config.lags_for(index_ref);
        spec.exog_names = exog;
        out.fit = fit_arx(sample_ref, spec);
        out.share_effect = standardized_effect(out.fit, sample_ref, "share");
      } catch (const std::exception& e) {
        throw StageError("fit", index_ref + ": " + e.what());
      }
      return out;
    }));
  }

  std::vector<std::string> artifacts;
  std::vector<FitResult> fits;
  std::vector<std::string> titles;
  std::ostringstream effects;
  effects << hash_line(config);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    PerIndex result = futures[i].get();
    const std::string& index = samples[i].first;
    if (result.has_pacf) {
      const std::string pacf_path = path_join(config.output_dir, "pacf_" + index + ".csv");
      write_file(pacf_path, pacf_csv(result.pacf_result), kStage);
      artifacts.push_back(pacf_path);
    }
    nlohmann::json j;
    j["config_hash"] = config_hash(config);
    j["index"] = index;
    j["fit"] = fit_to_json(result.fit);
    j["standardized_share_effect"] = result.share_effect;
    const std::string fit_path = path_join(config.output_dir, "fit_" + index + ".json");
    write_file(fit_path, j.dump(2) + "\n", kStage);
    artifacts.push_back(fit_path);

    char line[160];
    std::snprintf(line, sizeof(line),
                  "%s: a one-sd increase in share moves log_return by %.2f%% of one sd\n",
                  index.c_str(), 100.0 * result.share_effect);
    effects << line;
    fits.push_back(std::move(result.fit));
    titles.push_back(index);
  }

  const std::string table_path = path_join(config.output_dir, "table2.txt");
  write_file(table_path, hash_line(config) + fit_table(fits, titles), kStage);
  artifacts.push_back(table_path);
  const std::string effects_path = path_join(config.output_dir, "standardized_effects.txt");
  write_file(effects_path, effects.str(), kStage);
  artifacts.push_back(effects_path);
  return artifacts;
}

std::vector<std::string> cmd_robustness(const RunConfig& config) {
  constexpr const char* kStage = "robustness";
  ensure_dir(config.output_dir, kStage);
  auto samples = build_samples(config, true, kStage);

  std::vector<IndexData> data;
  for (auto& [index, sample] : samples) {
    data.push_back({index, std::move(sample), config.lags_for(index)});
  }

  std::vector<std::string> artifacts;
  auto emit = [&](const RobustnessReport& report, const std::string& basename) {
    const std::string text_path = path_join(config.output_dir, basename + ".txt");
    write_file(text_path, hash_line(config) + report_table(report), kStage);
    artifacts.push_back(text_path);
    nlohmann::json j = nlohmann::json::parse(report_json(report));
    j["config_hash"] = config_hash(config);
    const std::string json_path = path_join(config.output_dir, basename + ".json");
    write_file(json_path, j.dump(2) + "\n", kStage);
    artifacts.push_back(json_path);
  };

  try {
    emit(run_weekday_spec(data), "tableA1");
    emit(run_window_spec(data, 5), "tableA2");
    emit(run_window_spec(data, 1), "tableA3");
    emit(run_nonzero_subsample(data), "subsample");
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(kStage, e.what());
  }
  return artifacts;
}

std::vector<std::string> cmd_report(const RunConfig& config) {
  std::vector<std::string> artifacts = cmd_build(config);
  std::vector<std::string> fit_artifacts = cmd_fit(config);
  artifacts.insert(artifacts.end(), fit_artifacts.begin(), fit_artifacts.end());
  std::vector<std::string> robustness_artifacts = cmd_robustness(config);
  artifacts.insert(artifacts.end(), robustness_artifacts.begin(), robustness_artifacts.end());
  return artifacts;
}

GeneratorSpec default_synth_spec(const RunConfig& config, const std::string& index) {
  SynthTruth truth = synth_truth_for(index);
  GeneratorSpec spec;
  spec.n = 2516;
  spec.intercept = truth.intercept;
  spec.lag_coeffs = truth.lag_coeffs;
  spec.exog_betas = {{"share", truth.share_beta}, {"regime", truth.regime_beta}};
  spec.noise_sd = truth.noise_sd;
  spec.seed = config.seed;
  spec.signal_shape.window_start = spec.n - 62;
  spec.signal_shape.window_length = 62;
  spec.signal_shape.spike_rate = 0.5;
  spec.signal_shape.spike_scale = 0.007;
  spec.regime_start = static_cast<std::ptrdiff_t>(spec.n) - 72;
  spec.weekdays = config.weekdays;
  spec.start_date = make_date(2010, 5, 3);
  return spec;
}

std::vector<std::string> cmd_synth(const RunConfig& config) {
  constexpr const char* kStage = "synth";
  ensure_dir(config.output_dir, kStage);

  std::vector<std::string> artifacts;
  bool wrote_signal = false;
  RunConfig effective = config;
  if (effective.lag_sets.empty())
    throw StageError(kStage, "no indices configured in lag_sets");

  for (const auto& [index, lags] : effective.lag_sets) {
    GeneratorSpec spec = default_synth_spec(effective, index);
    SyntheticSample synthetic;
    try {
      synthetic = generate(spec);
    } catch (const std::exception& e) {
      throw StageError(kStage, index + ": " + e.what());
    }
    const RegressionSample& sample = synthetic.sample;

    std::ostringstream sample_csv;
    write_sample_csv(sample_csv, sample);
    const std::string sample_path =
        path_join(effective.output_dir, "synth_sample_" + index + ".csv");
    write_file(sample_path, sample_csv.str(), kStage);
    artifacts.push_back(sample_path);

    const std::string meta_path =
        path_join(effective.output_dir, "synth_sample_" + index + ".json");
    write_file(meta_path, sample_metadata_json(sample), kStage);
    artifacts.push_back(meta_path);

    const std::string truth_path = path_join(effective.output_dir, "truth_" + index + ".json");
    write_file(truth_path, truth_json(synthetic), kStage);
    artifacts.push_back(truth_path);

    const Date first_day = previous_trading_day(sample.dates.front());
    const std::string prices_path =
        path_join(effective.output_dir, "prices_" + index + ".csv");
    write_file(prices_path, synth_prices_csv(first_day, sample.dates, sample.y), kStage);
    artifacts.push_back(prices_path);

    if (!wrote_signal) {
      const std::string signal_path = path_join(effective.output_dir, "daily_signal.csv");
      write_file(signal_path, synth_signal_csv(sample), kStage);
      artifacts.push_back(signal_path);
      const std::string config_path = path_join(effective.output_dir, "synth_config.toml");
      write_file(config_path, synth_config_toml(effective, sample), kStage);
      artifacts.push_back(config_path);
      wrote_signal = true;
    }
  }
  return artifacts;
}

}  // namespace tweetarx
