#include <benchmark/benchmark.h>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "tweetarx/corpus.hpp"
#include "tweetarx/econometrics.hpp"
#include "tweetarx/synth.hpp"

using namespace tweetarx;

namespace {

std::string make_ndjson(int lines) {
  std::string out;
  out.reserve(static_cast<std::size_t>(lines) * 120);
  char buf[192];
  for (int i = 0; i < lines; ++i) {
    const char* text = nullptr;
    switch (i % 4) {
      case 0: text = "covid-19 stock market selloff deepens"; break;
      case 1: text = "coronavirus fears hit stock stock watchers"; break;
      case 2: text = "covid-19 quiet day indoors"; break;
      default: text = "plain market chatter stock tips"; break;
    }
    std::snprintf(buf, sizeof(buf),
                  "{\"created_at\":\"2020-03-%02dT%02d:%02d:00Z\",\"text\":\"%s\","
                  "\"is_retweet\":false,\"user_id\":\"u%d\"}\n",
                  1 + i % 28, i % 24, i % 60, text, i % 97);
    out += buf;
  }
  return out;
}

RegressionSample make_sample() {
  GeneratorSpec spec;
  spec.n = 2516;
  spec.intercept = 0.0004;
  spec.lag_coeffs = {{1, -0.148}, {7, 0.121}};
  spec.exog_betas = {{"share", -1.268}, {"regime", 0.0004}};
  spec.noise_sd = 0.0106;
  spec.seed = 7;
  spec.signal_shape.window_start = spec.n - 62;
  spec.signal_shape.window_length = 62;
  spec.regime_start = static_cast<std::ptrdiff_t>(spec.n) - 72;
  return generate(spec).sample;
}

void BM_ParseTweetStream(benchmark::State& state) {
  const std::string data = make_ndjson(static_cast<int>(state.range(0)));
  std::uint64_t sink = 0;
  for (auto _ : state) {
    std::istringstream in(data);
    ParseStats stats =
        parse_tweet_stream(in, ParseMode::lenient, [&](TweetRecord&& r) { sink += r.text.size(); });
    benchmark::DoNotOptimize(stats);
  }
  benchmark::DoNotOptimize(sink);
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(data.size()));
}

void BM_AggregateDaily(benchmark::State& state) {
  std::istringstream in(make_ndjson(static_cast<int>(state.range(0))));
  auto [records, malformed] = parse_tweet_records(in, ParseMode::lenient);
  AggregateOptions opts;
  opts.keyword = "stock";
  opts.mode = MatchMode::exact;
  for (auto _ : state) {
    std::vector<DailySignal> signals = aggregate_daily(records, opts);
    benchmark::DoNotOptimize(signals);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(records.size()));
}

void BM_CountKeywordSubstring(benchmark::State& state) {
  const std::string text = "restocking stockpiles while the stock market watches stock futures";
  std::uint64_t sink = 0;
  for (auto _ : state) sink += count_keyword(text, "stock", MatchMode::substring);
  benchmark::DoNotOptimize(sink);
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(text.size()));
}

void BM_FitArx(benchmark::State& state) {
  const RegressionSample sample = make_sample();
  ModelSpec spec;
  spec.lag_set = {1, 7};
  spec.exog_names = {"share", "regime"};
  for (auto _ : state) {
    FitResult fit = fit_arx(sample, spec);
    benchmark::DoNotOptimize(fit);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(sample.rows()));
}

void BM_Pacf(benchmark::State& state) {
  const RegressionSample sample = make_sample();
  const int maxlag = static_cast<int>(state.range(0));
  for (auto _ : state) {
    PacfResult result = pacf(sample.y, maxlag);
    benchmark::DoNotOptimize(result);
  }
}

BENCHMARK(BM_ParseTweetStream)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AggregateDaily)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountKeywordSubstring);
BENCHMARK(BM_FitArx)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Pacf)->Arg(30)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
