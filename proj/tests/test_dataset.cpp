#include "tweetarx/dataset.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace tweetarx;

namespace {

ReturnSeries weekday_returns(Date start, int n, double value = 0.001) {
  ReturnSeries series;
  Date d = start;
  while (static_cast<int>(series.size()) < n) {
    auto wd = weekday_of(d);
    if (wd != std::chrono::Saturday && wd != std::chrono::Sunday) {
      series.push_back({d, value});
    }
    d += std::chrono::days{1};
  }
  return series;
}

DailySignal signal_on(Date date, std::uint64_t mentions, std::uint64_t tweets) {
  DailySignal s;
  s.date = date;
  s.mention_count = mentions;
  s.tweet_count = tweets;
  s.share = tweets == 0 ? 0.0 : static_cast<double>(mentions) / static_cast<double>(tweets);
  return s;
}

}  // namespace

TEST_SUITE("dataset") {

TEST_CASE("out-of-window trading days get zero share") {
  auto returns = weekday_returns(make_date(2020, 1, 6), 10);
  std::vector<DailySignal> signal;  // nothing observed at all
  DateRange window{make_date(2020, 1, 13), make_date(2020, 1, 17)};
  // every in-window day lacks signal, so only out-of-window rows survive
  auto sample = build_sample(returns, signal, window, make_date(2020, 1, 20), false);
  CHECK(sample.rows() == 5);
  for (double v : sample.column("share")) CHECK(v == 0.0);
  CHECK(sample.dropped_days.size() == 5);
}

TEST_CASE("in-window days without signal are dropped and recorded") {
  auto returns = weekday_returns(make_date(2020, 1, 6), 10);
  DateRange window{make_date(2020, 1, 6), make_date(2020, 1, 17)};
  std::vector<DailySignal> signal;
  for (const ReturnPoint& p : returns) {
    if (p.date == make_date(2020, 1, 9)) continue;  // hole
    signal.push_back(signal_on(p.date, 2, 100));
  }
  auto sample = build_sample(returns, signal, window, make_date(2020, 1, 20), false);
  CHECK(sample.rows() == 9);
  REQUIRE(sample.dropped_days.size() == 1);
  CHECK(sample.dropped_days[0] == make_date(2020, 1, 9));
  for (double v : sample.column("share")) CHECK(v == doctest::Approx(0.02));
}

TEST_CASE("regime flag flips exactly at the regime date") {
  auto returns = weekday_returns(make_date(2020, 1, 13), 10);
  std::vector<DailySignal> signal;
  for (const ReturnPoint& p : returns) signal.push_back(signal_on(p.date, 1, 10));
  DateRange window{make_date(2020, 1, 13), make_date(2020, 1, 31)};
  auto sample = build_sample(returns, signal, window, make_date(2020, 1, 20), false);
  const auto& regime = sample.column("regime");
  for (std::size_t i = 0; i < sample.rows(); ++i) {
    double expect = sample.dates[i] >= make_date(2020, 1, 20) ? 1.0 : 0.0;
    CHECK(regime[i] == expect);
  }
  // 2020-01-17 is the last pre-regime trading day; 2020-01-20 is a holiday,
  // so the first flagged row is 2020-01-21.
  auto at = [&](Date d) {
    for (std::size_t i = 0; i < sample.rows(); ++i) {
      if (sample.dates[i] == d) return regime[i];
    }
    return -1.0;
  };
  CHECK(at(make_date(2020, 1, 17)) == 0.0);
  CHECK(at(make_date(2020, 1, 21)) == 1.0);
}

TEST_CASE("weekday columns are exclusive and mark the right days") {
  auto returns = weekday_returns(make_date(2020, 2, 3), 15);
  std::vector<DailySignal> signal;
  for (const ReturnPoint& p : returns) signal.push_back(signal_on(p.date, 0, 10));
  DateRange window{make_date(2020, 2, 3), make_date(2020, 2, 21)};
  auto sample = build_sample(returns, signal, window, make_date(2020, 2, 10), true);

  const char* names[] = {"mon", "tue", "wed", "thu"};
  const std::chrono::weekday days[] = {std::chrono::Monday, std::chrono::Tuesday,
                                       std::chrono::Wednesday, std::chrono::Thursday};
  for (std::size_t i = 0; i < sample.rows(); ++i) {
    double total = 0.0;
    for (int c = 0; c < 4; ++c) {
      double v = sample.column(names[c])[i];
      CHECK((v == 0.0 || v == 1.0));
      CHECK(v == (weekday_of(sample.dates[i]) == days[c] ? 1.0 : 0.0));
      total += v;
    }
    CHECK(total <= 1.0);
    if (weekday_of(sample.dates[i]) == std::chrono::Friday) CHECK(total == 0.0);
  }
}

TEST_CASE("describe_vector of 1,2,3 gives mean 2 sd 1") {
  std::vector<double> values = {1.0, 2.0, 3.0};
  auto stats = describe_vector("x", values);
  CHECK(stats.count == 3);
  CHECK(stats.mean == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(stats.std_dev == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(stats.min == 1.0);
  CHECK(stats.max == 3.0);
}

TEST_CASE("constant series has zero standard deviation") {
  std::vector<double> values(20, 3.75);
  auto stats = describe_vector("x", values);
  CHECK(stats.std_dev == 0.0);
  CHECK(stats.mean == doctest::Approx(3.75));
}

TEST_CASE("describing fewer than two values fails") {
  std::vector<double> one = {1.0};
  CHECK_THROWS_AS(describe_vector("x", one), std::invalid_argument);
  CHECK_THROWS_AS(describe_vector("x", std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("describe_vector matches a two-pass reference on random data") {
  test_util::TestRng rng(31);
  std::vector<double> values(100);
  for (double& v : values) v = rng.normal() * 3.0 + 1.5;
  auto stats = describe_vector("x", values);
  auto reference = oracles::two_pass_stats(values);
  CHECK(std::abs(stats.mean - reference.mean) < 1e-12);
  CHECK(std::abs(stats.std_dev - reference.sd) < 1e-12);
  CHECK(stats.min == reference.min);
  CHECK(stats.max == reference.max);
}

TEST_CASE("describe lists y first then columns in order") {
  auto returns = weekday_returns(make_date(2020, 2, 3), 10, 0.002);
  std::vector<DailySignal> signal;
  for (const ReturnPoint& p : returns) signal.push_back(signal_on(p.date, 1, 50));
  DateRange window{make_date(2020, 2, 3), make_date(2020, 2, 14)};
  auto sample = build_sample(returns, signal, window, make_date(2020, 2, 10), false);
  auto stats = describe(sample);
  REQUIRE(stats.size() == 3);
  CHECK(stats[0].name == "log_return");
  CHECK(stats[1].name == "share");
  CHECK(stats[2].name == "regime");
  CHECK(stats[0].mean == doctest::Approx(0.002));
  CHECK(stats[1].mean == doctest::Approx(0.02));

  std::string table = format_stats_table(stats);
  CHECK(table.find("log_return") != std::string::npos);
  CHECK(table.find("share") != std::string::npos);
  CHECK(table.find("Mean") != std::string::npos);
  CHECK(table.find("Std. Dev.") != std::string::npos);
}

TEST_CASE("figure data round-trips exactly") {
  auto returns = weekday_returns(make_date(2020, 2, 3), 3, 0.0012345678901234567);
  std::vector<DailySignal> signal;
  for (const ReturnPoint& p : returns) signal.push_back(signal_on(p.date, 7, 300));
  DateRange window{make_date(2020, 2, 3), make_date(2020, 2, 5)};
  auto sample = build_sample(returns, signal, window, make_date(2020, 2, 4), false);

  std::ostringstream out;
  emit_figure_data(out, sample);
  std::string text = out.str();
  CHECK(text.substr(0, text.find('\n')) == "date,log_return,share");

  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  std::size_t row = 0;
  while (std::getline(in, line)) {
    std::size_t c1 = line.find(',');
    std::size_t c2 = line.find(',', c1 + 1);
    CHECK(std::stod(line.substr(c1 + 1, c2 - c1 - 1)) == sample.y[row]);
    CHECK(std::stod(line.substr(c2 + 1)) == sample.column("share")[row]);
    ++row;
  }
  CHECK(row == sample.rows());
}

TEST_CASE("empty sample still emits the figure header") {
  RegressionSample sample;
  sample.response_name = "log_return";
  sample.add_column("share", {});
  std::ostringstream out;
  emit_figure_data(out, sample);
  CHECK(out.str() == "date,log_return,share\n");
}

TEST_CASE("sample CSV round-trips including weekday columns") {
  auto returns = weekday_returns(make_date(2020, 2, 3), 12, 0.0011);
  std::vector<DailySignal> signal;
  for (const ReturnPoint& p : returns) signal.push_back(signal_on(p.date, 3, 170));
  DateRange window{make_date(2020, 2, 3), make_date(2020, 2, 18)};
  auto sample = build_sample(returns, signal, window, make_date(2020, 2, 12), true);

  std::ostringstream out;
  write_sample_csv(out, sample);
  std::istringstream in(out.str());
  auto reread = read_sample_csv(in);

  REQUIRE(reread.rows() == sample.rows());
  CHECK(reread.column_names == sample.column_names);
  for (std::size_t i = 0; i < sample.rows(); ++i) {
    CHECK(reread.dates[i] == sample.dates[i]);
    CHECK(reread.y[i] == sample.y[i]);
    for (const std::string& name : sample.column_names) {
      CHECK(reread.column(name)[i] == sample.column(name)[i]);
    }
  }
}

TEST_CASE("metadata JSON names the window and dropped days") {
  auto returns = weekday_returns(make_date(2020, 1, 6), 8);
  DateRange window{make_date(2020, 1, 6), make_date(2020, 1, 15)};
  std::vector<DailySignal> signal;
  for (const ReturnPoint& p : returns) {
    if (p.date == make_date(2020, 1, 8)) continue;
    signal.push_back(signal_on(p.date, 1, 20));
  }
  auto sample = build_sample(returns, signal, window, make_date(2020, 1, 10), false);
  std::string json = sample_metadata_json(sample);
  CHECK(json.find("2020-01-06") != std::string::npos);
  CHECK(json.find("2020-01-15") != std::string::npos);
  CHECK(json.find("2020-01-08") != std::string::npos);  // dropped day
  CHECK(json.find("log_return") != std::string::npos);
  CHECK(json.find("share") != std::string::npos);
}

TEST_CASE("mismatched column length is rejected") {
  RegressionSample sample;
  sample.y = {0.1, 0.2};
  sample.dates = {make_date(2020, 1, 6), make_date(2020, 1, 7)};
  CHECK_THROWS(sample.add_column("bad", {1.0}));
  CHECK_THROWS(sample.column("missing"));
  CHECK(!sample.has_column("missing"));
}

TEST_CASE("window validation rejects inverted ranges") {
  auto returns = weekday_returns(make_date(2020, 1, 6), 5);
  std::vector<DailySignal> signal;
  DateRange window{make_date(2020, 1, 17), make_date(2020, 1, 6)};
  CHECK_THROWS_AS(build_sample(returns, signal, window, make_date(2020, 1, 10), false),
                  std::invalid_argument);
}

}  // TEST_SUITE
