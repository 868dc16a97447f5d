#include "tweetarx/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "tweetarx/econometrics.hpp"

using namespace tweetarx;

namespace {

GeneratorSpec table_like_spec(std::uint64_t seed) {
  GeneratorSpec spec;
  spec.n = 2516;
  spec.intercept = 0.0004;
  spec.lag_coeffs = {{1, -0.148}, {7, 0.121}};
  spec.exog_betas = {{"share", -1.268}, {"regime", 0.0004}};
  spec.noise_sd = 0.0106;
  spec.seed = seed;
  spec.signal_shape.window_start = 2516 - 62;
  spec.signal_shape.window_length = 62;
  spec.regime_start = 2516 - 72;
  return spec;
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("stability accepts stationary polynomials and rejects unit roots") {
  CHECK(roots_stable({{1, 0.5}}));
  CHECK(roots_stable({{1, -0.148}, {7, 0.121}}));
  CHECK(roots_stable({}));
  CHECK(!roots_stable({{1, 1.0}}));
  CHECK(!roots_stable({{1, 1.2}}));
  CHECK(!roots_stable({{1, 0.7}, {2, 0.5}}));
  CHECK_THROWS_AS(roots_stable({{0, 0.5}}), std::invalid_argument);
}

TEST_CASE("generation is deterministic in the seed") {
  auto a = generate(table_like_spec(11));
  auto b = generate(table_like_spec(11));
  auto c = generate(table_like_spec(12));
  REQUIRE(a.sample.rows() == b.sample.rows());
  bool identical = true;
  for (std::size_t i = 0; i < a.sample.rows(); ++i) {
    if (a.sample.y[i] != b.sample.y[i]) identical = false;
    if (a.sample.column("share")[i] != b.sample.column("share")[i]) identical = false;
  }
  CHECK(identical);
  bool differs = false;
  for (std::size_t i = 0; i < a.sample.rows(); ++i) {
    if (a.sample.y[i] != c.sample.y[i]) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("zero noise converges to the AR fixed point") {
  GeneratorSpec spec;
  spec.n = 50;
  spec.intercept = 0.02;
  spec.lag_coeffs = {{1, 0.5}};
  spec.noise_sd = 0.0;
  spec.seed = 1;
  auto synthetic = generate(spec);
  const double fixed_point = 0.02 / (1.0 - 0.5);
  for (double v : synthetic.sample.y) CHECK(v == doctest::Approx(fixed_point).epsilon(1e-10));
}

TEST_CASE("unstable specs are rejected") {
  GeneratorSpec spec;
  spec.n = 100;
  spec.lag_coeffs = {{1, 1.01}};
  spec.seed = 3;
  CHECK_THROWS_AS(generate(spec), StabilityError);
}

TEST_CASE("moments land near the table-like targets") {
  auto synthetic = generate(table_like_spec(20200502));
  const auto& y = synthetic.sample.y;
  const auto& share = synthetic.sample.column("share");
  const auto& regime = synthetic.sample.column("regime");

  auto y_stats = oracles::two_pass_stats(y);
  CHECK(y_stats.sd > 0.008);
  CHECK(y_stats.sd < 0.014);

  auto share_stats = oracles::two_pass_stats(share);
  CHECK(share_stats.mean > 0.00002);
  CHECK(share_stats.mean < 0.00015);
  CHECK(share_stats.sd > 0.0003);
  CHECK(share_stats.sd < 0.0016);
  CHECK(share_stats.min == 0.0);

  double regime_mean = oracles::two_pass_stats(regime).mean;
  CHECK(regime_mean == doctest::Approx(72.0 / 2516.0).epsilon(1e-12));

  // share is zero outside the burst window
  for (std::size_t i = 0; i < 2516 - 62; ++i) CHECK(share[i] == 0.0);
  std::size_t nonzero = 0;
  for (std::size_t i = 2516 - 62; i < 2516; ++i) {
    if (share[i] != 0.0) ++nonzero;
  }
  CHECK(nonzero > 15);
  CHECK(nonzero < 50);
}

TEST_CASE("pure AR output matches its theoretical autocorrelations") {
  GeneratorSpec spec;
  spec.n = 50000;
  spec.lag_coeffs = {{1, 0.5}, {2, -0.3}};
  spec.noise_sd = 1.0;
  spec.seed = 404;
  auto synthetic = generate(spec);
  auto sample_rho = acf(synthetic.sample.y, 6);
  auto truth = oracles::ar_theoretical_acf({0.5, -0.3}, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(std::abs(sample_rho[i] - truth[i]) < 0.02);  // ~4 MC sd at n = 50000
  }
}

TEST_CASE("subset-lag AR matches theory with gaps treated as zeros") {
  GeneratorSpec spec;
  spec.n = 50000;
  spec.lag_coeffs = {{1, -0.148}, {7, 0.121}};
  spec.noise_sd = 1.0;
  spec.seed = 405;
  auto synthetic = generate(spec);
  auto sample_rho = acf(synthetic.sample.y, 8);
  std::vector<double> phi = {-0.148, 0.0, 0.0, 0.0, 0.0, 0.0, 0.121};
  auto truth = oracles::ar_theoretical_acf(phi, 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(std::abs(sample_rho[i] - truth[i]) < 0.02);
  }
}

TEST_CASE("true coefficients are recorded for every active term") {
  auto synthetic = generate(table_like_spec(7));
  CHECK(synthetic.true_coefficients.at("share") == -1.268);
  CHECK(synthetic.true_coefficients.at("regime") == 0.0004);
  CHECK(synthetic.true_coefficients.at("const") == 0.0004);
  CHECK(synthetic.true_coefficients.at("AR(1)") == -0.148);
  CHECK(synthetic.true_coefficients.at("AR(7)") == 0.121);

  std::string json = truth_json(synthetic);
  CHECK(json.find("\"AR(1)\"") != std::string::npos);
  CHECK(json.find("\"share\"") != std::string::npos);
  CHECK(json.find("-0.148") != std::string::npos);
  CHECK(json.find("\"seed\"") != std::string::npos);
}

TEST_CASE("sample metadata reflects the generated window and regime") {
  auto synthetic = generate(table_like_spec(7));
  const auto& sample = synthetic.sample;
  REQUIRE(sample.rows() == 2516);
  CHECK(sample.window.start == sample.dates[2516 - 62]);
  CHECK(sample.window.end == sample.dates[2515]);
  CHECK(sample.regime_date == sample.dates[2516 - 72]);
  CHECK(std::is_sorted(sample.dates.begin(), sample.dates.end()));
}

TEST_CASE("weekday columns appear only when requested") {
  auto plain = generate(table_like_spec(7));
  CHECK(!plain.sample.has_column("mon"));

  auto spec = table_like_spec(7);
  spec.weekdays = true;
  auto with_days = generate(spec);
  for (const char* name : {"mon", "tue", "wed", "thu"}) {
    CHECK(with_days.sample.has_column(name));
  }
}

TEST_CASE("trading calendar spans May 2010 to April 2020 in 2517 days") {
  auto days = trading_calendar(make_date(2010, 5, 3), 2517);
  REQUIRE(days.size() == 2517);
  CHECK(days.front() == make_date(2010, 5, 3));
  CHECK(days.back() == make_date(2020, 4, 30));
}

TEST_CASE("trading calendar skips weekends and market holidays") {
  auto days = trading_calendar(make_date(2019, 1, 1), 300);
  auto holiday = [&](Date d) {
    return std::find(days.begin(), days.end(), d) == days.end();
  };
  CHECK(holiday(make_date(2019, 1, 1)));    // New Year's Day
  CHECK(holiday(make_date(2019, 1, 21)));   // MLK Day
  CHECK(holiday(make_date(2019, 2, 18)));   // Washington's Birthday
  CHECK(holiday(make_date(2019, 4, 19)));   // Good Friday
  CHECK(holiday(make_date(2019, 5, 27)));   // Memorial Day
  CHECK(holiday(make_date(2019, 7, 4)));    // Independence Day
  CHECK(holiday(make_date(2019, 9, 2)));    // Labor Day
  CHECK(holiday(make_date(2019, 11, 28)));  // Thanksgiving
  CHECK(holiday(make_date(2019, 12, 25)));  // Christmas
  CHECK(holiday(make_date(2019, 1, 5)));    // a Saturday
  CHECK(!holiday(make_date(2019, 1, 2)));
  CHECK(!holiday(make_date(2019, 4, 18)));  // Maundy Thursday trades
}

TEST_CASE("observed holidays move off weekends") {
  // July 4th 2015 was a Saturday: observed Friday July 3rd.
  CHECK(!is_trading_day(make_date(2015, 7, 3)));
  CHECK(is_trading_day(make_date(2015, 7, 6)));
  // July 4th 2021 was a Sunday: observed Monday July 5th.
  CHECK(!is_trading_day(make_date(2021, 7, 5)));
  // New Year's Day 2011 fell on a Saturday: no observance, Dec 31 2010 trades.
  CHECK(is_trading_day(make_date(2010, 12, 31)));
  // Christmas 2016 fell on a Sunday: observed Monday the 26th.
  CHECK(!is_trading_day(make_date(2016, 12, 26)));
}

TEST_CASE("special closures are excluded") {
  CHECK(!is_trading_day(make_date(2012, 10, 29)));  // Hurricane Sandy
  CHECK(!is_trading_day(make_date(2012, 10, 30)));
  CHECK(!is_trading_day(make_date(2018, 12, 5)));   // national day of mourning
  CHECK(is_trading_day(make_date(2012, 10, 31)));
  CHECK(is_trading_day(make_date(2018, 12, 4)));
  CHECK(is_trading_day(make_date(2018, 12, 6)));
}

TEST_CASE("generator validates its arguments") {
  GeneratorSpec spec;
  spec.n = 0;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);

  spec.n = 100;
  spec.noise_sd = -1.0;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);

  // out-of-range regime start leaves the indicator all zero
  spec.noise_sd = 0.5;
  spec.seed = 8;
  spec.regime_start = 200;
  auto synthetic = generate(spec);
  for (double v : synthetic.sample.column("regime")) CHECK(v == 0.0);
}

TEST_CASE("share column is identical across specs sharing a seed") {
  auto first = table_like_spec(99);
  auto second = table_like_spec(99);
  second.lag_coeffs = {{1, -0.127}};
  second.exog_betas = {{"share", -1.264}, {"regime", 0.0019}};
  second.noise_sd = 0.0119;
  auto a = generate(first);
  auto b = generate(second);
  const auto& sa = a.sample.column("share");
  const auto& sb = b.sample.column("share");
  REQUIRE(sa.size() == sb.size());
  for (std::size_t i = 0; i < sa.size(); ++i) CHECK(sa[i] == sb[i]);
}

}  // TEST_SUITE
