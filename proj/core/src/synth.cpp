#include "tweetarx/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "json.hpp"

namespace tweetarx {

namespace {

using std::chrono::days;
using std::chrono::Friday;
using std::chrono::Monday;
using std::chrono::Saturday;
using std::chrono::Sunday;
using std::chrono::Thursday;
using std::chrono::year;
using std::chrono::year_month_day;

Date nth_weekday(int y, unsigned month, std::chrono::weekday wd, unsigned nth) {
  return std::chrono::sys_days(
      year{y} / std::chrono::month{month} / std::chrono::weekday_indexed{wd, nth});
}

Date last_weekday(int y, unsigned month, std::chrono::weekday wd) {
  return std::chrono::sys_days(year{y} / std::chrono::month{month} /
                               std::chrono::weekday_last{wd});
}

// Anonymous Gregorian computus.
Date easter_sunday(int y) {
  const int a = y % 19;
  const int b = y / 100;
  const int c = y % 100;
  const int d = b / 4;
  const int e = b % 4;
  const int f = (b + 8) / 25;
  const int g = (b - f + 1) / 3;
  const int h = (19 * a + b - d - g + 15) % 30;
  const int i = c / 4;
  const int k = c % 4;
  const int l = (32 + 2 * e + 2 * i - h - k) % 7;
  const int m = (a + 11 * h + 22 * l) / 451;
  const int month = (h + l - 7 * m + 114) / 31;
  const int day = ((h + l - 7 * m + 114) % 31) + 1;
  return make_date(y, static_cast<unsigned>(month), static_cast<unsigned>(day));
}

// Saturday holidays shift to Friday, Sunday holidays to Monday.
Date observed(Date holiday) {
  const auto wd = weekday_of(holiday);
  if (wd == Saturday) return holiday - days{1};
  if (wd == Sunday) return holiday + days{1};
  return holiday;
}

std::vector<Date> holidays_in_year(int y) {
  std::vector<Date> out;
  // New Year's Day: no Friday observance when Jan 1 falls on Saturday.
  Date new_year = make_date(y, 1, 1);
  if (weekday_of(new_year) == Sunday) {
    out.push_back(new_year + days{1});
  } else if (weekday_of(new_year) != Saturday) {
    out.push_back(new_year);
  }
  out.push_back(nth_weekday(y, 1, Monday, 3));   // Martin Luther King Jr. Day
  out.push_back(nth_weekday(y, 2, Monday, 3));   // Washington's Birthday
  out.push_back(easter_sunday(y) - days{2});     // Good Friday
  out.push_back(last_weekday(y, 5, Monday));     // Memorial Day
  out.push_back(observed(make_date(y, 7, 4)));   // Independence Day
  out.push_back(nth_weekday(y, 9, Monday, 1));   // Labor Day
  out.push_back(nth_weekday(y, 11, Thursday, 4));  // Thanksgiving
  out.push_back(observed(make_date(y, 12, 25)));   // Christmas
  return out;
}

bool is_special_closure(Date date) {
  static const Date kClosures[] = {
      make_date(2012, 10, 29),  // Hurricane Sandy
      make_date(2012, 10, 30),
      make_date(2018, 12, 5),  // National day of mourning
  };
  return std::find(std::begin(kClosures), std::end(kClosures), date) != std::end(kClosures);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1p-53;
  }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

bool is_trading_day(Date date) {
  const auto wd = weekday_of(date);
  if (wd == Saturday || wd == Sunday) return false;
  if (is_special_closure(date)) return false;
  const int y = static_cast<int>(year_month_day{date}.year());
  for (Date h : holidays_in_year(y)) {
    if (h == date) return false;
  }
  return true;
}

std::vector<Date> trading_calendar(Date start, std::size_t count) {
  std::vector<Date> out;
  out.reserve(count);
  Date d = start;
  while (out.size() < count) {
    if (is_trading_day(d)) out.push_back(d);
    d += days{1};
  }
  return out;
}

bool roots_stable(const std::map<int, double>& lag_coeffs) {
  int max_lag = 0;
  for (const auto& [lag, coeff] : lag_coeffs) {
    if (lag < 1) throw std::invalid_argument("roots_stable: lags must be >= 1");
    if (coeff != 0.0) max_lag = std::max(max_lag, lag);
  }
  if (max_lag == 0) return true;

  // Companion matrix of w^m - phi_1 w^{m-1} - ... - phi_m: eigenvalues are
  // the reciprocals of the roots of 1 - sum phi_k z^k.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(max_lag, max_lag);
  for (int lag = 1; lag <= max_lag; ++lag) {
    auto it = lag_coeffs.find(lag);
    companion(0, lag - 1) = it == lag_coeffs.end() ? 0.0 : it->second;
  }
  for (int i = 1; i < max_lag; ++i) companion(i, i - 1) = 1.0;
  Eigen::VectorXcd eigenvalues = companion.eigenvalues();
  double max_mod = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    max_mod = std::max(max_mod, std::abs(eigenvalues(i)));
  return max_mod * (1.0 + 1e-8) < 1.0;
}

SyntheticSample generate(const GeneratorSpec& spec) {
  if (spec.n == 0) throw std::invalid_argument("generate: n must be positive");
  if (spec.noise_sd < 0.0) throw std::invalid_argument("generate: negative noise_sd");
  if (!roots_stable(spec.lag_coeffs)) throw StabilityError("generate: unstable lag polynomial");

  const std::size_t n = spec.n;
  std::vector<Date> dates = trading_calendar(spec.start_date, n);
  Rng rng(spec.seed);

  const SignalShape& shape = spec.signal_shape;
  std::vector<double> share(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < shape.window_start || i >= shape.window_start + shape.window_length) continue;
    if (rng.uniform() < shape.spike_rate) share[i] = std::fabs(rng.normal()) * shape.spike_scale;
  }

  std::vector<double> regime(n, 0.0);
  if (spec.regime_start >= 0) {
    for (std::size_t i = static_cast<std::size_t>(spec.regime_start); i < n; ++i) regime[i] = 1.0;
  }

  RegressionSample sample;
  sample.response_name = "log_return";
  sample.dates = dates;
  sample.column_names = {"share", "regime"};
  sample.columns = {share, regime};
  if (spec.weekdays) {
    sample.y.assign(n, 0.0);  // add_weekday_columns needs row count
    add_weekday_columns(sample);
  }

  std::vector<const std::vector<double>*> beta_columns;
  std::vector<double> betas;
  for (const auto& [name, beta] : spec.exog_betas) {
    beta_columns.push_back(&sample.column(name));
    betas.push_back(beta);
  }

  int max_lag = 0;
  for (const auto& [lag, coeff] : spec.lag_coeffs) max_lag = std::max(max_lag, lag);
  std::vector<double> history(static_cast<std::size_t>(max_lag), 0.0);  // history[0] = y_{t-1}
  auto step_ar = [&](double value) {
    if (max_lag == 0) return;
    for (std::size_t j = history.size(); j-- > 1;) history[j] = history[j - 1];
    history[0] = value;
  };
  auto ar_part = [&]() {
    double s = spec.intercept;
    for (const auto& [lag, coeff] : spec.lag_coeffs)
      s += coeff * history[static_cast<std::size_t>(lag - 1)];
    return s;
  };

  for (int burn = 0; burn < 500; ++burn) {
    step_ar(ar_part() + spec.noise_sd * rng.normal());
  }
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double value = ar_part();
    for (std::size_t c = 0; c < betas.size(); ++c) value += betas[c] * (*beta_columns[c])[i];
    value += spec.noise_sd * rng.normal();
    y[i] = value;
    step_ar(value);
  }
  sample.y = std::move(y);

  if (shape.window_length > 0 && shape.window_start < n) {
    const std::size_t last = std::min(n - 1, shape.window_start + shape.window_length - 1);
    sample.window = {dates[shape.window_start], dates[last]};
  } else {
    sample.window = {Date{}, Date{}};
  }
  sample.regime_date = spec.regime_start >= 0 && static_cast<std::size_t>(spec.regime_start) < n
                           ? dates[static_cast<std::size_t>(spec.regime_start)]
                           : dates.back() + days{1};

  SyntheticSample out;
  out.sample = std::move(sample);
  out.spec = spec;
  for (const auto& [name, beta] : spec.exog_betas) out.true_coefficients[name] = beta;
  out.true_coefficients["const"] = spec.intercept;
  for (const auto& [lag, coeff] : spec.lag_coeffs)
    out.true_coefficients["AR(" + std::to_string(lag) + ")"] = coeff;
  return out;
}

std::string truth_json(const SyntheticSample& synthetic) {
  nlohmann::json j;
  j["seed"] = synthetic.spec.seed;
  j["n"] = synthetic.spec.n;
  j["noise_sd"] = synthetic.spec.noise_sd;
  j["intercept"] = synthetic.spec.intercept;
  nlohmann::json lags = nlohmann::json::object();
  for (const auto& [lag, coeff] : synthetic.spec.lag_coeffs)
    lags[std::to_string(lag)] = coeff;
  j["lag_coeffs"] = std::move(lags);
  j["exog_betas"] = synthetic.spec.exog_betas;
  j["signal_shape"] = {{"window_start", synthetic.spec.signal_shape.window_start},
                       {"window_length", synthetic.spec.signal_shape.window_length},
                       {"spike_rate", synthetic.spec.signal_shape.spike_rate},
                       {"spike_scale", synthetic.spec.signal_shape.spike_scale}};
  j["regime_start"] = synthetic.spec.regime_start;
  j["weekdays"] = synthetic.spec.weekdays;
  j["start_date"] = format_date(synthetic.spec.start_date);
  j["true_coefficients"] = synthetic.true_coefficients;
  return j.dump(2) + "\n";
}

}  // namespace tweetarx
