#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tweetarx/corpus.hpp"
#include "tweetarx/dates.hpp"
#include "tweetarx/marketdata.hpp"

namespace tweetarx {

/// Trading-day rows: response y (log returns) plus named regressor columns,
/// all date-aligned. `window` and `regime_date` record how the sample was
/// constructed; `dropped_days` lists in-window trading dates removed for
/// having no signal.
struct RegressionSample {
  std::string response_name;
  std::vector<Date> dates;
  std::vector<double> y;
  std::vector<std::string> column_names;
  std::vector<std::vector<double>> columns;

  DateRange window{};
  Date regime_date{};
  std::vector<Date> dropped_days;

  std::size_t rows() const { return y.size(); }
  bool has_column(const std::string& name) const;
  const std::vector<double>& column(const std::string& name) const;
  void add_column(std::string name, std::vector<double> values);
};

struct VariableStats {
  std::string name;
  std::size_t count = 0;
  double mean = 0.0;
  double std_dev = 0.0;  // n-1 denominator
  double min = 0.0;
  double max = 0.0;
};

using DescriptiveStats = std::vector<VariableStats>;

/// One row per trading date in `returns`. Rows outside `window` get share 0;
/// in-window dates with no DailySignal are dropped from the sample entirely.
/// regime = 1 iff date >= regime_date. With `weekdays`, adds four 0/1
/// columns mon..thu (Friday is the omitted base).
RegressionSample build_sample(const ReturnSeries& returns, std::span<const DailySignal> signal,
                              DateRange window, Date regime_date, bool weekdays,
                              std::string response_name = "log_return");

void add_weekday_columns(RegressionSample& sample);

VariableStats describe_vector(std::string name, std::span<const double> values);

/// Stats for y followed by every column, in sample order.
DescriptiveStats describe(const RegressionSample& sample);

std::string format_stats_table(const DescriptiveStats& stats);

/// Plot-ready CSV: date,log_return,share. Values round-trip exactly.
void emit_figure_data(std::ostream& out, const RegressionSample& sample);

/// CSV with header date,log_return,share,regime[,mon,tue,wed,thu].
void write_sample_csv(std::ostream& out, const RegressionSample& sample);
RegressionSample read_sample_csv(std::istream& in);

/// JSON sidecar: response, window, regime date, dropped days, column names.
std::string sample_metadata_json(const RegressionSample& sample);

}  // namespace tweetarx
