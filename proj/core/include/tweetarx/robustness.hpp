#pragma once

#include <span>
#include <string>
#include <vector>

#include "tweetarx/dataset.hpp"
#include "tweetarx/econometrics.hpp"

namespace tweetarx {

/// One index's input to a robustness run: its sample and chosen lag set.
struct IndexData {
  std::string index;
  RegressionSample sample;
  std::vector<int> lags;
};

struct IndexFit {
  std::string index;
  FitResult fit;
  std::size_t sample_rows = 0;
  std::vector<std::string> omitted_terms;  // exog dropped as constant in-subsample
};

struct RobustnessReport {
  std::string spec_name;
  std::vector<IndexFit> fits;  // fixed input order
};

/// Rows with date > last - years*365 days. Keeps everything when the sample
/// is already inside the window, so truncation is idempotent.
RegressionSample truncate_trailing_years(const RegressionSample& sample, int years);

/// Rows whose date lies in the sample's collection window.
RegressionSample restrict_to_window(const RegressionSample& sample);

/// Baseline spec (share, regime, constant, index lags) plus the four weekday
/// dummies.
RobustnessReport run_weekday_spec(std::span<const IndexData> samples);

/// Baseline spec on the trailing `years`-year window of each sample.
RobustnessReport run_window_spec(std::span<const IndexData> samples, int years);

/// Baseline spec restricted to in-window (observed-signal) trading days.
/// Exogenous columns constant within the subsample are omitted and reported.
RobustnessReport run_nonzero_subsample(std::span<const IndexData> samples);

std::string report_table(const RobustnessReport& report);
std::string report_json(const RobustnessReport& report);

}  // namespace tweetarx
