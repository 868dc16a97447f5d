#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tweetarx/dataset.hpp"

namespace tweetarx {

/// Which terms enter the design. lag_set holds the autoregressive lags that
/// appear as columns (subset lags: {1,7} means r_{t-1} and r_{t-7} only).
struct ModelSpec {
  std::vector<int> lag_set;
  std::vector<std::string> exog_names;
  bool include_constant = true;
};

/// Terms are ordered exogenous columns, then "const", then "AR(k)" in lag
/// order. nobs is the effective (post-lagging) observation count.
struct FitResult {
  std::vector<std::string> term_names;
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  std::vector<double> t_stats;
  std::vector<double> p_values;
  double sigma2 = 0.0;
  double rss = 0.0;
  std::size_t nobs = 0;
  std::size_t df_resid = 0;
  double aic = 0.0;

  std::size_t term_index(const std::string& name) const;
  double coefficient(const std::string& name) const;
  double t_stat(const std::string& name) const;
  double p_value(const std::string& name) const;
};

struct PacfResult {
  std::vector<double> values;  // values[k-1] is the lag-k partial autocorrelation
  double band = 0.0;           // 1.96 / sqrt(n)
};

class CollinearityError : public std::runtime_error {
 public:
  explicit CollinearityError(std::vector<std::string> columns);
  const std::vector<std::string>& columns() const { return columns_; }

 private:
  std::vector<std::string> columns_;
};

class SampleSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sample autocorrelations at lags 1..maxlag, biased (divide-by-n)
/// normalization. Throws on a constant series.
std::vector<double> acf(std::span<const double> series, int maxlag);

/// Durbin-Levinson recursion on the sample ACF; band = 1.96/sqrt(n).
PacfResult pacf(std::span<const double> series, int maxlag);

/// Conditional least squares for the AR-X design given by `spec` over
/// `sample`. Lagged-response columns come from within the sample, so
/// max(lag_set) leading rows are dropped; passing `presample` (response
/// values immediately preceding the first row, oldest first) recovers up to
/// that many rows.
FitResult fit_arx(const RegressionSample& sample, const ModelSpec& spec,
                  std::span<const double> presample = {});

/// n_eff * ln(RSS/n_eff) + 2k. Throws on a degenerate (RSS = 0) fit.
double aic(const FitResult& fit);

/// Fits consecutive-lag AR(p), p = 0..pmax, on the common effective sample
/// (first pmax rows dropped for every candidate); returns the AIC argmin,
/// ties toward smaller p.
int select_order_aic(std::span<const double> series, int pmax);

/// All lags k <= maxlag with |pacf(k)| > band.
std::vector<int> select_lags_pacf(const PacfResult& result, int maxlag);

/// coefficient * sd(column) / sd(response), full-sample standard deviations.
double standardized_effect(const FitResult& fit, const RegressionSample& sample,
                           const std::string& term_name);

/// "***" p < .01, "**" p < .05, "*" p < .10, else "".
std::string significance_stars(double p_value);

std::string fit_json(const FitResult& fit);

/// Human-readable label for a term name in report tables.
std::string term_label(const std::string& term_name);

/// Aligned text table: one column per fit, coefficient rows with star
/// suffixes and t-statistics in parentheses beneath, then an Observations
/// row and the significance note.
std::string fit_table(std::span<const FitResult> fits, std::span<const std::string> titles);

}  // namespace tweetarx
