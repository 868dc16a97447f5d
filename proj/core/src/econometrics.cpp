#include "tweetarx/econometrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "json.hpp"
#include "tweetarx/distributions.hpp"

namespace tweetarx {

namespace {

constexpr double kRankTolerance = 1e-10;

std::string join_columns(const std::vector<std::string>& columns) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ", ";
    out += columns[i];
  }
  return out;
}

struct LsFit {
  Eigen::VectorXd beta;
  Eigen::VectorXd xtx_inv_diag;
  double rss = 0.0;
};

// Least squares through column-pivoted QR; throws CollinearityError naming
// the pivoted-out columns when rank < k.
LsFit solve_ls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
               const std::vector<std::string>& names) {
  const Eigen::Index k = X.cols();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < k) {
    std::vector<std::string> offending;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index i = qr.rank(); i < k; ++i) {
      offending.push_back(names[static_cast<std::size_t>(perm[i])]);
    }
    std::sort(offending.begin(), offending.end());
    throw CollinearityError(std::move(offending));
  }
  LsFit fit;
  fit.beta = qr.solve(y);
  Eigen::VectorXd resid = y - X * fit.beta;
  fit.rss = resid.squaredNorm();
  Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  Eigen::MatrixXd unpermuted = r_inv * r_inv.transpose();
  Eigen::MatrixXd xtx_inv = qr.colsPermutation() * unpermuted * qr.colsPermutation().transpose();
  fit.xtx_inv_diag = xtx_inv.diagonal();
  return fit;
}

double sample_sd(std::span<const double> values) {
  const std::size_t n = values.size();
  double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

std::string format_number(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

CollinearityError::CollinearityError(std::vector<std::string> columns)
    : std::runtime_error("collinear design columns: " + join_columns(columns)),
      columns_(std::move(columns)) {}

std::size_t FitResult::term_index(const std::string& name) const {
  auto it = std::find(term_names.begin(), term_names.end(), name);
  if (it == term_names.end()) throw std::out_of_range("no term named " + name);
  return static_cast<std::size_t>(it - term_names.begin());
}

double FitResult::coefficient(const std::string& name) const {
  return coefficients[term_index(name)];
}

double FitResult::t_stat(const std::string& name) const { return t_stats[term_index(name)]; }

double FitResult::p_value(const std::string& name) const { return p_values[term_index(name)]; }

std::vector<double> acf(std::span<const double> series, int maxlag) {
  const std::size_t n = series.size();
  if (maxlag < 1) throw std::invalid_argument("acf: maxlag must be >= 1");
  if (n <= static_cast<std::size_t>(maxlag))
    throw std::invalid_argument("acf: series shorter than maxlag");
  double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
  double gamma0 = 0.0;
  for (double v : series) gamma0 += (v - mean) * (v - mean);
  gamma0 /= static_cast<double>(n);
  if (gamma0 == 0.0) throw std::domain_error("acf: zero-variance series");
  std::vector<double> rho(static_cast<std::size_t>(maxlag));
  for (int k = 1; k <= maxlag; ++k) {
    double gamma = 0.0;
    for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t) {
      gamma += (series[t] - mean) * (series[t - static_cast<std::size_t>(k)] - mean);
    }
    gamma /= static_cast<double>(n);
    rho[static_cast<std::size_t>(k - 1)] = gamma / gamma0;
  }
  return rho;
}

PacfResult pacf(std::span<const double> series, int maxlag) {
  if (series.size() < 2 * static_cast<std::size_t>(std::max(maxlag, 1)))
    throw std::invalid_argument("pacf: maxlag must be below n/2");
  std::vector<double> rho = acf(series, maxlag);
  PacfResult result;
  result.band = 1.96 / std::sqrt(static_cast<double>(series.size()));
  result.values.resize(static_cast<std::size_t>(maxlag));

  // Durbin-Levinson: phi[j] holds phi_{k,j+1} for the current order k.
  std::vector<double> phi(static_cast<std::size_t>(maxlag), 0.0);
  std::vector<double> prev(static_cast<std::size_t>(maxlag), 0.0);
  phi[0] = rho[0];
  result.values[0] = rho[0];
  for (int k = 2; k <= maxlag; ++k) {
    std::copy(phi.begin(), phi.begin() + (k - 1), prev.begin());
    double num = rho[static_cast<std::size_t>(k - 1)];
    double den = 1.0;
    for (int j = 1; j < k; ++j) {
      num -= prev[static_cast<std::size_t>(j - 1)] * rho[static_cast<std::size_t>(k - j - 1)];
      den -= prev[static_cast<std::size_t>(j - 1)] * rho[static_cast<std::size_t>(j - 1)];
    }
    double last = num / den;
    phi[static_cast<std::size_t>(k - 1)] = last;
    for (int j = 1; j < k; ++j) {
      phi[static_cast<std::size_t>(j - 1)] =
          prev[static_cast<std::size_t>(j - 1)] - last * prev[static_cast<std::size_t>(k - j - 1)];
    }
    result.values[static_cast<std::size_t>(k - 1)] = last;
  }
  return result;
}

FitResult fit_arx(const RegressionSample& sample, const ModelSpec& spec,
                  std::span<const double> presample) {
  if (spec.lag_set.empty() && spec.exog_names.empty() && !spec.include_constant)
    throw std::invalid_argument("fit_arx: empty model");
  for (std::size_t i = 0; i < spec.lag_set.size(); ++i) {
    if (spec.lag_set[i] < 1 || (i > 0 && spec.lag_set[i] <= spec.lag_set[i - 1]))
      throw std::invalid_argument("fit_arx: lags must be strictly increasing and >= 1");
  }

  const std::size_t n = sample.rows();
  const int max_lag = spec.lag_set.empty() ? 0 : spec.lag_set.back();
  const std::size_t pad = std::min(presample.size(), static_cast<std::size_t>(max_lag));
  const std::size_t start = static_cast<std::size_t>(max_lag) - pad;
  if (n <= start) throw SampleSizeError("fit_arx: sample shorter than maximum lag");
  const std::size_t n_eff = n - start;

  std::vector<std::string> names;
  for (const std::string& name : spec.exog_names) names.push_back(name);
  if (spec.include_constant) names.push_back("const");
  for (int lag : spec.lag_set) names.push_back("AR(" + std::to_string(lag) + ")");
  const std::size_t k = names.size();
  if (n_eff <= k + 1) throw SampleSizeError("fit_arx: too few effective observations");

  // y value at sample row index t, where negative t indexes the presample.
  auto lagged = [&](std::ptrdiff_t t) {
    if (t >= 0) return sample.y[static_cast<std::size_t>(t)];
    return presample[presample.size() - static_cast<std::size_t>(-t)];
  };

  Eigen::MatrixXd X(n_eff, k);
  Eigen::VectorXd y(n_eff);
  std::size_t col = 0;
  for (const std::string& name : spec.exog_names) {
    const std::vector<double>& values = sample.column(name);
    for (std::size_t i = 0; i < n_eff; ++i)
      X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) = values[start + i];
    ++col;
  }
  if (spec.include_constant) {
    X.col(static_cast<Eigen::Index>(col)).setOnes();
    ++col;
  }
  for (int lag : spec.lag_set) {
    for (std::size_t i = 0; i < n_eff; ++i) {
      std::ptrdiff_t t = static_cast<std::ptrdiff_t>(start + i) - lag;
      X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) = lagged(t);
    }
    ++col;
  }
  for (std::size_t i = 0; i < n_eff; ++i) y(static_cast<Eigen::Index>(i)) = sample.y[start + i];

  LsFit ls = solve_ls(X, y, names);

  FitResult fit;
  fit.term_names = std::move(names);
  fit.nobs = n_eff;
  fit.df_resid = n_eff - k;
  fit.rss = ls.rss;
  fit.sigma2 = ls.rss / static_cast<double>(fit.df_resid);
  fit.coefficients.resize(k);
  fit.std_errors.resize(k);
  fit.t_stats.resize(k);
  fit.p_values.resize(k);
  const double df = static_cast<double>(fit.df_resid);
  for (std::size_t i = 0; i < k; ++i) {
    const double coef = ls.beta(static_cast<Eigen::Index>(i));
    const double se = std::sqrt(fit.sigma2 * ls.xtx_inv_diag(static_cast<Eigen::Index>(i)));
    fit.coefficients[i] = coef;
    fit.std_errors[i] = se;
    if (se > 0.0) {
      fit.t_stats[i] = coef / se;
      fit.p_values[i] = student_t_p_two_sided(fit.t_stats[i], df);
    } else {
      fit.t_stats[i] = coef == 0.0 ? 0.0 : std::copysign(
                                               std::numeric_limits<double>::infinity(), coef);
      fit.p_values[i] = coef == 0.0 ? 1.0 : 0.0;
    }
  }
  fit.aic = fit.rss > 0.0 ? static_cast<double>(n_eff) * std::log(fit.rss /
                                                                  static_cast<double>(n_eff)) +
                                2.0 * static_cast<double>(k)
                          : -std::numeric_limits<double>::infinity();
  return fit;
}

double aic(const FitResult& fit) {
  if (!(fit.rss > 0.0)) throw std::domain_error("aic: degenerate fit with zero RSS");
  const double n = static_cast<double>(fit.nobs);
  return n * std::log(fit.rss / n) + 2.0 * static_cast<double>(fit.term_names.size());
}

int select_order_aic(std::span<const double> series, int pmax) {
  if (pmax < 0) throw std::invalid_argument("select_order_aic: pmax must be >= 0");
  const std::size_t n = series.size();
  if (n <= static_cast<std::size_t>(pmax) + 2)
    throw SampleSizeError("select_order_aic: series too short for pmax");

  // Common effective sample: all candidates explain series[pmax..n-1].
  const std::size_t start = static_cast<std::size_t>(pmax);
  const std::size_t n_eff = n - start;
  Eigen::VectorXd y(n_eff);
  for (std::size_t i = 0; i < n_eff; ++i) y(static_cast<Eigen::Index>(i)) = series[start + i];

  int best_p = 0;
  double best_aic = std::numeric_limits<double>::infinity();
  for (int p = 0; p <= pmax; ++p) {
    const std::size_t k = static_cast<std::size_t>(p) + 1;
    Eigen::MatrixXd X(n_eff, k);
    X.col(0).setOnes();
    for (int lag = 1; lag <= p; ++lag) {
      for (std::size_t i = 0; i < n_eff; ++i) {
        X(static_cast<Eigen::Index>(i), lag) = series[start + i - static_cast<std::size_t>(lag)];
      }
    }
    std::vector<std::string> names(k, "const");
    for (int lag = 1; lag <= p; ++lag)
      names[static_cast<std::size_t>(lag)] = "AR(" + std::to_string(lag) + ")";
    LsFit ls = solve_ls(X, y, names);
    if (!(ls.rss > 0.0)) throw std::domain_error("select_order_aic: zero RSS candidate");
    double candidate = static_cast<double>(n_eff) *
                           std::log(ls.rss / static_cast<double>(n_eff)) +
                       2.0 * static_cast<double>(k);
    if (candidate < best_aic) {
      best_aic = candidate;
      best_p = p;
    }
  }
  return best_p;
}

std::vector<int> select_lags_pacf(const PacfResult& result, int maxlag) {
  std::vector<int> lags;
  const int limit = std::min<int>(maxlag, static_cast<int>(result.values.size()));
  for (int k = 1; k <= limit; ++k) {
    if (std::fabs(result.values[static_cast<std::size_t>(k - 1)]) > result.band) lags.push_back(k);
  }
  return lags;
}

double standardized_effect(const FitResult& fit, const RegressionSample& sample,
                           const std::string& term_name) {
  const double coef = fit.coefficient(term_name);
  const double sd_col = sample_sd(sample.column(term_name));
  const double sd_y = sample_sd(sample.y);
  if (sd_col == 0.0 || sd_y == 0.0)
    throw std::domain_error("standardized_effect: zero-variance column or response");
  return coef * sd_col / sd_y;
}

std::string significance_stars(double p_value) {
  if (std::isnan(p_value) || p_value < 0.0 || p_value > 1.0)
    throw std::domain_error("significance_stars: p-value outside [0,1]");
  if (p_value < 0.01) return "***";
  if (p_value < 0.05) return "**";
  if (p_value < 0.10) return "*";
  return "";
}

std::string fit_json(const FitResult& fit) {
  nlohmann::json j;
  nlohmann::json terms = nlohmann::json::array();
  for (std::size_t i = 0; i < fit.term_names.size(); ++i) {
    terms.push_back({{"term", fit.term_names[i]},
                     {"coefficient", fit.coefficients[i]},
                     {"std_error", fit.std_errors[i]},
                     {"t_stat", fit.t_stats[i]},
                     {"p_value", fit.p_values[i]},
                     {"stars", significance_stars(fit.p_values[i])}});
  }
  j["terms"] = std::move(terms);
  j["nobs"] = fit.nobs;
  j["df_resid"] = fit.df_resid;
  j["sigma2"] = fit.sigma2;
  j["rss"] = fit.rss;
  j["aic"] = fit.aic;
  return j.dump(2) + "\n";
}

std::string term_label(const std::string& term_name) {
  if (term_name == "share") return "Keyword share";
  if (term_name == "regime") return "Regime indicator";
  if (term_name == "const") return "Constant";
  if (term_name == "mon") return "Monday";
  if (term_name == "tue") return "Tuesday";
  if (term_name == "wed") return "Wednesday";
  if (term_name == "thu") return "Thursday";
  return term_name;
}

std::string fit_table(std::span<const FitResult> fits, std::span<const std::string> titles) {
  if (fits.size() != titles.size())
    throw std::invalid_argument("fit_table: one title per fit required");

  std::vector<std::string> row_terms;
  for (const FitResult& fit : fits) {
    for (const std::string& term : fit.term_names) {
      if (std::find(row_terms.begin(), row_terms.end(), term) == row_terms.end())
        row_terms.push_back(term);
    }
  }

  std::size_t label_width = std::string("Observations").size();
  for (const std::string& term : row_terms)
    label_width = std::max(label_width, term_label(term).size());

  std::vector<std::size_t> col_width(fits.size());
  auto cell_coef = [&](const FitResult& fit, const std::string& term) -> std::string {
    auto it = std::find(fit.term_names.begin(), fit.term_names.end(), term);
    if (it == fit.term_names.end()) return "";
    std::size_t i = static_cast<std::size_t>(it - fit.term_names.begin());
    return format_number(fit.coefficients[i], 3) + significance_stars(fit.p_values[i]);
  };
  auto cell_tstat = [&](const FitResult& fit, const std::string& term) -> std::string {
    auto it = std::find(fit.term_names.begin(), fit.term_names.end(), term);
    if (it == fit.term_names.end()) return "";
    std::size_t i = static_cast<std::size_t>(it - fit.term_names.begin());
    return "(" + format_number(fit.t_stats[i], 3) + ")";
  };
  for (std::size_t c = 0; c < fits.size(); ++c) {
    col_width[c] = titles[c].size();
    for (const std::string& term : row_terms) {
      col_width[c] = std::max(col_width[c], cell_coef(fits[c], term).size());
      col_width[c] = std::max(col_width[c], cell_tstat(fits[c], term).size());
    }
    col_width[c] = std::max(col_width[c], std::to_string(fits[c].nobs).size());
  }

  std::ostringstream out;
  auto emit_row = [&](const std::string& label, auto cell_of) {
    out << label;
    out << std::string(label_width - label.size(), ' ');
    for (std::size_t c = 0; c < fits.size(); ++c) {
      std::string cell = cell_of(c);
      out << "  " << cell << std::string(col_width[c] - cell.size(), ' ');
    }
    out << '\n';
  };

  emit_row("Variables", [&](std::size_t c) { return titles[c]; });
  for (const std::string& term : row_terms) {
    emit_row(term_label(term), [&](std::size_t c) { return cell_coef(fits[c], term); });
    emit_row("", [&](std::size_t c) { return cell_tstat(fits[c], term); });
  }
  emit_row("Observations", [&](std::size_t c) { return std::to_string(fits[c].nobs); });
  out << "\nNotes: t-statistics in parentheses. * p < 0.10, ** p < 0.05, *** p < 0.01.\n";
  return out.str();
}

}  // namespace tweetarx
