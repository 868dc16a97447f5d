#include "oracles.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace oracles {

namespace {

void eliminate(Matrix& a, Matrix& rhs) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
    }
    if (a[pivot][col] == 0.0) throw std::runtime_error("oracle: singular system");
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);
    const double diag = a[col][col];
    for (std::size_t j = 0; j < n; ++j) a[col][j] /= diag;
    for (std::size_t j = 0; j < rhs[col].size(); ++j) rhs[col][j] /= diag;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0.0) continue;
      const double factor = a[row][col];
      for (std::size_t j = 0; j < n; ++j) a[row][j] -= factor * a[col][j];
      for (std::size_t j = 0; j < rhs[row].size(); ++j) rhs[row][j] -= factor * rhs[col][j];
    }
  }
}

}  // namespace

std::vector<double> gauss_jordan_solve(Matrix a, std::vector<double> b) {
  Matrix rhs(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) rhs[i] = {b[i]};
  eliminate(a, rhs);
  std::vector<double> x(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) x[i] = rhs[i][0];
  return x;
}

Matrix gauss_jordan_inverse(Matrix a) {
  const std::size_t n = a.size();
  Matrix rhs(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) rhs[i][i] = 1.0;
  eliminate(a, rhs);
  return rhs;
}

OlsResult ols_normal_equations(const Matrix& x_rows, std::span<const double> y) {
  const std::size_t n = x_rows.size();
  if (n == 0 || n != y.size()) throw std::invalid_argument("oracle: bad design");
  const std::size_t k = x_rows[0].size();
  Matrix xtx(k, std::vector<double>(k, 0.0));
  std::vector<double> xty(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      xty[a] += x_rows[i][a] * y[i];
      for (std::size_t b = 0; b < k; ++b) xtx[a][b] += x_rows[i][a] * x_rows[i][b];
    }
  }
  Matrix inv = gauss_jordan_inverse(xtx);
  OlsResult result;
  result.beta.assign(k, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) result.beta[a] += inv[a][b] * xty[b];
  }
  for (std::size_t i = 0; i < n; ++i) {
    double fitted = 0.0;
    for (std::size_t a = 0; a < k; ++a) fitted += x_rows[i][a] * result.beta[a];
    result.rss += (y[i] - fitted) * (y[i] - fitted);
  }
  const double sigma2 = result.rss / static_cast<double>(n - k);
  result.std_errors.assign(k, 0.0);
  for (std::size_t a = 0; a < k; ++a) result.std_errors[a] = std::sqrt(sigma2 * inv[a][a]);
  return result;
}

std::vector<double> acf_reference(std::span<const double> series, int maxlag) {
  const std::size_t n = series.size();
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  double gamma0 = 0.0;
  for (double v : series) gamma0 += (v - mean) * (v - mean);
  gamma0 /= static_cast<double>(n);
  std::vector<double> rho(static_cast<std::size_t>(maxlag));
  for (int k = 1; k <= maxlag; ++k) {
    double gamma = 0.0;
    for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t) {
      gamma += (series[t] - mean) * (series[t - static_cast<std::size_t>(k)] - mean);
    }
    rho[static_cast<std::size_t>(k - 1)] = gamma / static_cast<double>(n) / gamma0;
  }
  return rho;
}

std::vector<double> pacf_sequential(std::span<const double> series, int maxlag) {
  std::vector<double> rho = acf_reference(series, maxlag);
  std::vector<double> out(static_cast<std::size_t>(maxlag));
  for (int k = 1; k <= maxlag; ++k) {
    Matrix toeplitz(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(k)));
    std::vector<double> rhs(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      rhs[static_cast<std::size_t>(i)] = rho[static_cast<std::size_t>(i)];
      for (int j = 0; j < k; ++j) {
        const int lag = std::abs(i - j);
        toeplitz[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            lag == 0 ? 1.0 : rho[static_cast<std::size_t>(lag - 1)];
      }
    }
    std::vector<double> phi = gauss_jordan_solve(std::move(toeplitz), std::move(rhs));
    out[static_cast<std::size_t>(k - 1)] = phi.back();
  }
  return out;
}

TwoPassStats two_pass_stats(std::span<const double> values) {
  TwoPassStats stats;
  const std::size_t n = values.size();
  if (n < 2) throw std::invalid_argument("oracle: need at least 2 values");
  double sum = 0.0;
  stats.min = values[0];
  stats.max = values[0];
  for (double v : values) {
    sum += v;
    if (v < stats.min) stats.min = v;
    if (v > stats.max) stats.max = v;
  }
  stats.mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
  stats.sd = std::sqrt(ss / static_cast<double>(n - 1));
  return stats;
}

double t_cdf_by_integration(double t, double df) {
  const double log_norm = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                          0.5 * std::log(df * 3.14159265358979323846);
  auto density = [&](double x) {
    return std::exp(log_norm - 0.5 * (df + 1.0) * std::log1p(x * x / df));
  };
  const double upper = std::fabs(t);
  const int segments = 20000;  // composite Simpson needs an even count
  const double h = upper / segments;
  double integral = density(0.0) + density(upper);
  for (int i = 1; i < segments; ++i) {
    integral += density(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  integral *= h / 3.0;
  return t >= 0.0 ? 0.5 + integral : 0.5 - integral;
}

std::vector<double> ar_theoretical_acf(const std::vector<double>& phi, int maxlag) {
  const int p = static_cast<int>(phi.size());
  if (p == 0) return std::vector<double>(static_cast<std::size_t>(maxlag), 0.0);
  // Yule-Walker: rho_k = sum_j phi_j rho_|k-j|, rho_0 = 1, for k = 1..p.
  Matrix a(static_cast<std::size_t>(p), std::vector<double>(static_cast<std::size_t>(p), 0.0));
  std::vector<double> b(static_cast<std::size_t>(p), 0.0);
  for (int k = 1; k <= p; ++k) {
    a[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(k - 1)] += 1.0;
    for (int j = 1; j <= p; ++j) {
      const int m = std::abs(k - j);
      if (m == 0) {
        b[static_cast<std::size_t>(k - 1)] += phi[static_cast<std::size_t>(j - 1)];
      } else {
        a[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(m - 1)] -=
            phi[static_cast<std::size_t>(j - 1)];
      }
    }
  }
  std::vector<double> rho = gauss_jordan_solve(std::move(a), std::move(b));
  rho.resize(static_cast<std::size_t>(maxlag), 0.0);
  for (int k = p + 1; k <= maxlag; ++k) {
    double value = 0.0;
    for (int j = 1; j <= p; ++j) {
      const int m = k - j;
      value += phi[static_cast<std::size_t>(j - 1)] *
               (m == 0 ? 1.0 : rho[static_cast<std::size_t>(m - 1)]);
    }
    rho[static_cast<std::size_t>(k - 1)] = value;
  }
  return rho;
}

}  // namespace oracles
