#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tweetarx/dataset.hpp"
#include "tweetarx/dates.hpp"

namespace tweetarx {

/// Sparse-burst shape of the synthetic share column: zero outside
/// [window_start, window_start + window_length) row indices; inside, each day
/// spikes with probability spike_rate to |normal| * spike_scale.
struct SignalShape {
  std::size_t window_start = 0;
  std::size_t window_length = 0;
  double spike_rate = 0.5;
  double spike_scale = 0.007;
};

struct GeneratorSpec {
  std::size_t n = 0;
  double intercept = 0.0;
  std::map<int, double> lag_coeffs;            // lag -> phi
  std::map<std::string, double> exog_betas;    // column name -> beta
  double noise_sd = 1.0;
  std::uint64_t seed = 0;
  SignalShape signal_shape;
  std::ptrdiff_t regime_start = -1;  // first row with regime = 1; -1 disables
  bool weekdays = false;
  Date start_date = make_date(2010, 5, 3);
};

class StabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// True iff 1 - sum phi_k z^k has no root with |z| <= 1 (1e-8 tolerance),
/// via companion-matrix eigenvalues of the reversed polynomial.
bool roots_stable(const std::map<int, double>& lag_coeffs);

struct SyntheticSample {
  RegressionSample sample;
  GeneratorSpec spec;
  std::map<std::string, double> true_coefficients;  // exog names, "const", "AR(k)"
};

/// Simulates the AR-X recursion forward from zero initial conditions with a
/// 500-step burn-in (exogenous terms enter only after burn-in). The share
/// column is drawn before the noise stream, so identical seeds give
/// bit-identical output. Dates follow the US trading calendar from
/// spec.start_date.
SyntheticSample generate(const GeneratorSpec& spec);

/// First `count` US trading days on or after `start`: weekdays minus market
/// holidays and special closures.
std::vector<Date> trading_calendar(Date start, std::size_t count);

bool is_trading_day(Date date);

std::string truth_json(const SyntheticSample& synthetic);

}  // namespace tweetarx
