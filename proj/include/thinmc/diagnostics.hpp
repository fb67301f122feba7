// Chain diagnostics: autocorrelation functions, effective sample size, and
// per-trace summaries.
//
// The ESS estimator truncates the autocorrelation sum with the initial
// monotone positive-pair rule: pair sums Gamma_k = rho(2k) + rho(2k+1) are
// accumulated under a running minimum and the sum stops at the first
// non-positive pair. The result is clamped into (0, n].

#pragma once

#include <vector>

#include <Eigen/Core>

#include "thinmc/samplers.hpp"

namespace thinmc {

struct DiagnosticsReport {
  std::vector<double> ess;                // per coordinate; NaN for a constant coordinate
  std::vector<std::vector<double>> acf;   // per coordinate, lags 0..max_lag
  double accept_rate = 0.0;
  long n = 0;  // recorded states
};

// Biased-normalization sample ACF rho(k) for k = 0..max_lag. Requires
// 1 <= max_lag < n; throws on a constant series.
std::vector<double> autocorrelation(const std::vector<double>& series, int max_lag);

// n / (1 + 2 sum rho(k)) with the pairing truncation above; requires n >= 100.
double effective_sample_size(const std::vector<double>& series);

// Per-coordinate ESS and ACF (max_lag = min(n-1, 10^4)) plus the trace's
// acceptance rate. Constant coordinates yield NaN entries instead of errors.
DiagnosticsReport summarize(const Trace& trace);

}  // namespace thinmc
