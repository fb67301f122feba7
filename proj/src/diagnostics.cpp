#include "thinmc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace thinmc {

namespace {

// Autocovariances gamma(0..max_lag) with 1/n normalization, computed directly.
std::vector<double> autocovariance_direct(const std::vector<double>& x, int max_lag) {
  std::size_t n = x.size();
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> gamma(static_cast<std::size_t>(max_lag) + 1, 0.0);
  for (int k = 0; k <= max_lag; ++k) {
    double s = 0.0;
    for (std::size_t t = 0; t + static_cast<std::size_t>(k) < n; ++t) {
      s += (x[t] - mean) * (x[t + static_cast<std::size_t>(k)] - mean);
    }
    gamma[static_cast<std::size_t>(k)] = s / static_cast<double>(n);
  }
  return gamma;
}

// Same quantity via a zero-padded FFT; worthwhile once n * max_lag is large.
std::vector<double> autocovariance_fft(const std::vector<double>& x, int max_lag) {
  std::size_t n = x.size();
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);

  std::size_t m = 1;
  while (m < 2 * n) m <<= 1;
  std::vector<double> padded(m, 0.0);
  for (std::size_t t = 0; t < n; ++t) padded[t] = x[t] - mean;

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> freq;
  fft.fwd(freq, padded);
  for (auto& c : freq) c = c * std::conj(c);
  std::vector<double> corr;
  fft.inv(corr, freq);

  std::vector<double> gamma(static_cast<std::size_t>(max_lag) + 1);
  for (int k = 0; k <= max_lag; ++k) {
    gamma[static_cast<std::size_t>(k)] = corr[static_cast<std::size_t>(k)] / static_cast<double>(n);
  }
  return gamma;
}

std::vector<double> autocovariance(const std::vector<double>& x, int max_lag) {
  // Crossover picked so small inputs keep the exactly-auditable direct path.
  if (static_cast<double>(x.size()) * (max_lag + 1) < 4e6) {
    return autocovariance_direct(x, max_lag);
  }
  return autocovariance_fft(x, max_lag);
}

std::vector<double> acf_from_cov(std::vector<double> gamma) {
  if (!(gamma[0] > 0.0)) {
    throw std::invalid_argument("autocorrelation: constant series has no ACF");
  }
  double g0 = gamma[0];
  for (double& g : gamma) g /= g0;
  return gamma;
}

}  // namespace

std::vector<double> autocorrelation(const std::vector<double>& series, int max_lag) {
  std::size_t n = series.size();
  if (max_lag < 1) throw std::invalid_argument("autocorrelation: max_lag must be >= 1");
  if (n <= static_cast<std::size_t>(max_lag)) {
    throw std::invalid_argument("autocorrelation: series length must exceed max_lag");
  }
  return acf_from_cov(autocovariance(series, max_lag));
}

double effective_sample_size(const std::vector<double>& series) {
  std::size_t n = series.size();
  if (n < 100) throw std::invalid_argument("effective_sample_size: need at least 100 samples");
  std::vector<double> rho = acf_from_cov(autocovariance(series, static_cast<int>(n) - 1));

  // Initial monotone positive pairs: accumulate Gamma_k = rho(2k) + rho(2k+1)
  // from k = 0 while positive, never letting a pair exceed the previous one;
  // the integrated autocorrelation time is 2 * sum - 1.
  double tau = -1.0;
  double prev_pair = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; 2 * k + 1 < rho.size(); ++k) {
    double pair = rho[2 * k] + rho[2 * k + 1];
    if (pair <= 0.0) break;
    pair = std::min(pair, prev_pair);
    prev_pair = pair;
    tau += 2.0 * pair;
  }
  double nn = static_cast<double>(n);
  if (tau <= 0.0) return nn;  // anti-correlated chain: clamp at the sample count
  return std::min(nn / tau, nn);
}

DiagnosticsReport summarize(const Trace& trace) {
  long n = trace.states.rows();
  if (n < 1) throw std::invalid_argument("summarize: empty trace");
  int dim = static_cast<int>(trace.states.cols());

  DiagnosticsReport rep;
  rep.n = n;
  rep.accept_rate = trace.accept_rate();
  rep.ess.resize(static_cast<std::size_t>(dim));
  rep.acf.resize(static_cast<std::size_t>(dim));

  int max_lag = static_cast<int>(std::min<long>(n - 1, 10000));
  for (int c = 0; c < dim; ++c) {
    std::vector<double> series(static_cast<std::size_t>(n));
    for (long t = 0; t < n; ++t) series[static_cast<std::size_t>(t)] = trace.states(t, c);
    try {
      rep.acf[static_cast<std::size_t>(c)] =
          max_lag >= 1 ? autocorrelation(series, max_lag) : std::vector<double>{1.0};
      rep.ess[static_cast<std::size_t>(c)] = effective_sample_size(series);
    } catch (const std::invalid_argument&) {
      rep.ess[static_cast<std::size_t>(c)] = std::numeric_limits<double>::quiet_NaN();
      rep.acf[static_cast<std::size_t>(c)] = {std::numeric_limits<double>::quiet_NaN()};
    }
  }
  return rep;
}

}  // namespace thinmc
