#pragma once

#include <cstdint>
#include <vector>

namespace suc {

// Forecast-error model: a predicted value relates to the true one by
// y_hat(t+k|t) = y(t+k) * (1 + eps_k), where eps is a moving-average process
//   eps_1 = eta_1,   eps_k = eta_k + sum_{i=1}^{k-1} phi^i * eta_{k-i}
// with eta ~ N(0, sigma) i.i.d. The geometric coefficients stabilize the
// error variance over lead times; sigma is calibrated so that |eps| stays
// below max_dev with three-sigma confidence at long leads.
struct ErrorModelParams {
  double phi = 0.9;       // persistence, 0 <= phi < 1
  double max_dev = 0.25;  // m, fraction of the true value
  double sigma = 0;       // derived; see calibrate()

  static ErrorModelParams calibrated(double max_dev, double phi);
  void validate() const;
};

// alpha_i = phi^i, i >= 1. Rejects i = 0 (coefficients start at 1).
double ma_coefficient(double phi, int i);

// Variance amplification A_k = (1 - phi^(2k)) / (1 - phi^2); nondecreasing in
// k with limit A_inf = 1 / (1 - phi^2).
double variance_factor(double phi, int k);
double variance_factor_limit(double phi);

// sigma = m / (3 * sqrt(A_inf)).
double calibrate_sigma(double max_dev, double phi);

// eps_1..eps_K (index 0 holds eps_1). Deterministic given the rng seed.
std::vector<double> generate_errors(const ErrorModelParams& params, int max_lead,
                                    std::uint64_t seed);

}  // namespace suc
