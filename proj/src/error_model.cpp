#include "suc/error_model.hpp"

#include <cmath>
#include <stdexcept>

#include "suc/rng.hpp"

namespace suc {

void ErrorModelParams::validate() const {
  if (!(0.0 <= phi && phi < 1.0))
    throw std::invalid_argument("persistence must satisfy 0 <= phi < 1");
  if (max_dev < 0) throw std::invalid_argument("max_dev must be >= 0");
  if (sigma < 0) throw std::invalid_argument("sigma must be >= 0");
}

ErrorModelParams ErrorModelParams::calibrated(double max_dev, double phi) {
  ErrorModelParams p;
  p.phi = phi;
  p.max_dev = max_dev;
  p.sigma = calibrate_sigma(max_dev, phi);
  p.validate();
  return p;
}

double ma_coefficient(double phi, int i) {
  if (!(0.0 <= phi && phi < 1.0))
    throw std::invalid_argument("persistence must satisfy 0 <= phi < 1");
  if (i < 1)
    throw std::invalid_argument("moving-average coefficients start at i = 1");
  return std::pow(phi, i);
}

double variance_factor(double phi, int k) {
  if (!(0.0 <= phi && phi < 1.0))
    throw std::invalid_argument("persistence must satisfy 0 <= phi < 1");
  if (k < 1) throw std::invalid_argument("lead must be >= 1");
  const double p2 = phi * phi;
  if (p2 == 0.0) return 1.0;
  return (1.0 - std::pow(p2, k)) / (1.0 - p2);
}

double variance_factor_limit(double phi) {
  if (!(0.0 <= phi && phi < 1.0))
    throw std::invalid_argument("persistence must satisfy 0 <= phi < 1");
  return 1.0 / (1.0 - phi * phi);
}

double calibrate_sigma(double max_dev, double phi) {
  if (max_dev < 0) throw std::invalid_argument("max_dev must be >= 0");
  return max_dev / (3.0 * std::sqrt(variance_factor_limit(phi)));
}

std::vector<double> generate_errors(const ErrorModelParams& params,
                                    int max_lead, std::uint64_t seed) {
  params.validate();
  if (max_lead < 1) throw std::invalid_argument("max lead must be >= 1");
  Rng rng(seed);
  std::vector<double> eta(max_lead);
  for (double& e : eta) e = params.sigma * rng.next_normal();

  std::vector<double> eps(max_lead);
  for (int k = 1; k <= max_lead; ++k) {
    double v = eta[k - 1];
    for (int i = 1; i <= k - 1; ++i)
      v += std::pow(params.phi, i) * eta[k - 1 - i];
    eps[k - 1] = v;
  }
  return eps;
}

}  // namespace suc
