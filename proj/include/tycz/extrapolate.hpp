#pragma once

// Endpoint-limit estimation from sampled data.

#include <cstddef>
#include <span>
#include <vector>

namespace tycz {

/// q(xi) = limit + amplitude * xi^exponent, xi -> 0+.
struct PowerLimitFit {
  double limit = 0;
  double amplitude = 0;
  double exponent = 0;
  double rms_residual = 0;
  double uncertainty = 0;  // spread between full-window and inner-half fits, plus rms
  std::size_t points = 0;
};

/// Least squares in (limit, amplitude) for each trial exponent, exponent
/// chosen by a coarse log-grid scan in [0.1, 6] refined by golden section.
PowerLimitFit fit_power_limit(std::span<const double> xi, std::span<const double> q);

/// q(r) = sum_k c_k r^{2k}, k = 0..degree, r -> 0.
struct EvenPolyFit {
  double limit = 0;
  std::vector<double> coeffs;
  double rms_residual = 0;
  double uncertainty = 0;  // |c_0(degree) - c_0(degree - 1)|
};

EvenPolyFit fit_even_polynomial(std::span<const double> r, std::span<const double> q, int degree);

}  // namespace tycz
