#include "tycz/extrapolate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tycz {
namespace {

struct LinearFit {
  double limit, amplitude, sse;
};

LinearFit fit_fixed_exponent(std::span<const double> xi, std::span<const double> q, double beta) {
  const auto m = static_cast<Eigen::Index>(xi.size());
  Eigen::MatrixXd X(m, 2);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = std::pow(xi[static_cast<std::size_t>(i)], beta);
    b(i) = q[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d c = X.colPivHouseholderQr().solve(b);
  const double sse = (X * c - b).squaredNorm();
  return {c(0), c(1), sse};
}

PowerLimitFit fit_window(std::span<const double> xi, std::span<const double> q) {
  constexpr double lo = 0.1, hi = 6.0;
  constexpr int scan = 120;
  double best_beta = 1.0, best_sse = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= scan; ++k) {
    const double beta = lo * std::pow(hi / lo, static_cast<double>(k) / scan);
    const double sse = fit_fixed_exponent(xi, q, beta).sse;
    if (sse < best_sse) {
      best_sse = sse;
      best_beta = beta;
    }
  }
  // golden section on log(beta) around the best grid node
  const double step = std::log(hi / lo) / scan;
  double a = std::log(best_beta) - step, b = std::log(best_beta) + step;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = fit_fixed_exponent(xi, q, std::exp(c)).sse;
  double fd = fit_fixed_exponent(xi, q, std::exp(d)).sse;
  for (int it = 0; it < 60; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = fit_fixed_exponent(xi, q, std::exp(c)).sse;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = fit_fixed_exponent(xi, q, std::exp(d)).sse;
    }
  }
  const double beta = std::exp(0.5 * (a + b));
  const auto fit = fit_fixed_exponent(xi, q, beta);
  PowerLimitFit out;
  out.limit = fit.limit;
  out.amplitude = fit.amplitude;
  out.exponent = beta;
  out.points = xi.size();
  out.rms_residual = std::sqrt(fit.sse / static_cast<double>(xi.size()));
  return out;
}

}  // namespace

PowerLimitFit fit_power_limit(std::span<const double> xi, std::span<const double> q) {
  if (xi.size() != q.size()) throw std::invalid_argument("fit_power_limit: size mismatch");
  if (xi.size() < 8) throw std::invalid_argument("fit_power_limit: need at least 8 points");
  for (double x : xi)
    if (!(x > 0.0)) throw std::invalid_argument("fit_power_limit: abscissae must be positive");

  auto full = fit_window(xi, q);

  // inner half: the points closest to the limit
  std::vector<std::size_t> idx(xi.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return xi[i] < xi[j]; });
  const std::size_t half = xi.size() / 2;
  std::vector<double> xi_in, q_in;
  for (std::size_t k = 0; k < half; ++k) {
    xi_in.push_back(xi[idx[k]]);
    q_in.push_back(q[idx[k]]);
  }
  const auto inner = fit_window(xi_in, q_in);
  full.uncertainty = std::abs(full.limit - inner.limit) + full.rms_residual;
  return full;
}

EvenPolyFit fit_even_polynomial(std::span<const double> r, std::span<const double> q, int degree) {
  if (r.size() != q.size()) throw std::invalid_argument("fit_even_polynomial: size mismatch");
  if (degree < 1 || static_cast<int>(r.size()) < 2 * (degree + 1))
    throw std::invalid_argument("fit_even_polynomial: too few points for the degree");
  const double rmax = *std::max_element(r.begin(), r.end());

  auto solve = [&](int deg) {
    const auto m = static_cast<Eigen::Index>(r.size());
    Eigen::MatrixXd X(m, deg + 1);
    Eigen::VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double s = std::pow(r[static_cast<std::size_t>(i)] / rmax, 2);
      double pw = 1.0;
      for (int k = 0; k <= deg; ++k) {
        X(i, k) = pw;
        pw *= s;
      }
      b(i) = q[static_cast<std::size_t>(i)];
    }
    Eigen::VectorXd c = X.colPivHouseholderQr().solve(b);
    const double rms = std::sqrt((X * c - b).squaredNorm() / static_cast<double>(m));
    for (int k = 0; k <= deg; ++k) c(k) /= std::pow(rmax, 2 * k);
    return std::pair{c, rms};
  };

  const auto [c, rms] = solve(degree);
  const auto [c_lower, rms_lower] = solve(degree - 1);
  (void)rms_lower;
  EvenPolyFit out;
  out.coeffs.assign(c.data(), c.data() + c.size());
  out.limit = c(0);
  out.rms_residual = rms;
  out.uncertainty = std::abs(c(0) - c_lower(0));
  return out;
}

}  // namespace tycz
