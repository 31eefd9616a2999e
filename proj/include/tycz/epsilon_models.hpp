#pragma once

// ε-functions of model spaces from orthonormal monomial bases, asymptotic
// fits of the expansion coefficients, and the weighted norm of the section
// h(z) = Π 1/(z_j - 2a) on Calabi's tube domain.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tycz/calabi_ode.hpp"

namespace tycz {

using cplx = std::complex<double>;

class EpsilonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All ε values are normalized by the volume form of the metric ∂∂̄Φ times
/// Lebesgue measure (dx dy per coordinate); the overall constant is fitted.
struct EpsilonValue {
  double value = 0;
  double tail_bound = 0;  // bound on the omitted part of the series
  int terms = 0;
};

/// Φ = |z|²: e^{-αΦ} Σ_J |z^J|² / ‖z^J‖².
EpsilonValue epsilon_flat(double alpha, int n, const Eigen::VectorXcd& z);

/// Ball in C^n with Φ = -μ log(1 - |z|²), s = αμ. Needs s > n (otherwise
/// every monomial has infinite norm and the space is trivial).
EpsilonValue epsilon_disc(double alpha, double mu, const Eigen::VectorXcd& z);

/// Degree-N sections over C^n ⊂ CP^n with Φ = k log(1 + |z|²), N = m k
/// (m an integer level).
EpsilonValue epsilon_projective(int m, const Eigen::VectorXcd& z, double k = 1.0);

/// ε for Φ = |z|² in one variable with the first `k` orthonormal monomials
/// replaced by a random unitary mixture of them (seeded), the rest unchanged.
double epsilon_flat_mixed_basis(double alpha, cplx z, int k, std::uint64_t seed);

enum class NormMethod { closed_form, radial_quadrature };

/// ‖z^k‖² on the unit disc with weight (1 - |z|²)^s and the volume form of
/// Φ = -μ log(1 - |z|²).
double disc_monomial_norm2(int k, double alpha, double mu, NormMethod method);

struct ExpansionFit {
  double c = 0;                 // overall normalization
  std::vector<double> a_hat;    // a_1 .. a_order relative to a_0 = 1
  std::vector<double> stderr_;  // standard errors of a_hat
  double residual = 0;          // rms of relative residuals
};

struct EpsilonSeries {
  std::string model;
  int n = 1;
  std::vector<double> alphas;
  std::vector<double> values;
  ExpansionFit fit;
};

/// Least squares ε(α) = c (α^n + a1 α^{n-1} + ... + a_order α^{n-order}).
ExpansionFit fit_expansion(const std::vector<double>& alphas, const std::vector<double>& values,
                           int n, int order = 2);
ExpansionFit fit_expansion(const EpsilonSeries& series, int order = 2);

/// ε values of a model over a weight grid, fitted. For "projective" the grid
/// entries are rounded to integer levels.
EpsilonSeries epsilon_series(const std::string& model, int n, double scale,
                             const std::vector<double>& alphas, int order = 2);

// ---------------------------------------------------------------------------

struct QuadSettings {
  double rel_tol = 1e-10;
  unsigned max_depth = 18;
  double u_cut = 0.0;  // truncation |u| <= u_cut for the direct route; 0 = 40 a
};

struct SectionNormReport {
  double alpha = 0;
  double reduced_value = 0;
  double direct_value = 0;
  double reduced_error = 0;  // quadrature error estimate
  double direct_error = 0;
  double relative_gap = 0;
  double integrand_sup = 0;  // max of the reduced integrand on a polar grid
  bool finite = false;
};

/// ∫ e^{-αf} |h|² ω^n/n! over the tube, n = 2, by the reduced 2-D integral
/// π^n ∫_{|x|<a} e^{(1-α)f}/Π|x_j - 4a| and by 4-D quadrature over x and the
/// truncated imaginary directions with analytic tails.
SectionNormReport calabi_section_norm(double alpha, const RadialProfile& profile,
                                      const QuadSettings& quad = {});

/// ∫_R du / (u²/4 + C) by adaptive quadrature on the whole line (= 2π/√C).
double reduction_identity(double C, double rel_tol = 1e-12);

}  // namespace tycz
