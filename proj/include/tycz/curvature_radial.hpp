#pragma once

// Curvature of Calabi's tube metric for n = 2 in terms of the radial profile:
// closed forms of |R|² and ∂_r|R|², the radial Laplacian, the a3 profile and
// the endpoint limits r -> 0 and r -> a.

#include <Eigen/Dense>
#include <array>
#include <span>
#include <vector>

#include "tycz/calabi_ode.hpp"
#include "tycz/extrapolate.hpp"
#include "tycz/series.hpp"

namespace tycz {

// ---------------------------------------------------------------------------
// Closed forms in (r, e^y, y'). S is double or TaylorPoly<double>.

/// |R|²/2 as a sum of ten terms.
template <typename S>
S half_norm2_closed(const S& r, const S& e, const S& p) {
  return 2.0 - 8.0 * r * e / ipow(p, 3) + ipow(p, 4) / (ipow(r, 4) * e * e) + 4.0 / (r * p) +
         12.0 * r * r * e * e / ipow(p, 6) - 2.0 * p / (ipow(r, 3) * e) - 12.0 * e / ipow(p, 4) +
         6.0 * ipow(p, 3) / (ipow(r, 5) * e * e) - 12.0 / (ipow(r, 4) * e) +
         12.0 * p * p / (ipow(r, 6) * e * e);
}

/// (1/4) ∂_r|R|² as a sum of thirteen terms (valid on solutions of the ODE).
template <typename S>
S quarter_dnorm2_printed(const S& r, const S& e, const S& p) {
  return -4.0 * r * e / (p * p) + 24.0 * r * r * e * e / ipow(p, 5) -
         36.0 * ipow(r, 3) * e * e * e / ipow(p, 8) - 8.0 * ipow(p, 4) / (ipow(r, 5) * e * e) -
         ipow(p, 5) / (ipow(r, 4) * e * e) + 3.0 * p * p / (ipow(r, 3) * e) - 3.0 / (r * r * p) +
         18.0 * p / (ipow(r, 4) * e) - 27.0 * ipow(p, 3) / (ipow(r, 6) * e * e) +
         36.0 / (ipow(r, 5) * e) - 36.0 * p * p / (ipow(r, 7) * e * e) +
         36.0 * r * e * e / ipow(p, 6) - 12.0 * e / ipow(p, 3);
}

struct BoundaryDecomposition {
  double r = 0, A = 0, B = 0, C = 0;
};

/// (1/4) y' ∂_r|R|² = A + B + C, grouped as in the boundary analysis.
BoundaryDecomposition abc_terms(double r, double e, double p);

// ---------------------------------------------------------------------------

struct MetricMatrix {
  Eigen::Matrix2d G, Ginv;
};

/// Real Hessian of y(|x|) at (x1, x2) and its inverse, both in closed form.
MetricMatrix metric_at(double x1, double x2, const RadialProfile& profile);

struct CurvatureSample {
  double r = 0;
  double R2 = 0, dR2 = 0, d2R2 = 0, lapR2 = 0;
  double a1 = 0, a2 = 0, a3 = 0;
  double sigma = 0;
  double A = 0, B = 0, C = 0;
};

struct DerivativePair {
  double printed = 0;         // (1/4)∂_r|R|² formula, times 4
  double differentiated = 0;  // chain rule through the |R|² closed form
};

/// Curvature evaluator bound to one profile (n = 2). Below the origin-series
/// radius every quantity comes from the exact Taylor series of |R|² at r = 0;
/// above it from the closed forms with Taylor-mode differentiation.
class CalabiCurvature {
 public:
  explicit CalabiCurvature(const RadialProfile& profile);

  const RadialProfile& profile() const { return *profile_; }
  const TaylorPoly<double>& origin_series() const { return norm2_series_; }
  double series_radius() const { return series_radius_; }

  /// |R|², ∂_r|R|², ∂_r²|R|².
  std::array<double, 3> norm2_jet(double r) const;
  double norm2(double r) const { return norm2_jet(r)[0]; }
  /// The ten-term closed form evaluated directly, with no origin series.
  double norm2_closed(double r) const;
  DerivativePair derivative(double r) const;
  double laplacian(double fp, double fpp, double r) const;
  CurvatureSample sample(double r) const;

 private:
  const RadialProfile* profile_;
  TaylorPoly<double> norm2_series_;
  double series_radius_ = 0;
};

double riemann_norm2(double r, const RadialProfile& profile);
DerivativePair riemann_norm2_derivative(double r, const RadialProfile& profile);

/// Δf = f''/y'' + (n-1) f'/y' for a radial function f.
double radial_laplacian(double fp, double fpp, double r, const RadialProfile& profile);

/// Σ g^{ij} ∂_i ∂_j |R|² at (x1, x2) by fourth-order central differences of |R|²(|x|).
double direct_laplacian_norm2(double x1, double x2, const CalabiCurvature& curv, double h = 2e-3);

struct A3ProfileConfig {
  double yp_cap = 1e5;  // stop once y' exceeds this
  double r_min = 0.0;   // skip radii below this
};

/// Per-grid-radius curvature record. Rejects profiles whose ODE residual
/// exceeds 1e-9.
std::vector<CurvatureSample> a3_profile(const RadialProfile& profile, const A3ProfileConfig& cfg = {});

std::vector<BoundaryDecomposition> boundary_limit_decomposition(const RadialProfile& profile,
                                                                std::span<const double> radii);

// ---------------------------------------------------------------------------
// Endpoint limits.

/// Boundary-layer samples used for extrapolation: lo <= y' <= hi.
struct BoundaryWindow {
  double yp_lo = 1e3;
  double yp_hi = 1e5;
};

struct LimitEstimate {
  double estimate = 0;
  double uncertainty = 0;
  double exponent = 0;    // fitted rate (boundary fits)
  double last_value = 0;  // value at the sample closest to the endpoint
  std::size_t points = 0;
};

struct DecompositionLimits {
  LimitEstimate A, B, C, yp_dR2;
  double a = 0;
};

/// Fits A, B, C and y'∂_r|R|² against 1/y' on the window.
DecompositionLimits decomposition_limits(const RadialProfile& profile, const BoundaryWindow& w = {});

struct AuxiliaryLimits {
  LimitEstimate ey_yp3;  // e^y / y'^3
  LimitEstimate cubic;   // (y'^3 - 3 r e^y) / y'^2
  double cubic_growth = 0;  // max |y'^3 - 3 r e^y| on the profile
};

AuxiliaryLimits auxiliary_limits(const RadialProfile& profile, const BoundaryWindow& ratio_window = {},
                                 const BoundaryWindow& cubic_window = {1e2, 1e4});

struct NormLimits {
  LimitEstimate origin;     // even-polynomial fit of the closed form near r = 0
  double origin_series = 0; // constant term of the exact origin series
  LimitEstimate boundary;   // power-law fit on the boundary window
};

NormLimits norm2_limits(const RadialProfile& profile, const BoundaryWindow& w = {});

struct LogTrickReport {
  bool is_constant = false;
  double max_dev = 0;
  double mean = 0;
  double boundary_value = 0;
  std::size_t points = 0;
};

/// y'∂_r|R|² over the interior grid (r >= r_lo, y' <= window.yp_hi); the
/// boundary value is its extrapolation on the window.
LogTrickReport log_trick_check(const RadialProfile& profile, double r_lo = 0.05,
                               const BoundaryWindow& w = {});

/// Same test on externally sampled values of y'∂_r|R|².
LogTrickReport log_trick_check(std::span<const double> yp_dR2);

struct A3Witness {
  double r = 0;            // radius of max |a3|
  double a3 = 0;
  double error_bound = 0;  // refinement spread plus input-perturbation propagation
  double ratio = 0;        // |a3| / error_bound
};

/// Locates sup |a3| on the grid of `profile` and bounds its numerical error by
/// comparing with an independently configured solve.
A3Witness a3_nonvanishing_witness(const RadialProfile& profile, const RadialProfile& reference,
                           const A3ProfileConfig& cfg = {});

}  // namespace tycz
