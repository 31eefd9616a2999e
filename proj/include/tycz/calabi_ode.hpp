#pragma once

// Radial profile of Calabi's tube metric: (y'/r)^{n-1} y'' = e^y on [0, a),
// y'(0) = 0, y''(0) = e^{y0/n}, integrated up to the blow-up radius a.

#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "tycz/series.hpp"

namespace tycz {

class OdeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// y and its first four r-derivatives at radius r.
struct ProfileSample {
  double r = 0, y = 0, yp = 0, ypp = 0, yppp = 0, ypppp = 0;
};

/// Fills yppp and ypppp from (r, y, yp, ypp) by differentiating
/// log y'' = y + (n-1) log r - (n-1) log y' twice.
ProfileSample derivative_cascade(int n, double r, double y, double yp, double ypp);

/// y'' from the ODE itself.
double ode_ypp(int n, double r, double y, double yp);

struct SolverConfig {
  int series_order = 40;              // even, >= 6
  double series_tol = 1e-14;          // next omitted series term at the handoff
  int taylor_order = 28;              // order of the Taylor integrator past the handoff
  double taylor_tol = 2e-17;          // local truncation target, relative
  double yp_max = 1e9;                // stop once y' exceeds this
  double r_min = 1e-4;                // first grid radius
  int origin_points_per_decade = 50;  // geometric grid inside the series region
  int boundary_points_per_decade = 200;  // per decade of (a - r)
  double max_dr = 5e-3;               // grid spacing cap in the interior
  int max_steps = 200000;
};

/// One Taylor step of the integrator in the independent variable y:
/// log r and log y' as polynomials in (y - y_start) on [0, h].
struct DenseSegment {
  double y_start = 0, h = 0;
  std::vector<double> log_r, log_yp;
};

/// Sampled solution of Calabi's ODE plus its dense representation.
/// Immutable once built.
class RadialProfile {
 public:
  RadialProfile(int n, double y0, std::vector<ProfileSample> samples, double a_estimate,
                double a_uncertainty, double switch_radius, TaylorPoly<double> origin_series,
                std::vector<DenseSegment> segments, double y_error_estimate);

  /// Profile built from externally supplied samples (e.g. a CSV file). It has
  /// no dense output; state_at interpolates between samples.
  static RadialProfile from_samples(int n, double y0, std::vector<ProfileSample> samples,
                                    double a_estimate, double a_uncertainty = 0.0,
                                    int origin_series_order = 40);

  int n() const { return n_; }
  double y0() const { return y0_; }
  std::span<const ProfileSample> samples() const { return samples_; }
  std::vector<double> grid() const;
  double a_estimate() const { return a_estimate_; }
  double a_uncertainty() const { return a_uncertainty_; }
  double switch_radius() const { return switch_radius_; }
  double r_max() const { return samples_.back().r; }
  double y_error_estimate() const { return y_error_estimate_; }
  const TaylorPoly<double>& origin_series() const { return origin_series_; }
  std::span<const DenseSegment> segments() const { return segments_; }
  bool has_dense_output() const { return !segments_.empty(); }

  bool covers(double r) const { return r > 0.0 && r <= r_max(); }

  /// Full derivative record at any radius in (0, r_max]. Uses the origin
  /// series below the switch radius and the dense Taylor output above it.
  ProfileSample state_at(double r) const;

  /// State at a value of y past the handoff (dense output only).
  ProfileSample state_at_y(double y) const;

 private:
  ProfileSample from_series(double r) const;
  ProfileSample from_segments(double r) const;
  ProfileSample interpolate_samples(double r) const;

  int n_;
  double y0_;
  std::vector<ProfileSample> samples_;
  double a_estimate_, a_uncertainty_, switch_radius_;
  TaylorPoly<double> origin_series_;
  std::vector<DenseSegment> segments_;
  double y_error_estimate_;
};

/// Series handoff radius: largest r with the next omitted term below tol.
double series_switch_radius(const TaylorPoly<double>& y, double tol);

RadialProfile solve_profile(double y0, int n, const SolverConfig& config = {});

struct BoundaryEstimate {
  double a = 0;             // from the integrator (asymptotic tail (n+1)/y')
  double a_from_limit = 0;  // from lim e^y / y'^{n+1} = 1/((n+1) a^{n-1})
  double limit_ratio = 0;   // extrapolated e^y / y'^{n+1}
  double spread = 0;        // |a - a_from_limit| / a
};

BoundaryEstimate estimate_boundary(const RadialProfile& profile);

/// max over the grid of |(y'/r)^{n-1} y'' - e^y| / e^y.
double ode_residual(const RadialProfile& profile);
double ode_residual(int n, std::span<const ProfileSample> samples);

}  // namespace tycz
