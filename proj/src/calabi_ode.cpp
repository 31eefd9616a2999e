#include "tycz/calabi_ode.hpp"

#include "tycz/extrapolate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tycz {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double horner_derivative(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) acc = acc * t + static_cast<double>(k) * c[k];
  return acc;
}

// Taylor coefficients of (log r, log y') in tau = y - y_start for
//   d(log r)/dy  = exp(-log y' - log r)
//   d(log y')/dy = exp(y + (n-1) log r - (n+1) log y')
void taylor_coefficients(int n, double y_start, double rho0, double z0, int order,
                         std::vector<double>& rho, std::vector<double>& z) {
  const auto K = static_cast<std::size_t>(order);
  rho.assign(K + 1, 0.0);
  z.assign(K + 1, 0.0);
  std::vector<double> u1(K), u2(K), e1(K), e2(K);
  rho[0] = rho0;
  z[0] = z0;
  for (std::size_t k = 0; k < K; ++k) {
    u1[k] = -z[k] - rho[k];
    u2[k] = (n - 1) * rho[k] - (n + 1) * z[k];
    if (k == 0) u2[k] += y_start;
    if (k == 1) u2[k] += 1.0;
    if (k == 0) {
      e1[0] = std::exp(u1[0]);
      e2[0] = std::exp(u2[0]);
    } else {
      double a1 = 0.0, a2 = 0.0;
      for (std::size_t j = 1; j <= k; ++j) {
        a1 += static_cast<double>(j) * u1[j] * e1[k - j];
        a2 += static_cast<double>(j) * u2[j] * e2[k - j];
      }
      e1[k] = a1 / static_cast<double>(k);
      e2[k] = a2 / static_cast<double>(k);
    }
    rho[k + 1] = e1[k] / static_cast<double>(k + 1);
    z[k + 1] = e2[k] / static_cast<double>(k + 1);
  }
}

double step_size(const std::vector<double>& rho, const std::vector<double>& z, double tol) {
  const int K = static_cast<int>(rho.size()) - 1;
  double h = std::numeric_limits<double>::infinity();
  for (const auto* c : {&rho, &z}) {
    const double scale = tol * std::max(1.0, std::abs((*c)[0]));
    for (int k : {K, K - 1}) {
      const double ck = std::abs((*c)[static_cast<std::size_t>(k)]);
      if (ck > 0.0) h = std::min(h, std::pow(scale / ck, 1.0 / k));
    }
  }
  return 0.9 * h;
}

ProfileSample sample_from_segment(int n, const DenseSegment& s, double tau) {
  const double rho = horner(s.log_r, tau);
  const double z = horner(s.log_yp, tau);
  const double zp = horner_derivative(s.log_yp, tau);
  const double r = std::exp(rho);
  const double p = std::exp(z);
  return derivative_cascade(n, r, s.y_start + tau, p, p * p * zp);
}

ProfileSample sample_from_series(const TaylorPoly<double>& y, double r) {
  const auto d1 = y.derivative();
  const auto d2 = d1.derivative();
  const auto d3 = d2.derivative();
  const auto d4 = d3.derivative();
  return {r, y.eval(r), d1.eval(r), d2.eval(r), d3.eval(r), d4.eval(r)};
}

}  // namespace

ProfileSample derivative_cascade(int n, double r, double y, double yp, double ypp) {
  const double m = n - 1;
  const double L = yp + m / r - m * ypp / yp;
  const double yppp = ypp * L;
  const double Lp = ypp - m / (r * r) - m * (yppp / yp - (ypp * ypp) / (yp * yp));
  const double ypppp = yppp * L + ypp * Lp;
  return {r, y, yp, ypp, yppp, ypppp};
}

double ode_ypp(int n, double r, double y, double yp) {
  return std::exp(y + (n - 1) * (std::log(r) - std::log(yp)));
}

// ---------------------------------------------------------------------------

RadialProfile::RadialProfile(int n, double y0, std::vector<ProfileSample> samples,
                             double a_estimate, double a_uncertainty, double switch_radius,
                             TaylorPoly<double> origin_series, std::vector<DenseSegment> segments,
                             double y_error_estimate)
    : n_(n),
      y0_(y0),
      samples_(std::move(samples)),
      a_estimate_(a_estimate),
      a_uncertainty_(a_uncertainty),
      switch_radius_(switch_radius),
      origin_series_(std::move(origin_series)),
      segments_(std::move(segments)),
      y_error_estimate_(y_error_estimate) {
  if (n_ < 1) throw OdeError("complex dimension must be positive");
  if (samples_.size() < 2) throw OdeError("profile needs at least two samples");
  for (std::size_t i = 1; i < samples_.size(); ++i)
    if (!(samples_[i].r > samples_[i - 1].r)) throw OdeError("profile grid is not strictly increasing");
  if (!(samples_.front().r > 0.0)) throw OdeError("profile grid must start at r > 0");
}

RadialProfile RadialProfile::from_samples(int n, double y0, std::vector<ProfileSample> samples,
                                          double a_estimate, double a_uncertainty,
                                          int origin_series_order) {
  auto series = calabi_series<double>(y0, n, origin_series_order);
  const double rs = std::min(series_switch_radius(series, 1e-14),
                             samples.empty() ? 0.0 : samples.front().r);
  return RadialProfile(n, y0, std::move(samples), a_estimate, a_uncertainty, rs,
                       std::move(series), {}, 0.0);
}

std::vector<double> RadialProfile::grid() const {
  std::vector<double> r;
  r.reserve(samples_.size());
  for (const auto& s : samples_) r.push_back(s.r);
  return r;
}

ProfileSample RadialProfile::state_at(double r) const {
  if (!(r > 0.0) || r > r_max() * (1.0 + 4 * kEps))
    throw OdeError("radius " + std::to_string(r) + " outside profile coverage (0, " +
                   std::to_string(r_max()) + "]");
  if (r <= switch_radius_) return from_series(r);
  if (has_dense_output()) return from_segments(r);
  return interpolate_samples(r);
}

ProfileSample RadialProfile::from_series(double r) const {
  return sample_from_series(origin_series_, r);
}

ProfileSample RadialProfile::from_segments(double r) const {
  const double target = std::log(r);
  auto it = std::upper_bound(segments_.begin(), segments_.end(), target,
                             [](double v, const DenseSegment& s) { return v < s.log_r[0]; });
  if (it == segments_.begin()) return from_series(r);
  const DenseSegment& s = *(it - 1);
  // rho(tau) is strictly increasing; safeguarded Newton on [0, h]
  double lo = 0.0, hi = s.h;
  double tau = 0.0;
  const double rho_lo = s.log_r[0], rho_hi = horner(s.log_r, s.h);
  if (rho_hi > rho_lo) tau = s.h * std::clamp((target - rho_lo) / (rho_hi - rho_lo), 0.0, 1.0);
  for (int it_n = 0; it_n < 60; ++it_n) {
    const double f = horner(s.log_r, tau) - target;
    if (f > 0) hi = tau;
    else lo = tau;
    const double df = horner_derivative(s.log_r, tau);
    double next = tau - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - tau) <= 4 * kEps * std::max(1.0, std::abs(tau))) {
      tau = next;
      break;
    }
    tau = next;
  }
  auto out = sample_from_segment(n_, s, tau);
  out.r = r;
  return out;
}

ProfileSample RadialProfile::state_at_y(double y) const {
  if (!has_dense_output()) throw OdeError("state_at_y needs dense output");
  if (y < segments_.front().y_start) throw OdeError("y below the series handoff");
  auto it = std::upper_bound(segments_.begin(), segments_.end(), y,
                             [](double v, const DenseSegment& s) { return v < s.y_start; });
  const DenseSegment& s = *(it - 1);
  const double tau = y - s.y_start;
  if (tau > s.h * (1.0 + 1e-12)) throw OdeError("y beyond the integrated range");
  return sample_from_segment(n_, s, tau);
}

ProfileSample RadialProfile::interpolate_samples(double r) const {
  auto it = std::lower_bound(samples_.begin(), samples_.end(), r,
                             [](const ProfileSample& s, double v) { return s.r < v; });
  if (it == samples_.begin()) return from_series(r);
  if (it != samples_.end() && it->r == r) return *it;
  const ProfileSample& s1 = *it;
  const ProfileSample& s0 = *(it - 1);
  // quintic Hermite in y through (y, y', y'') at both ends
  const double h = s1.r - s0.r;
  const double c0 = s0.y, c1 = h * s0.yp, c2 = 0.5 * h * h * s0.ypp;
  const double A = s1.y - (c0 + c1 + c2);
  const double B = h * s1.yp - (c1 + 2 * c2);
  const double C = h * h * s1.ypp - 2 * c2;
  const double c3 = 10 * A - 4 * B + 0.5 * C;
  const double c4 = -15 * A + 7 * B - C;
  const double c5 = 6 * A - 3 * B + 0.5 * C;
  const double t = (r - s0.r) / h;
  const double y = c0 + t * (c1 + t * (c2 + t * (c3 + t * (c4 + t * c5))));
  const double dy = (c1 + t * (2 * c2 + t * (3 * c3 + t * (4 * c4 + t * 5 * c5)))) / h;
  return derivative_cascade(n_, r, y, dy, ode_ypp(n_, r, y, dy));
}

// ---------------------------------------------------------------------------

double series_switch_radius(const TaylorPoly<double>& y, double tol) {
  int top = y.order();
  while (top > 0 && y[top] == 0.0) --top;
  if (top == 0) return std::numeric_limits<double>::infinity();
  return std::pow(tol / std::abs(y[top]), 1.0 / top);
}

RadialProfile solve_profile(double y0, int n, const SolverConfig& cfg) {
  if (n < 1) throw OdeError("complex dimension must be positive");
  if (cfg.series_order < 6 || cfg.series_order % 2 != 0)
    throw OdeError("series_order must be even and >= 6");
  if (!(cfg.taylor_tol > 0) || !(cfg.series_tol > 0) || !(cfg.yp_max > 10) || !(cfg.max_dr > 0) ||
      cfg.taylor_order < 8 || cfg.origin_points_per_decade < 1 || cfg.boundary_points_per_decade < 1)
    throw OdeError("invalid solver configuration");

  // the series carries one extra even term; that term bounds the truncation error
  auto series = calabi_series<double>(y0, n, cfg.series_order + 2);
  const double r_s = series_switch_radius(series, cfg.series_tol);
  if (!(r_s > cfg.r_min)) throw OdeError("series handoff radius below r_min");

  std::vector<ProfileSample> samples;
  const int origin_pts = std::max(
      2, static_cast<int>(std::ceil(cfg.origin_points_per_decade * std::log10(r_s / cfg.r_min))));
  for (int i = 0; i < origin_pts; ++i) {
    const double r = cfg.r_min * std::pow(r_s / cfg.r_min, static_cast<double>(i) / origin_pts);
    samples.push_back(sample_from_series(series, r));
  }
  const ProfileSample handoff = sample_from_series(series, r_s);
  samples.push_back(handoff);

  const double dy_decade = (n + 1) * std::log(10.0) / cfg.boundary_points_per_decade;
  const double z_stop = std::log(cfg.yp_max);

  std::vector<DenseSegment> segments;
  double y_cur = handoff.y;
  double rho = std::log(handoff.r), z = std::log(handoff.yp);
  double rho_err = 0.0;  // accumulated error in log r
  double y_err = 0.0;
  double y_next = y_cur + std::min(dy_decade, handoff.yp * cfg.max_dr);
  std::vector<double> crho, cz;
  bool done = false;
  for (int step = 0; step < cfg.max_steps && !done; ++step) {
    taylor_coefficients(n, y_cur, rho, z, cfg.taylor_order, crho, cz);
    double h = step_size(crho, cz, cfg.taylor_tol);
    if (!(h > 0) || !std::isfinite(h)) throw OdeError("integrator step collapsed");
    double z_end = horner(cz, h);
    if (z_end >= z_stop) {
      // land exactly on y' = yp_max; log y' is increasing in tau
      double lo = 0.0, hi = h, tau = h * (z_stop - z) / (z_end - z);
      for (int it = 0; it < 80; ++it) {
        const double f = horner(cz, tau) - z_stop;
        if (f > 0) hi = tau;
        else lo = tau;
        double next = tau - f / horner_derivative(cz, tau);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - tau) <= 4 * kEps * std::max(1.0, tau)) {
          tau = next;
          break;
        }
        tau = next;
      }
      h = tau;
      z_end = horner(cz, h);
      done = true;
    }
    DenseSegment seg{y_cur, h, crho, cz};
    const std::size_t K = crho.size() - 1;
    rho_err += std::abs(crho[K]) * std::pow(h, static_cast<double>(K)) +
               std::abs(crho[K - 1]) * std::pow(h, static_cast<double>(K - 1)) +
               2 * kEps * std::max(1.0, std::abs(rho));

    while (y_next <= y_cur + h) {
      const auto s = sample_from_segment(n, seg, y_next - y_cur);
      samples.push_back(s);
      y_err = std::max(y_err, s.yp * s.r * rho_err);
      y_next += std::min(dy_decade, s.yp * cfg.max_dr);
    }
    rho = horner(crho, h);
    z = z_end;
    y_cur += h;
    segments.push_back(std::move(seg));
  }
  if (!done) throw OdeError("blow-up not reached within max_steps");

  const auto last = sample_from_segment(n, segments.back(), segments.back().h);
  if (last.r > samples.back().r * (1.0 + 1e-15)) samples.push_back(last);
  y_err = std::max(y_err, last.yp * last.r * rho_err);

  std::size_t beyond = 0;
  for (const auto& s : samples) beyond += s.r > r_s ? 1 : 0;
  if (beyond < 10) throw OdeError("blow-up reached before minimum grid coverage");

  // a = r + (n+1)/y' + O(1/y'^2); Richardson on the last two samples
  const auto& s2 = samples[samples.size() - 1];
  const auto& s1 = samples[samples.size() - 2];
  const double a2 = s2.r + (n + 1) / s2.yp;
  const double a1 = s1.r + (n + 1) / s1.yp;
  const double w2 = s2.yp * s2.yp, w1 = s1.yp * s1.yp;
  const double a_rich = (a2 * w2 - a1 * w1) / (w2 - w1);
  const double a_unc = std::abs(a_rich - a2) + s2.r * rho_err + 8 * kEps * a_rich;

  RadialProfile profile(n, y0, std::move(samples), a_rich, a_unc, r_s, std::move(series),
                        std::move(segments), y_err);
  const double res = ode_residual(profile);
  if (!(res <= 1e-9))
    throw OdeError("residual tolerance unachievable: max relative residual " + std::to_string(res));
  return profile;
}

// ---------------------------------------------------------------------------

BoundaryEstimate estimate_boundary(const RadialProfile& profile) {
  const int n = profile.n();
  const auto samples = profile.samples();
  if (samples.back().yp < 1e6)
    throw OdeError("profile not integrated deep enough for boundary extrapolation (y' < 1e6)");
  // e^y / y'^{n+1} on the part of the boundary layer where it is still well
  // conditioned: 1e3 <= y' <= 1e5
  std::vector<double> xi, q;
  for (const auto& s : samples) {
    if (s.yp < 1e3 || s.yp > 1e5) continue;
    xi.push_back(1.0 / s.yp);
    q.push_back(std::exp(s.y - (n + 1) * std::log(s.yp)));
  }
  if (xi.size() < 16) throw OdeError("too few boundary-layer samples for extrapolation");
  const auto fit = fit_power_limit(xi, q);
  BoundaryEstimate out;
  out.a = profile.a_estimate();
  out.limit_ratio = fit.limit;
  // limit = 1 / ((n+1) a^{n-1}); for n = 1 the ratio carries no information on a
  out.a_from_limit = n == 1 ? out.a : std::pow(1.0 / ((n + 1) * fit.limit), 1.0 / (n - 1));
  out.spread = std::abs(out.a - out.a_from_limit) / out.a;
  return out;
}

double ode_residual(int n, std::span<const ProfileSample> samples) {
  double worst = 0.0;
  for (const auto& s : samples) {
    if (!(s.r > 0) || !(s.yp > 0) || !(s.ypp > 0)) return std::numeric_limits<double>::infinity();
    const double log_ratio = (n - 1) * (std::log(s.yp) - std::log(s.r)) + std::log(s.ypp) - s.y;
    const double rel = std::abs(std::expm1(log_ratio));
    if (!std::isfinite(rel)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, rel);
  }
  return worst;
}

double ode_residual(const RadialProfile& profile) {
  return ode_residual(profile.n(), profile.samples());
}

}  // namespace tycz
