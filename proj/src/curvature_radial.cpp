#include "tycz/curvature_radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tycz/tensor_oracle.hpp"

namespace tycz {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_n2(const RadialProfile& p) {
  if (p.n() != 2) throw OdeError("closed-form curvature is available for n = 2 only");
}

// |R|², ∂_r|R|², ∂_r²|R|² by Taylor-mode differentiation of the closed form.
std::array<double, 3> closed_jet(const ProfileSample& s) {
  using TP = TaylorPoly<double>;
  const TP r = TP::variable(s.r, 2);
  const TP y(std::vector<double>{s.y, s.yp, 0.5 * s.ypp});
  const TP p(std::vector<double>{s.yp, s.ypp, 0.5 * s.yppp});
  const TP half = half_norm2_closed(r, series_exp(y), p);
  return {2.0 * half[0], 2.0 * half[1], 4.0 * half[2]};
}

double closed_value(const ProfileSample& s) {
  return 2.0 * half_norm2_closed(s.r, std::exp(s.y), s.yp);
}

double sigma_at(const ProfileSample& s) {
  PotentialFamily fam;
  fam.kind = PotentialKind::tube_radial;
  fam.n = 2;
  fam.derivatives = [s](double) { return std::array<double, 5>{s.y, s.yp, s.ypp, s.yppp, s.ypppp}; };
  Eigen::VectorXcd z(2);
  z << cplx(0.5 * s.r, 0.0), cplx(0.0, 0.0);
  return curvature_from_potential(fam, z).sigma;
}

CurvatureSample assemble(const ProfileSample& s, const std::array<double, 3>& jet) {
  CurvatureSample c;
  c.r = s.r;
  c.R2 = jet[0];
  c.dR2 = jet[1];
  c.d2R2 = jet[2];
  c.lapR2 = c.d2R2 / s.ypp + c.dR2 / s.yp;
  c.sigma = sigma_at(s);
  const auto t = tycz_coeffs_ke(c.R2, c.lapR2, c.sigma / 2.0, 2);
  c.a1 = t.a1;
  c.a2 = t.a2;
  c.a3 = t.a3;
  const auto abc = abc_terms(s.r, std::exp(s.y), s.yp);
  c.A = abc.A;
  c.B = abc.B;
  c.C = abc.C;
  return c;
}

LimitEstimate to_estimate(const PowerLimitFit& f, double last) {
  return {f.limit, f.uncertainty, f.exponent, last, f.points};
}

template <typename F>
LimitEstimate fit_on_window(const RadialProfile& profile, const BoundaryWindow& w, F&& value) {
  std::vector<double> xi, q;
  double last = 0, last_yp = 0;
  for (const auto& s : profile.samples()) {
    if (s.yp < w.yp_lo || s.yp > w.yp_hi) continue;
    xi.push_back(1.0 / s.yp);
    q.push_back(value(s));
    if (s.yp > last_yp) {
      last_yp = s.yp;
      last = q.back();
    }
  }
  if (xi.size() < 16)
    throw OdeError("too few samples in the boundary window; integrate deeper or widen the window");
  return to_estimate(fit_power_limit(xi, q), last);
}

}  // namespace

BoundaryDecomposition abc_terms(double r, double e, double p) {
  BoundaryDecomposition d;
  d.r = r;
  const double r2 = r * r, r3 = r2 * r, r4 = r3 * r, r5 = r4 * r, r6 = r5 * r, r7 = r6 * r;
  const double p2 = p * p, p3 = p2 * p, p4 = p3 * p, p5 = p4 * p, p6 = p5 * p, p7 = p6 * p;
  const double e2 = e * e, e3 = e2 * e;
  d.A = -8 * p5 / (r5 * e2) + 18 * p2 / (r4 * e) - 27 * p4 / (r6 * e2) + 36 * p / (r5 * e) -
        36 * p3 / (r7 * e2);
  d.B = -p6 / (r4 * e2) + 3 * p3 / (r3 * e) - 3 / r2;
  d.C = -4 * r * e / p + 24 * r2 * e2 / p4 - 36 * r3 * e3 / p7 + 36 * r * e2 / p5 - 12 * e / p2;
  return d;
}

MetricMatrix metric_at(double x1, double x2, const RadialProfile& profile) {
  const double r = std::hypot(x1, x2);
  if (!(r > 0.0) || !(r < profile.a_estimate()) || !profile.covers(r))
    throw OdeError("metric_at: radius outside profile coverage");
  const auto s = profile.state_at(r);
  const double A = s.yp / r, D = s.ypp - A;
  const double Ai = r / s.yp, Di = 1.0 / s.ypp - Ai;
  const double c11 = x1 * x1 / (r * r), c12 = x1 * x2 / (r * r), c22 = x2 * x2 / (r * r);
  MetricMatrix m;
  m.G << A + D * c11, D * c12, D * c12, A + D * c22;
  m.Ginv << Ai + Di * c11, Di * c12, Di * c12, Ai + Di * c22;
  return m;
}

// ---------------------------------------------------------------------------

CalabiCurvature::CalabiCurvature(const RadialProfile& profile) : profile_(&profile) {
  require_n2(profile);
  const auto num = origin_numerators(profile.origin_series());
  const double scale = 8.0 * std::pow(std::max(std::abs(num.E[0]), num.P[0] * num.P[0]), 4);
  const double tol = 1e3 * kEps;
  const auto n1 = num.N1.divided_by_power(2, scale, tol);
  const auto n2 = num.N2.divided_by_power(4, scale, tol);
  const int m = n2.order();
  const auto P = num.P.truncated(m);
  const auto E = num.E.truncated(m);
  const auto E2 = series_mul(E, E);
  const auto P3 = series_pow(P, 3);
  const auto half = 2.0 + series_div(series_pow(P, 4), E2) + series_div(n1.truncated(m), series_mul(P3, E2)) +
                    12.0 * series_div(n2, series_mul(series_mul(P3, P3), E2));
  norm2_series_ = 2.0 * half;
  int top = m;
  while (top > 0 && norm2_series_[top] == 0.0) --top;
  const double rc = top > 0 ? std::pow(1e-14 * std::abs(norm2_series_[0]) / std::abs(norm2_series_[top]), 1.0 / top)
                            : std::numeric_limits<double>::infinity();
  series_radius_ = std::min({rc, profile.switch_radius(), profile.r_max()});
}

std::array<double, 3> CalabiCurvature::norm2_jet(double r) const {
  if (r <= series_radius_) {
    const auto d1 = norm2_series_.derivative();
    const auto d2 = d1.derivative();
    return {norm2_series_.eval(r), d1.eval(r), d2.eval(r)};
  }
  return closed_jet(profile_->state_at(r));
}

double CalabiCurvature::norm2_closed(double r) const { return closed_value(profile_->state_at(r)); }

DerivativePair CalabiCurvature::derivative(double r) const {
  const auto s = profile_->state_at(r);
  return {4.0 * quarter_dnorm2_printed(s.r, std::exp(s.y), s.yp), closed_jet(s)[1]};
}

double CalabiCurvature::laplacian(double fp, double fpp, double r) const {
  return radial_laplacian(fp, fpp, r, *profile_);
}

CurvatureSample CalabiCurvature::sample(double r) const {
  return assemble(profile_->state_at(r), norm2_jet(r));
}

double riemann_norm2(double r, const RadialProfile& profile) {
  return CalabiCurvature(profile).norm2(r);
}

DerivativePair riemann_norm2_derivative(double r, const RadialProfile& profile) {
  require_n2(profile);
  const auto s = profile.state_at(r);
  return {4.0 * quarter_dnorm2_printed(s.r, std::exp(s.y), s.yp), closed_jet(s)[1]};
}

double radial_laplacian(double fp, double fpp, double r, const RadialProfile& profile) {
  const auto s = profile.state_at(r);
  return fpp / s.ypp + (profile.n() - 1) * fp / s.yp;
}

double direct_laplacian_norm2(double x1, double x2, const CalabiCurvature& curv, double h) {
  const auto& profile = curv.profile();
  auto f = [&](double a, double b) { return curv.norm2(std::hypot(a, b)); };
  // fourth-order stencils
  auto d2 = [&](auto g) { return (-g(2) + 16 * g(1) - 30 * g(0) + 16 * g(-1) - g(-2)) / (12 * h * h); };
  const double fxx = d2([&](int k) { return f(x1 + k * h, x2); });
  const double fyy = d2([&](int k) { return f(x1, x2 + k * h); });
  auto d1 = [&](auto g) { return (-g(2) + 8 * g(1) - 8 * g(-1) + g(-2)) / (12 * h); };
  const double fxy = d1([&](int i) { return d1([&](int j) { return f(x1 + i * h, x2 + j * h); }); });
  const auto m = metric_at(x1, x2, profile);
  return m.Ginv(0, 0) * fxx + 2 * m.Ginv(0, 1) * fxy + m.Ginv(1, 1) * fyy;
}

std::vector<CurvatureSample> a3_profile(const RadialProfile& profile, const A3ProfileConfig& cfg) {
  require_n2(profile);
  const double res = ode_residual(profile);
  if (!(res <= 1e-9))
    throw OdeError("a3_profile: profile violates the ODE (relative residual " + std::to_string(res) + ")");
  const CalabiCurvature curv(profile);
  std::vector<CurvatureSample> out;
  for (const auto& s : profile.samples()) {
    if (s.r < cfg.r_min) continue;
    if (s.yp > cfg.yp_cap) break;
    out.push_back(assemble(s, curv.norm2_jet(s.r)));
  }
  return out;
}

std::vector<BoundaryDecomposition> boundary_limit_decomposition(const RadialProfile& profile,
                                                                std::span<const double> radii) {
  require_n2(profile);
  std::vector<BoundaryDecomposition> out;
  for (double r : radii) {
    if (!profile.covers(r)) throw OdeError("boundary_limit_decomposition: radius beyond profile coverage");
    const auto s = profile.state_at(r);
    out.push_back(abc_terms(r, std::exp(s.y), s.yp));
  }
  return out;
}

// ---------------------------------------------------------------------------

DecompositionLimits decomposition_limits(const RadialProfile& profile, const BoundaryWindow& w) {
  require_n2(profile);
  DecompositionLimits out;
  out.a = profile.a_estimate();
  auto abc = [](const ProfileSample& s) { return abc_terms(s.r, std::exp(s.y), s.yp); };
  out.A = fit_on_window(profile, w, [&](const ProfileSample& s) { return abc(s).A; });
  out.B = fit_on_window(profile, w, [&](const ProfileSample& s) { return abc(s).B; });
  out.C = fit_on_window(profile, w, [&](const ProfileSample& s) { return abc(s).C; });
  out.yp_dR2 = fit_on_window(profile, w, [&](const ProfileSample& s) {
    const auto d = abc(s);
    return 4.0 * (d.A + d.B + d.C);
  });
  return out;
}

AuxiliaryLimits auxiliary_limits(const RadialProfile& profile, const BoundaryWindow& ratio_window,
                                 const BoundaryWindow& cubic_window) {
  const int n = profile.n();
  AuxiliaryLimits out;
  out.ey_yp3 = fit_on_window(profile, ratio_window, [n](const ProfileSample& s) {
    return std::exp(s.y - (n + 1) * std::log(s.yp));
  });
  out.cubic = fit_on_window(profile, cubic_window, [](const ProfileSample& s) {
    return (s.yp * s.yp * s.yp - 3 * s.r * std::exp(s.y)) / (s.yp * s.yp);
  });
  for (const auto& s : profile.samples())
    out.cubic_growth = std::max(out.cubic_growth, std::abs(s.yp * s.yp * s.yp - 3 * s.r * std::exp(s.y)));
  return out;
}

NormLimits norm2_limits(const RadialProfile& profile, const BoundaryWindow& w) {
  require_n2(profile);
  const CalabiCurvature curv(profile);
  NormLimits out;
  std::vector<double> r, q;
  for (int k = 0; k <= 60; ++k) {
    const double rk = 0.04 + (0.4 - 0.04) * k / 60.0;
    r.push_back(rk);
    q.push_back(curv.norm2_closed(rk));
  }
  const auto fit = fit_even_polynomial(r, q, 8);
  out.origin = {fit.limit, fit.uncertainty + fit.rms_residual, 2.0, q.front(), r.size()};
  out.origin_series = curv.origin_series()[0];
  out.boundary = fit_on_window(profile, w, [](const ProfileSample& s) { return closed_value(s); });
  return out;
}

LogTrickReport log_trick_check(std::span<const double> v) {
  LogTrickReport rep;
  if (v.empty()) return rep;
  rep.points = v.size();
  rep.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (double x : v) rep.max_dev = std::max(rep.max_dev, std::abs(x - rep.mean));
  rep.is_constant = rep.max_dev < 1e-8;
  rep.boundary_value = v.back();
  return rep;
}

LogTrickReport log_trick_check(const RadialProfile& profile, double r_lo, const BoundaryWindow& w) {
  require_n2(profile);
  const CalabiCurvature curv(profile);
  std::vector<double> v;
  for (const auto& s : profile.samples()) {
    if (s.r < r_lo) continue;
    if (s.yp > w.yp_hi) break;
    v.push_back(s.yp * curv.norm2_jet(s.r)[1]);
  }
  auto rep = log_trick_check(v);
  rep.boundary_value = fit_on_window(profile, w, [](const ProfileSample& s) {
                         const auto d = abc_terms(s.r, std::exp(s.y), s.yp);
                         return 4.0 * (d.A + d.B + d.C);
                       }).estimate;
  return rep;
}

A3Witness a3_nonvanishing_witness(const RadialProfile& profile, const RadialProfile& reference,
                           const A3ProfileConfig& cfg) {
  const auto samples = a3_profile(profile, cfg);
  if (samples.empty()) throw OdeError("a3_nonvanishing_witness: empty a3 profile");
  const auto best = std::max_element(samples.begin(), samples.end(), [](const auto& a, const auto& b) {
    return std::abs(a.a3) < std::abs(b.a3);
  });
  A3Witness w;
  w.r = best->r;
  w.a3 = best->a3;
  const CalabiCurvature curv(profile);
  const CalabiCurvature ref(reference);
  const double spread = std::abs(ref.sample(w.r).a3 - w.a3);
  const auto s = profile.state_at(w.r);
  double propagated = 0;
  if (w.r <= curv.series_radius()) {
    // Horner roundoff of the origin series and its two derivatives
    const auto& c = curv.origin_series();
    double terms = 0;
    for (int k = 1; k <= c.order(); ++k) {
      const double ck = std::abs(c[k]);
      terms += ck * k * std::pow(w.r, k - 1) / s.yp;
      if (k >= 2) terms += ck * k * (k - 1) * std::pow(w.r, k - 2) / s.ypp;
    }
    propagated = 64 * kEps * terms / 48.0;
  } else {
    // relative perturbation of each input pushed through the closed form
    constexpr double delta = 1e-12;
    auto a3_of = [](const ProfileSample& t) {
      const auto jet = closed_jet(t);
      return (jet[2] / t.ypp + jet[1] / t.yp) / 48.0;
    };
    const double base = a3_of(s);
    for (int k = 0; k < 5; ++k) {
      ProfileSample t = s;
      double* field[] = {&t.y, &t.yp, &t.ypp, &t.yppp, &t.ypppp};
      *field[k] += delta * std::max(1.0, std::abs(*field[k]));
      propagated += std::abs(a3_of(t) - base);
    }
  }
  w.error_bound = spread + propagated + 64 * kEps * std::abs(w.a3);
  w.ratio = std::abs(w.a3) / w.error_bound;
  return w;
}

}  // namespace tycz
