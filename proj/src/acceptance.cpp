#include "tycz/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "tycz/curvature_radial.hpp"
#include "tycz/epsilon_models.hpp"
#include "tycz/series.hpp"
#include "tycz/tensor_oracle.hpp"

namespace tycz {
namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

Check abs_check(std::string claim, double target, double computed, double tol) {
  return {std::move(claim), target, computed, tol, std::abs(computed - target) <= tol, "|computed - target| <= tol"};
}

Check rel_check(std::string claim, double target, double computed, double tol) {
  return {std::move(claim), target, computed, tol, std::abs(computed - target) <= tol * std::abs(target),
          "|computed - target| <= tol |target|"};
}

Check below_check(std::string claim, double computed, double bound) {
  return {std::move(claim), 0.0, computed, bound, std::abs(computed) <= bound, "|computed| <= tol"};
}

Check above_check(std::string claim, double threshold, double computed) {
  return {std::move(claim), threshold, computed, 0.0, computed > threshold, "computed > target"};
}

Check bool_check(std::string claim, bool expected, bool computed) {
  return {std::move(claim), expected ? 1.0 : 0.0, computed ? 1.0 : 0.0, 0.0, expected == computed,
          "computed == target"};
}

std::vector<double> interior_radii(double a, int count, double lo, double hi) {
  std::vector<double> r;
  for (int k = 0; k < count; ++k) r.push_back(a * (lo + (hi - lo) * k / (count - 1)));
  return r;
}

Eigen::VectorXcd tube_point(double x1, double x2, double u1 = 0, double u2 = 0) {
  Eigen::VectorXcd z(2);
  z << cplx(0.5 * x1, u1), cplx(0.5 * x2, u2);
  return z;
}

// ---------------------------------------------------------------------------

std::vector<Check> series_coefficients(const AcceptanceContext&) {
  std::vector<Check> out;
  for (double y0 : {-1.0, 0.0, 1.0}) {
    const auto y = calabi_series(y0, 2, 24);
    const std::string at = " (y0=" + format_double(y0) + ")";
    out.push_back(rel_check("b2 = e^{y0/2}/2" + at, std::exp(y0 / 2) / 2, y[2], 1e-12));
    out.push_back(rel_check("b4 = e^{y0}/32" + at, std::exp(y0) / 32, y[4], 1e-12));
    out.push_back(rel_check("b6 = 7e^{3y0/2}/2304" + at, 7 * std::exp(1.5 * y0) / 2304, y[6], 1e-12));
  }
  return out;
}

std::vector<Check> p_series(const AcceptanceContext&) {
  std::vector<Check> out;
  for (double y0 : {-1.0, 0.0, 1.0}) {
    const auto pqs = pqs_series(calabi_series(y0, 2, 24));
    const std::string at = " (y0=" + format_double(y0) + ")";
    const double c2 = std::exp(y0) / 8, c4 = 7 * std::exp(1.5 * y0) / 384;
    out.push_back(rel_check("c2 = e^{y0}/8" + at, c2, pqs.P[2], 1e-12));
    out.push_back(rel_check("c4 = 7e^{3y0/2}/384" + at, c4, pqs.P[4], 1e-12));
    out.push_back(rel_check("Q0 = 2 c2" + at, 2 * c2, pqs.Q[0], 1e-12));
    out.push_back(rel_check("S0 = 8 c4" + at, 8 * c4, pqs.S[0], 1e-12));
  }
  return out;
}

std::vector<Check> origin_limits(const AcceptanceContext&) {
  std::vector<Check> out;
  double lo1 = 1e300, hi1 = -1e300, lo2 = 1e300, hi2 = -1e300;
  for (double y0 : {-2.0, -1.0, 0.0, 0.5, 1.5}) {
    const auto lim = limit_origin_expressions(calabi_series(y0, 2, 24));
    const std::string at = " (y0=" + format_double(y0) + ")";
    out.push_back(abs_check("L1 = -9/2" + at, -4.5, lim.L1, 1e-10));
    out.push_back(abs_check("L2 = 3/16" + at, 0.1875, lim.L2, 1e-10));
    out.push_back(rel_check("inner limit = -(9/2) e^{7y0/2}" + at, -4.5 * std::exp(3.5 * y0), lim.inner1, 1e-10));
    lo1 = std::min(lo1, lim.L1), hi1 = std::max(hi1, lim.L1);
    lo2 = std::min(lo2, lim.L2), hi2 = std::max(hi2, lim.L2);
  }
  out.push_back(below_check("L1 independent of y0 (spread)", hi1 - lo1, 1e-10));
  out.push_back(below_check("L2 independent of y0 (spread)", hi2 - lo2, 1e-10));
  return out;
}

std::vector<Check> curvature_limits(const AcceptanceContext& ctx) {
  const auto nl = norm2_limits(ctx.profile());
  std::vector<Check> out;
  auto c = abs_check("lim |R|^2 at 0", 1.5, nl.origin.estimate, 1e-6);
  c.detail += "; fit uncertainty " + sci(nl.origin.uncertainty);
  out.push_back(c);
  out.push_back(abs_check("|R|^2 origin series constant term", 1.5, nl.origin_series, 1e-12));
  c = abs_check("lim |R|^2 at a", 4.0 / 3.0, nl.boundary.estimate, 1e-4);
  c.detail += "; fit uncertainty " + sci(nl.boundary.uncertainty);
  out.push_back(c);
  return out;
}

std::vector<Check> boundary_decomposition(const AcceptanceContext& ctx) {
  const auto d = decomposition_limits(ctx.profile());
  const double s = 3.0 / (d.a * d.a);
  std::vector<Check> out;
  out.push_back(below_check("A -> 0 (value at the last window point)", d.A.last_value, 1e-3 * s));
  out.push_back(rel_check("lim B = -3/a^2", -s, d.B.estimate, 1e-3));
  out.push_back(rel_check("lim C = +3/a^2", s, d.C.estimate, 1e-3));
  out.push_back(below_check("lim y' d_r|R|^2 = 0", d.yp_dR2.estimate, 1e-3 * s));
  return out;
}

std::vector<Check> auxiliary(const AcceptanceContext& ctx) {
  const auto be = estimate_boundary(ctx.profile());
  const auto al = auxiliary_limits(ctx.profile());
  const double a = be.a;
  std::vector<Check> out;
  out.push_back(rel_check("lim e^y/y'^3 = 1/(3a)", 1 / (3 * a), al.ey_yp3.estimate, 1e-4));
  out.push_back(rel_check("lim (y'^3 - 3r e^y)/y'^2 = -3/(2a)", -1.5 / a, al.cubic.estimate, 1e-3));
  out.push_back(rel_check("blow-up radius: integrator vs e^y/y'^3 limit", a, be.a_from_limit, 1e-3));
  return out;
}

std::vector<Check> a3_nonvanishing(const AcceptanceContext& ctx) {
  const auto w = a3_nonvanishing_witness(ctx.profile(), ctx.reference());
  const auto lt = log_trick_check(ctx.profile());
  std::vector<Check> out;
  auto c = above_check("sup|a3| / error bound at the maximizer", 10.0, w.ratio);
  c.detail += "; r=" + format_double(w.r) + " a3=" + format_double(w.a3) + " bound=" + sci(w.error_bound);
  out.push_back(c);
  c = bool_check("y' d_r|R|^2 is not constant", false, lt.is_constant);
  c.detail += "; max deviation " + sci(lt.max_dev);
  out.push_back(c);
  return out;
}

std::vector<Check> oracle_equivalence(const AcceptanceContext& ctx) {
  const auto& prof = ctx.profile();
  const CalabiCurvature curv(prof);
  const auto fam = PotentialFamily::tube(ctx.profile_ptr());
  const double a = prof.a_estimate();
  double worst_norm = 0, worst_deriv = 0, worst_a3 = 0;
  for (double r : interior_radii(a, 20, 0.05, 0.95)) {
    const auto d = curvature_from_potential(fam, tube_point(r, 0));
    const double closed = curv.norm2_closed(r);
    worst_norm = std::max(worst_norm, std::abs(d.R2 - closed) / std::abs(closed));
  }
  for (double r : interior_radii(a, 20, 0.1, 0.95)) {
    const auto dp = curv.derivative(r);
    worst_deriv = std::max(worst_deriv,
                           std::abs(dp.printed - dp.differentiated) / std::max(1.0, std::abs(dp.differentiated)));
    const auto d = curvature_from_potential(fam, tube_point(r, 0));
    const auto s = curv.sample(r);
    const double closed_form = tycz_coeffs_ke(d.R2, s.lapR2, d.sigma / 2, 2).a3;
    const double pipeline = tycz_a3_pipeline_ke(d, s.lapR2);
    worst_a3 = std::max(worst_a3, std::abs(closed_form - pipeline) / std::abs(closed_form));
  }
  std::vector<Check> out;
  out.push_back(below_check("tensor |R|^2 vs closed form, max relative gap over 20 radii", worst_norm, 1e-6));
  out.push_back(below_check("printed vs differentiated d_r|R|^2, max relative gap over 20 radii", worst_deriv, 1e-7));
  out.push_back(below_check("a3: closed coefficient formula vs curvature pipeline, max relative gap", worst_a3, 1e-9));
  return out;
}

std::vector<Check> ke_identities(const AcceptanceContext& ctx) {
  const auto fam = PotentialFamily::tube(ctx.profile_ptr());
  const double a = ctx.profile().a_estimate();
  double ric_plus_g = 0, ric_minus_g = 0, sigma_dev = 0, sigma = 0, ric2_dev = 0, ricrr_dev = 0;
  double rricric_dev = 0, sigma3_dev = 0, divdiv = 0;
  for (double r : interior_radii(a, 20, 0.05, 0.95)) {
    const auto d = curvature_from_potential(fam, tube_point(r, 0));
    const auto lu = lu_scalars(d);
    ric_plus_g = std::max(ric_plus_g, (d.ric + d.g).cwiseAbs().maxCoeff());
    ric_minus_g = std::max(ric_minus_g, (d.ric - d.g).cwiseAbs().maxCoeff());
    if (std::abs(d.sigma + 2) >= sigma_dev) sigma_dev = std::abs(d.sigma + 2), sigma = d.sigma;
    ric2_dev = std::max(ric2_dev, std::abs(d.Ric2 - 2));
    ricrr_dev = std::max(ricrr_dev, std::abs(lu.RicRR + d.R2));
    rricric_dev = std::max(rricric_dev, std::abs(lu.RRicRic + 2));
    sigma3_dev = std::max(sigma3_dev, std::abs(lu.sigma3 + 2));
    divdiv = std::max(divdiv, std::abs(lu.divdivRRic));
  }
  std::vector<Check> out;
  auto c = below_check("max|Ric + g| over 20 radii", ric_plus_g, 1e-8);
  c.detail += "; max|Ric - g| = " + sci(ric_minus_g);
  out.push_back(c);
  out.push_back(abs_check("sigma = -2", -2.0, sigma, 1e-8));
  out.push_back(below_check("max ||Ric|^2 - 2|", ric2_dev, 1e-8));
  out.push_back(below_check("max |Ric(R,R) + |R|^2|", ricrr_dev, 1e-8));
  out.push_back(below_check("max |R(Ric,Ric) + 2|", rricric_dev, 1e-8));
  out.push_back(below_check("max |sigma3(Ric) + 2|", sigma3_dev, 1e-8));
  out.push_back(below_check("max |div div(R,Ric)|", divdiv, 1e-8));
  return out;
}

std::vector<Check> model_dichotomy(const AcceptanceContext&) {
  std::vector<Check> out;
  for (int n = 1; n <= 4; ++n)
    out.push_back(below_check("flat a3 = 0 (n=" + std::to_string(n) + ")",
                              model_space_data(ModelSpace::flat, n).coeffs.a3, 1e-12));
  for (auto m : {ModelSpace::hyperbolic, ModelSpace::projective})
    out.push_back(below_check(model_name(m) + " a3 = 0 (n=2)", model_space_data(m, 2).coeffs.a3, 1e-12));
  for (auto m : {ModelSpace::hyperbolic, ModelSpace::projective}) {
    const auto d = model_space_data(m, 3);
    // nonzero with the sign of -λ(n-2)
    const double signed_a3 = d.coeffs.a3 * (d.lambda > 0 ? -1.0 : 1.0);
    auto c = above_check(model_name(m) + " a3 nonzero with sign of -lambda (n=3)", 1e-3, signed_a3);
    c.detail += "; a3=" + format_double(d.coeffs.a3) + " lambda=" + format_double(d.lambda);
    out.push_back(c);
  }
  return out;
}

std::vector<double> weight_grid(double lo, double hi, int count) {
  std::vector<double> a;
  for (int k = 0; k < count; ++k) a.push_back(lo + (hi - lo) * k / (count - 1));
  return a;
}

std::vector<Check> epsilon_fits(const AcceptanceContext&) {
  std::vector<Check> out;
  const auto flat = epsilon_series("flat", 1, 1.0, weight_grid(1, 20, 20), 2);
  out.push_back(below_check("flat n=1 fit residual", flat.fit.residual, 1e-12));
  out.push_back(below_check("flat n=1 a1_hat = 0", flat.fit.a_hat[0], 1e-10));
  out.push_back(below_check("flat n=1 a2_hat = 0", flat.fit.a_hat[1], 1e-10));

  struct Case {
    const char* eps_model;
    ModelSpace geometry;
    double lo, hi;
  };
  for (const Case& cs : {Case{"projective", ModelSpace::projective, 4, 40}, Case{"disc", ModelSpace::hyperbolic, 8, 80}}) {
    for (int n : {1, 2, 3}) {
      const auto geo = model_space_data(cs.geometry, n, 1.0);
      const auto eps = epsilon_series(cs.eps_model, n, 1.0, weight_grid(cs.lo, cs.hi, 16), std::max(2, n));
      const std::string tag = std::string(cs.eps_model) + " n=" + std::to_string(n);
      out.push_back(abs_check(tag + " a1_hat = -sigma/2", -geo.sigma / 2, eps.fit.a_hat[0], 1e-3));
      out.push_back(abs_check(tag + " a2_hat = (|R|^2 + n lambda^2 (3n-4))/24", geo.coeffs.a2, eps.fit.a_hat[1], 1e-3));
      if (n == 3) out.push_back(abs_check(tag + " a3_hat = a3", geo.coeffs.a3, eps.fit.a_hat[2], 1e-3));
    }
  }
  return out;
}

std::vector<Check> section_norm(const AcceptanceContext& ctx) {
  std::vector<Check> out;
  for (double alpha : {2.0, 3.0}) {
    const auto rep = calabi_section_norm(alpha, ctx.profile());
    const std::string at = " (alpha=" + format_double(alpha) + ")";
    auto c = bool_check("weighted norm of h is finite" + at, true, rep.finite);
    c.detail += "; value " + format_double(rep.reduced_value);
    out.push_back(c);
    out.push_back(below_check("reduced vs direct relative gap" + at, rep.relative_gap, 1e-4));
  }
  for (double C : {0.25, 1.0, 2.3, 9.0, 40.0})
    out.push_back(rel_check("int du/(u^2/4 + C) = 2pi/sqrt(C) (C=" + format_double(C) + ")",
                            2 * kPi / std::sqrt(C), reduction_identity(C), 1e-10));
  return out;
}

std::vector<Check> property_suites(const AcceptanceContext& ctx) {
  std::vector<Check> out;
  // series ring identities
  {
    const auto a = calabi_series(0.3, 2, 24);
    auto b = calabi_series(-0.7, 3, 24);
    for (int k = 1; k <= b.order(); k += 3) b[k] = 0.1 / k;
    double ring = 0, expo = 0;
    const auto q = series_div(series_mul(a, b), b);
    const auto e = series_mul(series_exp(a), series_exp(-a));
    for (int k = 0; k <= a.order(); ++k) {
      ring = std::max(ring, std::abs(q[k] - a[k]) / std::max(1.0, std::abs(a[k])));
      expo = std::max(expo, std::abs(e[k] - (k == 0 ? 1.0 : 0.0)));
    }
    out.push_back(below_check("(a b)/b = a coefficientwise", ring, 1e-13));
    out.push_back(below_check("exp(a) exp(-a) = 1 coefficientwise", expo, 1e-13));
  }
  // series ODE residual and odd-coefficient vanishing
  {
    double worst = 0;
    bool odd_zero = true;
    for (int n : {2, 3})
      for (double y0 : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        const auto y = calabi_series(y0, n, 24);
        odd_zero = odd_zero && has_vanishing_odd_part(y);
        const int m = y.order() - 2;
        const auto P = y.derivative().divided_by_power(1, 1.0, 0.0).truncated(m);
        const auto ypp = y.derivative().derivative().truncated(m);
        const auto res = series_mul(series_pow(P, n - 1), ypp) - series_exp(y.truncated(m));
        double scale = 0, big = 0;
        for (int k = 0; k <= m; ++k) scale = std::max(scale, std::abs(series_exp(y.truncated(m))[k])),
                                     big = std::max(big, std::abs(res[k]));
        worst = std::max(worst, big / scale);
      }
    out.push_back(below_check("series ODE residual through degree N-2", worst, 1e-12));
    out.push_back(bool_check("odd Taylor coefficients vanish", true, odd_zero));
  }
  // profile invariants
  const auto& prof = ctx.profile();
  {
    out.push_back(below_check("profile ODE residual", ode_residual(prof), 1e-9));
    bool mono = true;
    double prev_r = 0, prev_y = -1e300;
    for (const auto& s : prof.samples()) {
      mono = mono && s.r > prev_r && s.y > prev_y && s.yp > 0 && s.ypp > 0;
      prev_r = s.r, prev_y = s.y;
    }
    mono = mono && prof.r_max() < prof.a_estimate();
    out.push_back(bool_check("grid increasing, y' > 0, y'' > 0, r_max < a", true, mono));
    double fd3 = 0, fd4 = 0;
    const double a = prof.a_estimate();
    for (const auto& s : prof.samples()) {
      if (s.yp > 1e6) break;
      const double h = std::min(0.4 * s.r, 0.01 * (a - s.r));
      double f[5];
      for (int k = -2; k <= 2; ++k) f[k + 2] = prof.state_at(s.r + k * h).ypp;
      const double d1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h);
      const double d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h);
      fd3 = std::max(fd3, std::abs(d1 - s.yppp) / std::abs(s.yppp));
      fd4 = std::max(fd4, std::abs(d2 - s.ypppp) / std::abs(s.ypppp));
    }
    out.push_back(below_check("y''' vs centered differences of y''", fd3, 1e-5));
    out.push_back(below_check("y'''' vs centered differences of y''", fd4, 1e-5));
  }
  // Riemann symmetries, rotation and imaginary-translation invariance
  {
    const auto fam = PotentialFamily::tube(ctx.profile_ptr());
    double sym = 0, rot = 0;
    for (double r : interior_radii(prof.a_estimate(), 8, 0.05, 0.9)) {
      const double ref = curvature_from_potential(fam, tube_point(r, 0)).R2;
      for (double th : {0.4, 1.3, 2.9, 4.4}) {
        const auto d = curvature_from_potential(fam, tube_point(r * std::cos(th), r * std::sin(th), 0.7 * th, -1.1));
        sym = std::max(sym, riemann_symmetry_defect(d));
        rot = std::max(rot, std::abs(d.R2 - ref) / ref);
      }
    }
    for (auto m : {ModelSpace::flat, ModelSpace::projective, ModelSpace::hyperbolic})
      for (int n : {2, 3}) {
        Eigen::VectorXcd z(n);
        for (int i = 0; i < n; ++i) z(i) = cplx(0.2 + 0.05 * i, -0.1 * i);
        const auto fam_m = m == ModelSpace::flat        ? PotentialFamily::flat(n)
                           : m == ModelSpace::projective ? PotentialFamily::projective(n)
                                                         : PotentialFamily::hyperbolic(n);
        sym = std::max(sym, riemann_symmetry_defect(curvature_from_potential(fam_m, z)));
      }
    out.push_back(below_check("Riemann symmetry defect", sym, 1e-10));
    out.push_back(below_check("|R|^2 invariant under rotation and imaginary translation", rot, 1e-10));
    double homog = 0;
    for (auto m : {ModelSpace::flat, ModelSpace::projective, ModelSpace::hyperbolic})
      for (int n : {1, 2, 3}) homog = std::max(homog, model_space_data(m, n).homogeneity_defect);
    out.push_back(below_check("model-space invariants agree at 3 points", homog, 1e-10));
  }
  // decomposition recombination and Laplacian routes
  {
    const CalabiCurvature curv(prof);
    double worst = 0, lap = 0;
    for (double r : interior_radii(prof.a_estimate(), 20, 0.1, 0.95)) {
      const auto s = prof.state_at(r);
      const auto abc = abc_terms(r, std::exp(s.y), s.yp);
      const double lhs = 0.25 * s.yp * curv.derivative(r).printed;
      worst = std::max(worst, std::abs(abc.A + abc.B + abc.C - lhs) / std::max(1.0, std::abs(lhs)));
    }
    for (double r : {0.6, 1.2, 1.8}) {
      const auto j = curv.norm2_jet(r);
      const double radial = curv.laplacian(j[1], j[2], r);
      const double direct = direct_laplacian_norm2(r * std::cos(0.7), r * std::sin(0.7), curv);
      lap = std::max(lap, std::abs(radial - direct) / std::max(1.0, std::abs(radial)));
    }
    out.push_back(below_check("A + B + C = (1/4) y' d_r|R|^2", worst, 1e-10));
    out.push_back(below_check("radial vs finite-difference Laplacian of |R|^2", lap, 1e-7));
  }
  // determinism and serialization round trip
  {
    const auto p1 = solve_profile(prof.y0(), 2, ctx.config());
    const auto p2 = solve_profile(prof.y0(), 2, ctx.config());
    std::ostringstream s1, s2;
    write_profile_csv(s1, p1);
    write_profile_csv(s2, p2);
    out.push_back(bool_check("repeated solve is byte-identical", true, s1.str() == s2.str()));
    std::istringstream in(s1.str());
    const auto back = read_profile_csv(in);
    bool same = back.samples().size() == p1.samples().size();
    for (std::size_t i = 0; same && i < back.samples().size(); ++i)
      same = back.samples()[i].y == p1.samples()[i].y && back.samples()[i].ypppp == p1.samples()[i].ypppp;
    out.push_back(bool_check("profile CSV round trip is exact", true, same));
  }
  return out;
}

struct CriterionEntry {
  const char* name;
  const char* title;
  std::vector<Check> (*run)(const AcceptanceContext&);
};

const CriterionEntry kCriteria[] = {
    {"series_coefficients", "b2, b4, b6 of the origin series for y0 in {-1, 0, 1}", series_coefficients},
    {"p_series", "c2, c4 of y'/r and the Q, S constant terms", p_series},
    {"origin_limits", "origin limits -9/2 and 3/16, independent of y0", origin_limits},
    {"curvature_limits", "|R|^2 -> 3/2 at r -> 0 and 4/3 at r -> a", curvature_limits},
    {"boundary_decomposition", "A -> 0, B -> -3/a^2, C -> 3/a^2, y' d_r|R|^2 -> 0", boundary_decomposition},
    {"auxiliary_limits", "e^y/y'^3 -> 1/(3a), (y'^3 - 3r e^y)/y'^2 -> -3/(2a)", auxiliary},
    {"a3_nonvanishing", "sup|a3| exceeds 10x its error bound; log-trick quantity not constant", a3_nonvanishing},
    {"oracle_equivalence", "tensor vs closed-form |R|^2, derivative routes, a3 routes", oracle_equivalence},
    {"ke_identities", "Kahler-Einstein identities of the tube metric with Ric = -g", ke_identities},
    {"model_dichotomy", "a3 = 0 for flat and n=2 models, a3 != 0 for n=3 models", model_dichotomy},
    {"epsilon_fits", "expansion coefficients fitted from exact epsilon functions", epsilon_fits},
    {"section_norm", "weighted norm of h finite, two quadratures agree, 1-D reduction", section_norm},
    {"property_suites", "module invariants: ring, residual, symmetry, invariance, determinism", property_suites},
};

}  // namespace

bool CriterionResult::pass() const {
  if (!error.empty() || checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

SolverConfig AcceptanceContext::reference_config() {
  SolverConfig c;
  c.series_order = 30;
  c.taylor_order = 24;
  c.taylor_tol = 1e-16;
  c.boundary_points_per_decade = 150;
  return c;
}

AcceptanceContext::AcceptanceContext(const SolverConfig& cfg, double y0)
    : cfg_(cfg),
      profile_(std::make_shared<const RadialProfile>(solve_profile(y0, 2, cfg))),
      reference_(std::make_shared<const RadialProfile>(solve_profile(y0, 2, reference_config()))) {}

AcceptanceContext::AcceptanceContext(std::shared_ptr<const RadialProfile> profile)
    : profile_(std::move(profile)),
      reference_(std::make_shared<const RadialProfile>(solve_profile(profile_->y0(), 2, reference_config()))) {
  if (profile_->n() != 2) throw OdeError("the acceptance suite needs an n = 2 profile");
}

int criterion_count() { return static_cast<int>(std::size(kCriteria)); }

std::string criterion_name(int id) {
  if (id < 1 || id > criterion_count()) throw std::out_of_range("no criterion " + std::to_string(id));
  return kCriteria[id - 1].name;
}

CriterionResult run_criterion(int id, const AcceptanceContext& ctx) {
  if (id < 1 || id > criterion_count()) throw std::out_of_range("no criterion " + std::to_string(id));
  const CriterionEntry& s = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = s.name;
  r.title = s.title;
  try {
    r.checks = s.run(ctx);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<CriterionResult> run_all(const AcceptanceContext& ctx, int threads) {
  const int n = criterion_count();
  std::vector<CriterionResult> out(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < n;) out[static_cast<std::size_t>(i)] = run_criterion(i + 1, ctx);
  };
  const int t = std::clamp(threads, 1, n);
  std::vector<std::thread> pool;
  for (int k = 1; k < t; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

json check_json(const Check& c) {
  return json{{"claim", c.claim},     {"paper_claim", c.target}, {"target", c.target},
              {"computed", c.computed}, {"tolerance", c.tolerance}, {"pass", c.pass},
              {"comparison", c.detail}};
}

json criterion_json(const CriterionResult& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(check_json(c));
  json j{{"id", r.id}, {"name", r.name}, {"title", r.title}, {"pass", r.pass()}, {"checks", checks}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::string summary_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass() ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << " " << r.name << ": "
     << r.title;
  if (!r.error.empty()) os << " [error: " << r.error << "]";
  return os.str();
}

}  // namespace tycz
