#include "tycz/epsilon_models.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <random>

namespace tycz {
namespace {

constexpr double kPi = boost::math::constants::pi<double>();
constexpr double kSeriesTol = 1e-16;

// Σ_d t_d for t_d = exp(log_term(d)) with t_{d+1}/t_d = ratio(d), eventually
// decreasing below 1; stops once the geometric tail bound is negligible.
template <typename LogTerm, typename Ratio>
EpsilonValue sum_series(LogTerm log_term, Ratio ratio, int max_terms = 200000) {
  EpsilonValue out;
  double sum = 0;
  for (int d = 0; d < max_terms; ++d) {
    const double t = std::exp(log_term(d));
    sum += t;
    const double q = ratio(d + 1);
    if (q < 1.0) {
      const double tail = t * ratio(d) / (1.0 - q);
      if (tail <= kSeriesTol * sum || t == 0.0) {
        out.value = sum;
        out.tail_bound = tail;
        out.terms = d + 1;
        return out;
      }
    }
  }
  throw EpsilonError("ε series did not converge within the term budget");
}

}  // namespace

EpsilonValue epsilon_flat(double alpha, int n, const Eigen::VectorXcd& z) {
  if (!(alpha > 0)) throw EpsilonError("epsilon_flat needs alpha > 0");
  if (z.size() != n) throw EpsilonError("point dimension mismatch");
  // the monomial basis factorizes over coordinates; ‖z^k‖² = π k! / α^{k+1}
  EpsilonValue out{1.0, 0.0, 0};
  double exact_part = 1.0, with_tail = 1.0;
  for (int i = 0; i < n; ++i) {
    const double u = std::norm(z(i));
    EpsilonValue e;
    if (u == 0.0) {
      e = {alpha / kPi, 0.0, 1};
    } else {
      const double lu = std::log(u), la = std::log(alpha);
      e = sum_series(
          [&](int k) { return -alpha * u + (k + 1) * la + k * lu - std::log(kPi) - std::lgamma(k + 1.0); },
          [&](int k) { return alpha * u / k; });
    }
    exact_part *= e.value;
    with_tail *= e.value + e.tail_bound;
    out.terms += e.terms;
  }
  out.value = exact_part;
  out.tail_bound = with_tail - exact_part;
  return out;
}

double epsilon_flat_mixed_basis(double alpha, cplx z, int k, std::uint64_t seed) {
  if (!(alpha > 0) || k < 1) throw EpsilonError("epsilon_flat_mixed_basis needs alpha > 0, k >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
  const Eigen::MatrixXcd U = Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
  // orthonormal sections e^{-α|z|²/2} z^j / ‖z^j‖ evaluated at z
  const double u = std::norm(z);
  Eigen::VectorXcd s(k);
  for (int j = 0; j < k; ++j) {
    const double log_norm2 = std::log(kPi) + std::lgamma(j + 1.0) - (j + 1) * std::log(alpha);
    s(j) = std::pow(z, j) * std::exp(-0.5 * alpha * u - 0.5 * log_norm2);
  }
  const double full = epsilon_flat(alpha, 1, Eigen::VectorXcd::Constant(1, z)).value;
  return (U * s).squaredNorm() + (full - s.squaredNorm());
}

EpsilonValue epsilon_disc(double alpha, double mu, const Eigen::VectorXcd& z) {
  const int n = static_cast<int>(z.size());
  if (!(mu > 0)) throw EpsilonError("epsilon_disc needs mu > 0");
  const double s = alpha * mu;
  if (!(s > n))
    throw EpsilonError("weighted Bergman space is trivial: alpha*mu = " + std::to_string(s) +
                       " must exceed n = " + std::to_string(n));
  const double u = z.squaredNorm();
  if (!(u < 1.0)) throw EpsilonError("point outside the ball");
  // ‖z^J‖² = (μπ)^n J! Γ(s-n) / Γ(|J|+s); the degree-d shell sums to u^d/d!
  const double base = s * std::log1p(-u) - std::lgamma(s - n) - n * std::log(mu * kPi);
  if (u == 0.0) return {std::exp(base + std::lgamma(s)), 0.0, 1};
  const double lu = std::log(u);
  return sum_series([&](int d) { return base + d * lu + std::lgamma(d + s) - std::lgamma(d + 1.0); },
                    [&](int d) { return u * (d - 1 + s) / d; });
}

EpsilonValue epsilon_projective(int m, const Eigen::VectorXcd& z, double k) {
  if (m < 1) throw EpsilonError("epsilon_projective needs m >= 1");
  if (!(k > 0)) throw EpsilonError("epsilon_projective needs k > 0");
  const int n = static_cast<int>(z.size());
  const double Nd = m * k;
  const int N = static_cast<int>(std::lround(Nd));
  if (std::abs(Nd - N) > 1e-12 * std::max(1.0, Nd)) throw EpsilonError("m k must be an integer");
  const double u = z.squaredNorm();
  // ‖z^J‖² = (kπ)^n J! Γ(N+1-|J|) / Γ(N+n+1), |J| <= N
  const double base = -N * std::log1p(u) + std::lgamma(N + n + 1.0) - n * std::log(k * kPi);
  EpsilonValue out;
  double sum = 0;
  for (int d = 0; d <= N; ++d) {
    if (u == 0.0 && d > 0) break;
    const double ld = d == 0 ? 0.0 : d * std::log(u);
    sum += std::exp(base + ld - std::lgamma(N + 1.0 - d) - std::lgamma(d + 1.0));
    out.terms = d + 1;
  }
  out.value = sum;
  return out;
}

double disc_monomial_norm2(int k, double alpha, double mu, NormMethod method) {
  const double s = alpha * mu;
  if (!(s > 1)) throw EpsilonError("monomial norm diverges for alpha*mu <= 1");
  if (k < 0) throw EpsilonError("negative monomial degree");
  if (method == NormMethod::closed_form)
    return kPi * mu * std::exp(std::lgamma(k + 1.0) + std::lgamma(s - 1) - std::lgamma(k + s));
  // π μ ∫_0^1 t^k (1-t)^{s-2} dt with t = |z|²
  boost::math::quadrature::tanh_sinh<double> ts;
  const double v = ts.integrate([&](double t, double tc) {
    const double one_minus = t < 0.5 ? 1.0 - t : tc;
    return std::pow(t, k) * std::pow(one_minus, s - 2);
  }, 0.0, 1.0);
  return kPi * mu * v;
}

// ---------------------------------------------------------------------------

ExpansionFit fit_expansion(const std::vector<double>& alphas, const std::vector<double>& values,
                           int n, int order) {
  if (alphas.size() != values.size()) throw EpsilonError("fit_expansion: size mismatch");
  if (order < 1) throw EpsilonError("fit_expansion: order must be positive");
  const auto m = static_cast<Eigen::Index>(alphas.size());
  if (m < 6 || m < order + 3) throw EpsilonError("fit_expansion: need at least 6 weights");
  const auto [lo, hi] = std::minmax_element(alphas.begin(), alphas.end());
  if (!(*lo > 0) || *hi / *lo < 4.0)
    throw EpsilonError("fit_expansion: ill-conditioned, weights must span a factor >= 4");

  const int p = order + 1;
  Eigen::MatrixXd X(m, p);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double a = alphas[static_cast<std::size_t>(i)];
    const double v = values[static_cast<std::size_t>(i)];
    // weighted by 1/ε so residuals are relative
    for (int j = 0; j < p; ++j) X(i, j) = std::pow(a, n - j) / v;
    b(i) = 1.0;
  }
  Eigen::VectorXd colscale = X.colwise().norm().transpose();
  const Eigen::MatrixXd Xs = X * colscale.cwiseInverse().asDiagonal();
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xs);
  const Eigen::VectorXd beta = qr.solve(b).cwiseQuotient(colscale);
  const Eigen::VectorXd res = X * beta - b;

  ExpansionFit fit;
  fit.c = beta(0);
  fit.residual = std::sqrt(res.squaredNorm() / static_cast<double>(m));
  const double dof = static_cast<double>(m - p);
  const double s2 = res.squaredNorm() / dof;
  const Eigen::MatrixXd cov = s2 * (X.transpose() * X).inverse();
  for (int j = 1; j < p; ++j) {
    const double a = beta(j) / beta(0);
    fit.a_hat.push_back(a);
    const double var = (cov(j, j) + a * a * cov(0, 0) - 2 * a * cov(0, j)) / (beta(0) * beta(0));
    fit.stderr_.push_back(std::sqrt(std::max(var, 0.0)));
  }
  return fit;
}

ExpansionFit fit_expansion(const EpsilonSeries& series, int order) {
  return fit_expansion(series.alphas, series.values, series.n, order);
}

EpsilonSeries epsilon_series(const std::string& model, int n, double scale,
                             const std::vector<double>& alphas, int order) {
  EpsilonSeries out;
  out.model = model;
  out.n = n;
  Eigen::VectorXcd z(n);
  for (int i = 0; i < n; ++i) z(i) = std::complex<double>(0.21 - 0.04 * i, 0.13 + 0.02 * i) / std::sqrt(double(n));
  for (double a : alphas) {
    double v = 0;
    if (model == "flat") {
      v = epsilon_flat(a * scale, n, z).value;
    } else if (model == "disc" || model == "hyperbolic") {
      v = epsilon_disc(a, scale, z).value;
    } else if (model == "projective") {
      const int m = static_cast<int>(std::lround(a));
      v = epsilon_projective(m, z, scale).value;
      a = m;
    } else {
      throw EpsilonError("unknown ε model '" + model + "' (flat, disc, projective)");
    }
    out.alphas.push_back(a);
    out.values.push_back(v);
  }
  out.fit = fit_expansion(out, order);
  return out;
}

// ---------------------------------------------------------------------------

double reduction_identity(double C, double rel_tol) {
  if (!(C > 0)) throw EpsilonError("reduction identity needs C > 0");
  using boost::math::quadrature::gauss_kronrod;
  const double inf = std::numeric_limits<double>::infinity();
  return gauss_kronrod<double, 61>::integrate([C](double u) { return 1.0 / (0.25 * u * u + C); },
                                              -inf, inf, 20, rel_tol);
}

SectionNormReport calabi_section_norm(double alpha, const RadialProfile& profile, const QuadSettings& q) {
  if (!(alpha > 1)) throw EpsilonError("section norm bound requires alpha > 1");
  if (profile.n() != 2) throw EpsilonError("section norm is implemented for n = 2");
  using boost::math::quadrature::gauss_kronrod;
  const double a = profile.a_estimate();
  const double R = profile.r_max();
  const double U = q.u_cut > 0 ? q.u_cut : 40.0 * a;
  auto weight = [&](double r) {
    const double y = r > 0 ? profile.state_at(r).y : profile.y0();
    return std::exp((1.0 - alpha) * y);
  };

  SectionNormReport rep;
  rep.alpha = alpha;

  // reduced: π² ∫_0^R ∫_0^{2π} e^{(1-α)y} r / ((4a - r cos θ)(4a - r sin θ)) dθ dr
  double err_outer = 0;
  const double reduced = gauss_kronrod<double, 31>::integrate(
      [&](double r) {
        const double inner = gauss_kronrod<double, 31>::integrate(
            [&](double t) { return 1.0 / ((4 * a - r * std::cos(t)) * (4 * a - r * std::sin(t))); }, 0.0,
            2 * kPi, q.max_depth, q.rel_tol);
        return weight(r) * r * inner;
      },
      0.0, R, q.max_depth, q.rel_tol, &err_outer);
  rep.reduced_value = kPi * kPi * reduced;
  rep.reduced_error = kPi * kPi * err_outer;

  // direct: 2^{-4} ∫ dx1 dx2 e^{(1-α)y} Π_j ∫ du_j / ((x_j - 4a)²/4 + u_j²/4), with the
  // imaginary directions integrated numerically on [-U, U] plus exact tails
  auto imag_factor = [&](double x) {
    const double C = 0.25 * (x - 4 * a) * (x - 4 * a);
    const double core = gauss_kronrod<double, 31>::integrate(
        [C](double u) { return 1.0 / (C + 0.25 * u * u); }, -U, U, q.max_depth, q.rel_tol);
    const double sc = std::sqrt(C);
    const double tails = 4.0 / sc * (kPi / 2 - std::atan(U / (2 * sc)));
    return core + tails;
  };
  double err_direct = 0;
  const double direct = gauss_kronrod<double, 31>::integrate(
      [&](double x1) {
        const double h = std::sqrt(std::max(R * R - x1 * x1, 0.0));
        if (h == 0.0) return 0.0;
        const double f1 = imag_factor(x1);
        const double inner = gauss_kronrod<double, 31>::integrate(
            [&](double x2) { return weight(std::min(std::hypot(x1, x2), R)) * imag_factor(x2); }, -h, h,
            q.max_depth, q.rel_tol);
        return f1 * inner;
      },
      -R, R, q.max_depth, q.rel_tol, &err_direct);
  rep.direct_value = direct / 16.0;
  rep.direct_error = err_direct / 16.0;
  rep.relative_gap = std::abs(rep.reduced_value - rep.direct_value) / std::abs(rep.reduced_value);

  for (int i = 0; i <= 50; ++i)
    for (int j = 0; j < 64; ++j) {
      const double r = R * i / 50.0, t = 2 * kPi * j / 64.0;
      const double v = weight(r) / ((4 * a - r * std::cos(t)) * (4 * a - r * std::sin(t)));
      rep.integrand_sup = std::max(rep.integrand_sup, v);
    }
  rep.finite = std::isfinite(rep.reduced_value) && std::isfinite(rep.direct_value) && rep.reduced_value > 0 &&
               rep.direct_value > 0 && rep.reduced_error <= 1e-6 * rep.reduced_value &&
               rep.direct_error <= 1e-6 * rep.direct_value && std::isfinite(rep.integrand_sup);
  return rep;
}

}  // namespace tycz
