#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tycz/epsilon_models.hpp"
#include "tycz/tensor_oracle.hpp"

using namespace tycz;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXcd point(std::initializer_list<cplx> v) {
  Eigen::VectorXcd z(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto c : v) z(i++) = c;
  return z;
}

std::vector<double> grid(double lo, double hi, int count) {
  std::vector<double> g;
  for (int k = 0; k < count; ++k) g.push_back(lo + (hi - lo) * k / (count - 1));
  return g;
}

}  // namespace

TEST_CASE("flat epsilon") {
  // at z = 0 only the constant section contributes: 1/‖1‖² = α/π
  CHECK(epsilon_flat(2.0, 1, point({0.0})).value == doctest::Approx(2.0 / kPi).epsilon(1e-15));
  CHECK(epsilon_flat(2.0, 1, point({0.0})).terms == 1);
  for (double r : {0.3, 1.0, 2.0}) {
    const auto e = epsilon_flat(2.0, 1, point({std::polar(r, 0.4)}));
    CHECK(std::abs(e.value - 2.0 / kPi) < 1e-12);
    CHECK(e.tail_bound < 1e-14);
  }
  for (int a = 1; a <= 20; ++a)
    CHECK(epsilon_flat(a, 1, point({cplx(0.7, -0.4)})).value / a == doctest::Approx(1 / kPi).epsilon(1e-12));
  CHECK(epsilon_flat(3.0, 2, point({cplx(0.5, 0.1), cplx(-1, 0.3)})).value ==
        doctest::Approx(9 / (kPi * kPi)).epsilon(1e-12));
}

TEST_CASE("flat epsilon is independent of the orthonormal basis") {
  const double plain = epsilon_flat(2.5, 1, point({cplx(0.6, 0.2)})).value;
  for (std::uint64_t seed : {1u, 7u, 12345u})
    CHECK(std::abs(epsilon_flat_mixed_basis(2.5, cplx(0.6, 0.2), 16, seed) - plain) < 1e-12);
}

TEST_CASE("disc epsilon") {
  // ε = (s-1)...(s-n) / (μπ)^n with s = αμ
  for (double mu : {1.0, 0.5}) {
    for (double alpha : {6.0, 11.5}) {
      const double s = alpha * mu;
      for (auto z : {point({0.0}), point({cplx(0.3, 0.4)}), point({cplx(-0.8, 0.1)})})
        CHECK(epsilon_disc(alpha, mu, z).value == doctest::Approx((s - 1) / (mu * kPi)).epsilon(1e-10));
      const auto z2 = point({cplx(0.2, 0.3), cplx(-0.4, 0.1)});
      CHECK(epsilon_disc(alpha, mu, z2).value == doctest::Approx((s - 1) * (s - 2) / std::pow(mu * kPi, 2)).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(epsilon_disc(0.9, 1.0, point({0.1})), EpsilonError);
  CHECK_THROWS_AS(epsilon_disc(1.5, 1.0, point({0.1, 0.1})), EpsilonError);
  CHECK_THROWS_AS(epsilon_disc(5.0, 1.0, point({1.2})), EpsilonError);
}

TEST_CASE("disc monomial norms: closed form against radial quadrature") {
  for (double s : {1.3, 2.0, 4.5})
    for (int k : {0, 1, 5, 20}) {
      const double c = disc_monomial_norm2(k, s, 1.0, NormMethod::closed_form);
      const double q = disc_monomial_norm2(k, s, 1.0, NormMethod::radial_quadrature);
      CHECK(q == doctest::Approx(c).epsilon(1e-10));
    }
  CHECK_THROWS_AS(disc_monomial_norm2(2, 0.8, 1.0, NormMethod::closed_form), EpsilonError);
}

TEST_CASE("disc series tail bound") {
  const auto z = point({cplx(0.7, 0.5)});
  const auto e = epsilon_disc(4.0, 1.0, z);
  // direct sum with twice the number of terms
  const double s = 4.0, u = std::norm(z(0));
  double direct = 0;
  for (int d = 0; d < 2 * e.terms; ++d)
    direct += std::exp(s * std::log1p(-u) + d * std::log(u) + std::lgamma(d + s) - std::lgamma(d + 1.0) -
                       std::lgamma(s - 1) - std::log(kPi));
  CHECK(std::abs(direct - e.value) <= e.tail_bound + 1e-15 * e.value);
}

TEST_CASE("projective epsilon") {
  for (int m = 1; m <= 12; ++m)
    for (auto z : {point({0.0}), point({cplx(1.5, -2.0)})})
      CHECK(epsilon_projective(m, z).value == doctest::Approx((m + 1) / kPi).epsilon(1e-12));
  // second finite difference in m vanishes
  const auto z = point({cplx(0.4, 0.9)});
  for (int m = 1; m <= 10; ++m) {
    const double d2 = epsilon_projective(m + 2, z).value - 2 * epsilon_projective(m + 1, z).value +
                      epsilon_projective(m, z).value;
    CHECK(std::abs(d2) < 1e-12);
  }
  const auto z3 = point({cplx(0.4, 0.9), cplx(-1, 0.2), cplx(0.1, 0.1)});
  CHECK(epsilon_projective(5, z3).value == doctest::Approx(6.0 * 7 * 8 / std::pow(kPi, 3)).epsilon(1e-12));
  CHECK_THROWS_AS(epsilon_projective(0, z), EpsilonError);
}

TEST_CASE("fits recover the curvature coefficients") {
  const auto flat = epsilon_series("flat", 1, 1.0, grid(1, 20, 20), 2);
  CHECK(flat.fit.residual < 1e-12);
  CHECK(std::abs(flat.fit.a_hat[0]) < 1e-10);
  CHECK(std::abs(flat.fit.a_hat[1]) < 1e-10);

  const auto geo_p = model_space_data(ModelSpace::projective, 1);
  const auto proj = epsilon_series("projective", 1, 1.0, grid(2, 30, 15), 2);
  CHECK(std::abs(proj.fit.a_hat[0] + geo_p.sigma / 2) < 1e-6);
  CHECK(std::abs(proj.fit.a_hat[1] - geo_p.coeffs.a2) < 1e-3);

  for (double mu : {1.0, 2.0}) {
    const auto geo_h = model_space_data(ModelSpace::hyperbolic, 2, mu);
    const auto disc = epsilon_series("disc", 2, mu, grid(6 / mu, 60 / mu, 16), 2);
    CHECK(std::abs(disc.fit.a_hat[0] + geo_h.sigma / 2) < 1e-3);
    CHECK(std::abs(disc.fit.a_hat[1] - geo_h.coeffs.a2) < 1e-3);
  }
}

TEST_CASE("fit stability on the upper half of the weight range") {
  // exact disc values carrying a deterministic relative jitter of 1e-8
  std::vector<double> al, v;
  for (int k = 0; k < 24; ++k) al.push_back(4 * std::exp2(k / 3.0));
  for (int k = 0; k < 24; ++k) v.push_back((al[k] - 1) * (al[k] - 2) * (1 + 1e-8 * std::sin(7.0 * k)));
  const auto full = fit_expansion(al, v, 2, 2);
  const std::vector<double> al2(al.begin() + 12, al.end()), v2(v.begin() + 12, v.end());
  const auto upper = fit_expansion(al2, v2, 2, 2);
  const double se = std::hypot(full.stderr_[0], upper.stderr_[0]);
  CHECK(se > 0);
  CHECK(std::abs(upper.a_hat[0] - full.a_hat[0]) < 10 * se);
}

TEST_CASE("ill-conditioned fits are rejected") {
  CHECK_THROWS_AS(fit_expansion(grid(10, 20, 10), std::vector<double>(10, 1.0), 1, 2), EpsilonError);
  CHECK_THROWS_AS(fit_expansion(grid(1, 20, 4), std::vector<double>(4, 1.0), 1, 2), EpsilonError);
  CHECK_THROWS_AS(epsilon_series("sphere", 1, 1.0, grid(1, 20, 8), 2), EpsilonError);
}

TEST_CASE("reduction identity") {
  for (double C : {0.1, 1.0, 5.0, 100.0})
    CHECK(reduction_identity(C) == doctest::Approx(2 * kPi / std::sqrt(C)).epsilon(1e-10));
  CHECK(reduction_identity(1.0) == doctest::Approx(2 * kPi).epsilon(1e-12));
}

TEST_CASE("section norm on the tube domain") {
  const auto prof = solve_profile(0.0, 2);
  for (double alpha : {2.0, 3.0}) {
    const auto rep = calabi_section_norm(alpha, prof);
    CHECK(rep.finite);
    CHECK(rep.reduced_value > 0);
    CHECK(rep.relative_gap <= 1e-4);
    CHECK(std::isfinite(rep.integrand_sup));
  }
  // larger weights damp the boundary: the norm decreases in α
  CHECK(calabi_section_norm(3.0, prof).reduced_value < calabi_section_norm(2.0, prof).reduced_value);
  CHECK_THROWS_AS(calabi_section_norm(1.0, prof), EpsilonError);
  CHECK_THROWS_AS(calabi_section_norm(2.0, solve_profile(0.0, 3)), EpsilonError);
}
