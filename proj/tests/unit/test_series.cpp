#include <doctest.h>

#include <cmath>

#include "tycz/series.hpp"

using namespace tycz;
using TP = TaylorPoly<double>;

namespace {

double max_coeff_gap(const TP& a, const TP& b) {
  double m = 0;
  for (int k = 0; k <= a.order(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

TP exp_of_linear(double slope, int order) {
  TP t(order);
  t[1] = slope;
  return series_exp(t);
}

}  // namespace

TEST_CASE("product truncates at the common order") {
  const TP a(std::vector<double>{1, 1, 0, 0, 0});
  const TP b(std::vector<double>{1, -1, 0, 0, 0});
  const TP p = series_mul(a, b);
  CHECK(p.order() == 4);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 0.0);
  CHECK(p[2] == -1.0);
  CHECK(p[3] == 0.0);
  CHECK(p[4] == 0.0);
  CHECK(max_coeff_gap(series_mul(a, TP::constant(1.0, 4)), a) == 0.0);
}

TEST_CASE("square of the exponential series equals exp(2r)") {
  const TP e1 = exp_of_linear(1.0, 8);
  const TP e2 = exp_of_linear(2.0, 8);
  CHECK(max_coeff_gap(series_mul(e1, e1), e2) <= 1e-15);
}

TEST_CASE("exponential") {
  CHECK(max_coeff_gap(series_exp(TP(6)), TP::constant(1.0, 6)) == 0.0);
  const TP e = exp_of_linear(1.0, 5);
  const double fact[] = {1, 1, 2, 6, 24, 120};
  for (int k = 0; k <= 5; ++k) CHECK(e[k] == doctest::Approx(1.0 / fact[k]).epsilon(1e-15));

  const TP a = calabi_series(0.4, 2, 16) + TP::variable(0.0, 16) * 0.3;
  const TP ea = series_exp(a);
  const TP lhs = ea.derivative();
  const TP rhs = series_mul(a.derivative(), ea.truncated(15));
  CHECK(max_coeff_gap(lhs, rhs) <= 1e-13);
  CHECK(series_exp(calabi_series(0.0, 2, 6))[2] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("division") {
  const TP a = calabi_series(0.2, 2, 12) + 1.0;
  CHECK(max_coeff_gap(series_div(a, a), TP::constant(1.0, 12)) <= 1e-15);
  const TP one_minus_r(std::vector<double>{1, -1, 0, 0});
  const TP g = series_div(TP::constant(1.0, 3), one_minus_r);
  for (int k = 0; k <= 3; ++k) CHECK(g[k] == 1.0);
  CHECK_THROWS_AS(series_div(a, TP::variable(0.0, 12)), SeriesError);
  CHECK_THROWS_AS(series_mul(a, TP(5)), SeriesError);
}

TEST_CASE("ring identities on mixed series") {
  for (double y0 : {-1.5, 0.0, 0.7}) {
    TP a = calabi_series(y0, 2, 20);
    TP b = calabi_series(-y0, 3, 20) + 1.0;
    for (int k = 1; k <= 20; k += 3) b[k] = 0.05 * k;
    CHECK(max_coeff_gap(series_div(series_mul(a, b), b), a) <= 1e-13);
    CHECK(max_coeff_gap(series_mul(series_exp(a), series_exp(-a)), TP::constant(1.0, 20)) <= 1e-13);
  }
}

TEST_CASE("origin series coefficients for n = 2") {
  const TP y = calabi_series(0.0, 2, 14);
  CHECK(y[2] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(y[4] == doctest::Approx(1.0 / 32).epsilon(1e-15));
  CHECK(y[6] == doctest::Approx(7.0 / 2304).epsilon(1e-15));
  // exact rationals from a symbolic triangular solve of the ODE
  CHECK(y[8] == doctest::Approx(49.0 / 147456).epsilon(1e-13));
  CHECK(y[10] == doctest::Approx(19.0 / 491520).epsilon(1e-13));
  CHECK(y[12] == doctest::Approx(1987.0 / 424673280).epsilon(1e-13));
  CHECK(y[14] == doctest::Approx(64627.0 / 110981283840.0).epsilon(1e-13));
  for (double y0 : {-1.0, 0.3, 2.0})
    CHECK(calabi_series(y0, 2, 6)[2] == doctest::Approx(std::exp(y0 / 2) / 2).epsilon(1e-15));
}

TEST_CASE("origin series coefficients for n = 3") {
  const TP y = calabi_series(0.0, 3, 10);
  CHECK(y[2] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(y[4] == doctest::Approx(1.0 / 40).epsilon(1e-14));
  CHECK(y[6] == doctest::Approx(1.0 / 525).epsilon(1e-14));
  CHECK(y[8] == doctest::Approx(7.0 / 43200).epsilon(1e-13));
  CHECK(y[10] == doctest::Approx(4261.0 / 291060000).epsilon(1e-13));
}

TEST_CASE("y0 shift rescales the series") {
  // y(r; y0) = y0 + y(e^{y0/(2n)} r; 0)
  for (int n : {2, 3})
    for (double y0 : {-1.0, 1.3}) {
      const TP a = calabi_series(y0, n, 20);
      const TP b = calabi_series(0.0, n, 20);
      const double s = std::exp(y0 / n);
      for (int k = 2; k <= 20; k += 2)
        CHECK(a[k] == doctest::Approx(b[k] * std::pow(s, k / 2)).epsilon(1e-12));
    }
}

TEST_CASE("series ODE residual and odd coefficients") {
  for (int n : {2, 3, 4})
    for (double y0 : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
      const TP y = calabi_series(y0, n, 30);
      CHECK(has_vanishing_odd_part(y));
      const int m = 28;
      const TP P = y.derivative().divided_by_power(1).truncated(m);
      const TP ypp = y.derivative().derivative().truncated(m);
      const TP rhs = series_exp(y.truncated(m));
      const TP res = series_mul(series_pow(P, n - 1), ypp) - rhs;
      double scale = 0;
      for (int k = 0; k <= m; ++k) scale = std::max(scale, std::abs(rhs[k]));
      for (int k = 0; k <= m; ++k) CHECK(std::abs(res[k]) <= 1e-12 * scale);
    }
}

TEST_CASE("invalid series requests") {
  CHECK_THROWS_AS(calabi_series(0.0, 2, 5), SeriesError);
  CHECK_THROWS_AS(calabi_series(0.0, 2, 4), SeriesError);
  CHECK_THROWS_AS(calabi_series(0.0, 0, 10), SeriesError);
  TP odd = calabi_series(0.0, 2, 10);
  odd[3] = 1e-3;
  CHECK_THROWS_AS(pqs_series(odd), SeriesError);
  CHECK_THROWS_AS(TP::constant(1.0, 4).truncated(6), SeriesError);
}

TEST_CASE("P, Q, S series") {
  for (double y0 : {-1.0, 0.0, 1.0}) {
    const auto pqs = pqs_series(calabi_series(y0, 2, 20));
    CHECK(pqs.P[0] == doctest::Approx(std::exp(y0 / 2)).epsilon(1e-15));
    CHECK(pqs.P[2] == doctest::Approx(std::exp(y0) / 8).epsilon(1e-14));
    CHECK(pqs.P[4] == doctest::Approx(7 * std::exp(1.5 * y0) / 384).epsilon(1e-14));
    CHECK(pqs.Q[0] == doctest::Approx(2 * pqs.P[2]).epsilon(1e-15));
    CHECK(pqs.S[0] == doctest::Approx(8 * pqs.P[4]).epsilon(1e-15));
  }
}

TEST_CASE("origin limits are -9/2 and 3/16 for every y0") {
  for (double y0 : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0}) {
    for (int order : {6, 8, 24}) {
      const auto lim = limit_origin_expressions(calabi_series(y0, 2, order));
      CHECK(lim.L1 == doctest::Approx(-4.5).epsilon(1e-12));
      CHECK(lim.L2 == doctest::Approx(0.1875).epsilon(1e-11));
      CHECK(lim.inner1 == doctest::Approx(-4.5 * std::exp(3.5 * y0)).epsilon(1e-12));
      CHECK(lim.L1_pqs == doctest::Approx(lim.L1).epsilon(1e-12));
      CHECK(lim.L2_pqs == doctest::Approx(lim.L2).epsilon(1e-11));
    }
  }
}

TEST_CASE("origin limits in extended precision") {
  const auto lim = limit_origin_expressions(calabi_series<long double>(0.75L, 2, 24));
  CHECK(std::abs(lim.L1 + 4.5L) < 1e-15L);
  CHECK(std::abs(lim.L2 - 0.1875L) < 1e-15L);
}
