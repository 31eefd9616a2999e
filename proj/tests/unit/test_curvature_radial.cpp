#include <doctest.h>

#include <cmath>
#include <memory>

#include "tycz/curvature_radial.hpp"
#include "tycz/tensor_oracle.hpp"

using namespace tycz;

namespace {

std::shared_ptr<const RadialProfile> profile_ptr() {
  static const auto p = std::make_shared<const RadialProfile>(solve_profile(0.0, 2));
  return p;
}

const RadialProfile& profile() { return *profile_ptr(); }

Eigen::VectorXcd tube_point(double x1, double x2, double u1 = 0, double u2 = 0) {
  Eigen::VectorXcd z(2);
  z << cplx(0.5 * x1, u1), cplx(0.5 * x2, u2);
  return z;
}

}  // namespace

TEST_CASE("closed-form |R|^2 agrees with the tensor contraction") {
  const CalabiCurvature curv(profile());
  const auto fam = PotentialFamily::tube(profile_ptr());
  const double a = profile().a_estimate();
  for (int k = 0; k < 20; ++k) {
    const double r = a * (0.05 + 0.9 * k / 19);
    const double tensor = curvature_from_potential(fam, tube_point(r, 0)).R2;
    CHECK(curv.norm2_closed(r) == doctest::Approx(tensor).epsilon(1e-8));
    CHECK(curv.norm2(r) == doctest::Approx(tensor).epsilon(1e-8));
  }
}

TEST_CASE("printed and differentiated radial derivatives agree") {
  const CalabiCurvature curv(profile());
  const double a = profile().a_estimate();
  for (int k = 0; k < 20; ++k) {
    const double r = a * (0.1 + 0.85 * k / 19);
    const auto d = curv.derivative(r);
    CHECK(std::abs(d.printed - d.differentiated) <= 1e-7 * std::max(1.0, std::abs(d.differentiated)));
  }
}

TEST_CASE("radial Laplacian matches the coordinate Laplacian") {
  const CalabiCurvature curv(profile());
  for (double r : {0.3, 0.9, 1.6, 2.2})
    for (double th : {0.2, 1.0, 2.5}) {
      const auto j = curv.norm2_jet(r);
      const double radial = curv.laplacian(j[1], j[2], r);
      const double direct = direct_laplacian_norm2(r * std::cos(th), r * std::sin(th), curv);
      CHECK(std::abs(radial - direct) <= 1e-7 * std::max(1.0, std::abs(radial)));
    }
}

TEST_CASE("metric matrix and its inverse") {
  for (double r : {0.2, 1.1, 2.4}) {
    const auto m = metric_at(r * 0.6, r * 0.8, profile());
    CHECK((m.G * m.Ginv - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(m.G.determinant() > 0);
  }
}

TEST_CASE("boundary decomposition recombines") {
  const CalabiCurvature curv(profile());
  for (double r : {0.5, 1.5, 2.5}) {
    const auto s = profile().state_at(r);
    const auto abc = abc_terms(r, std::exp(s.y), s.yp);
    CHECK(abc.A + abc.B + abc.C == doctest::Approx(0.25 * s.yp * curv.derivative(r).printed).epsilon(1e-10));
  }
}

TEST_CASE("endpoint limits of |R|^2") {
  const auto nl = norm2_limits(profile());
  CHECK(nl.origin_series == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(std::abs(nl.origin.estimate - 1.5) < 1e-6);
  CHECK(std::abs(nl.boundary.estimate - 4.0 / 3.0) < 1e-4);
}

TEST_CASE("origin limit is independent of y0") {
  for (double y0 : {-1.0, 1.0}) {
    const auto p = solve_profile(y0, 2);
    CHECK(CalabiCurvature(p).origin_series()[0] == doctest::Approx(1.5).epsilon(1e-12));
  }
}

TEST_CASE("boundary decomposition limits") {
  const auto d = decomposition_limits(profile());
  const double s = 3.0 / (d.a * d.a);
  CHECK(std::abs(d.A.last_value) < 1e-3 * s);
  CHECK(d.B.estimate == doctest::Approx(-s).epsilon(1e-3));
  CHECK(d.C.estimate == doctest::Approx(s).epsilon(1e-3));
  CHECK(std::abs(d.yp_dR2.estimate) < 1e-3 * s);
}

TEST_CASE("auxiliary limits") {
  const double a = profile().a_estimate();
  const auto al = auxiliary_limits(profile());
  CHECK(al.ey_yp3.estimate == doctest::Approx(1 / (3 * a)).epsilon(1e-4));
  CHECK(al.cubic.estimate == doctest::Approx(-1.5 / a).epsilon(1e-3));
}

TEST_CASE("a3 profile and witness") {
  const auto samples = a3_profile(profile());
  REQUIRE(samples.size() > 100);
  for (const auto& s : samples) {
    CHECK(s.a3 == doctest::Approx(s.lapR2 / 48).epsilon(1e-12));
    CHECK(s.a2 == doctest::Approx((s.R2 + 4) / 24).epsilon(1e-8));
    CHECK(s.sigma == doctest::Approx(2.0).epsilon(1e-7));
  }
  SolverConfig ref;
  ref.series_order = 30;
  ref.taylor_order = 24;
  ref.taylor_tol = 1e-16;
  const auto w = a3_nonvanishing_witness(profile(), solve_profile(0.0, 2, ref));
  CHECK(w.ratio > 10);
  CHECK(std::abs(w.a3) > 1e-3);
}

TEST_CASE("log-trick quantity is not constant") {
  const auto lt = log_trick_check(profile());
  CHECK_FALSE(lt.is_constant);
  CHECK(lt.max_dev > 1e-3);
  const std::vector<double> flat{0.5, 0.5, 0.5, 0.5};
  CHECK(log_trick_check(flat).is_constant);
}

TEST_CASE("curvature needs n = 2") {
  const auto p3 = solve_profile(0.0, 3);
  CHECK_THROWS(CalabiCurvature(p3));
}
