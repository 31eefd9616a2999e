#include <doctest.h>

#include <cmath>
#include <memory>

#include "tycz/tensor_oracle.hpp"

using namespace tycz;

namespace {

Eigen::VectorXcd point(int n, double seed) {
  Eigen::VectorXcd z(n);
  for (int i = 0; i < n; ++i) z(i) = cplx(seed * (0.3 + 0.1 * i), seed * (0.2 - 0.15 * i));
  return z;
}

std::shared_ptr<const RadialProfile> tube_profile() {
  static const auto p = std::make_shared<const RadialProfile>(solve_profile(0.0, 2));
  return p;
}

}  // namespace

TEST_CASE("flat metric has vanishing curvature") {
  for (int n : {1, 2, 3}) {
    const auto d = curvature_from_potential(PotentialFamily::flat(n, 2.0), point(n, 0.7));
    CHECK((d.g - 2.0 * Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(d.R2 == 0.0);
    CHECK(d.sigma == 0.0);
  }
}

TEST_CASE("projective and hyperbolic model invariants") {
  // φ = log(1+u): Ric = -(n+1) g in this sign convention; φ = -log(1-u): Ric = (n+1) g
  for (int n : {1, 2, 3}) {
    const auto p = model_space_data(ModelSpace::projective, n);
    const auto h = model_space_data(ModelSpace::hyperbolic, n);
    CHECK(p.lambda == doctest::Approx(-(n + 1.0)).epsilon(1e-12));
    CHECK(h.lambda == doctest::Approx(n + 1.0).epsilon(1e-12));
    CHECK(p.R2 == doctest::Approx(2.0 * n * (n + 1)).epsilon(1e-12));
    CHECK(h.R2 == doctest::Approx(2.0 * n * (n + 1)).epsilon(1e-12));
    CHECK(p.Ric2 == doctest::Approx(n * p.lambda * p.lambda).epsilon(1e-12));
    CHECK(p.homogeneity_defect < 1e-10);
    CHECK(h.homogeneity_defect < 1e-10);
  }
}

TEST_CASE("TYCZ coefficients of model spaces") {
  struct Row {
    ModelSpace m;
    int n;
    double a1, a2, a3;
  };
  // coefficients of the exact epsilon functions (N+1)...(N+n) and (s-1)...(s-n)
  for (const Row& row : {Row{ModelSpace::projective, 1, 1, 0, 0}, Row{ModelSpace::projective, 2, 3, 2, 0},
                         Row{ModelSpace::projective, 3, 6, 11, 6}, Row{ModelSpace::hyperbolic, 3, -6, 11, -6},
                         Row{ModelSpace::hyperbolic, 2, -3, 2, 0}, Row{ModelSpace::flat, 3, 0, 0, 0}}) {
    const auto d = model_space_data(row.m, row.n);
    CHECK(d.coeffs.a1 == doctest::Approx(row.a1).epsilon(1e-12));
    CHECK(d.coeffs.a2 == doctest::Approx(row.a2).epsilon(1e-12));
    CHECK(std::abs(d.coeffs.a3 - row.a3) < 1e-12);
  }
}

TEST_CASE("scaling the potential rescales the invariants") {
  const auto a = model_space_data(ModelSpace::projective, 2, 1.0);
  const auto b = model_space_data(ModelSpace::projective, 2, 3.0);
  CHECK(b.lambda == doctest::Approx(a.lambda / 3).epsilon(1e-12));
  CHECK(b.R2 == doctest::Approx(a.R2 / 9).epsilon(1e-12));
}

TEST_CASE("Riemann symmetries") {
  for (int n : {2, 3}) {
    for (const auto& fam : {PotentialFamily::projective(n), PotentialFamily::hyperbolic(n, 0.5)}) {
      const auto d = curvature_from_potential(fam, point(n, 0.6));
      CHECK(riemann_symmetry_defect(d) < 1e-12);
    }
  }
  const auto fam = PotentialFamily::tube(tube_profile());
  for (double r : {0.1, 1.0, 2.3}) {
    Eigen::VectorXcd z(2);
    z << cplx(0.3 * r, 0.4), cplx(0.4 * r, -2.0);
    CHECK(riemann_symmetry_defect(curvature_from_potential(fam, z)) < 1e-12);
  }
}

TEST_CASE("rotation and imaginary-translation invariance of the tube metric") {
  const auto fam = PotentialFamily::tube(tube_profile());
  for (double r : {0.2, 1.3, 2.4}) {
    Eigen::VectorXcd z0(2);
    z0 << cplx(0.5 * r, 0), cplx(0, 0);
    const auto ref = curvature_from_potential(fam, z0);
    for (double th : {0.5, 2.0, 4.0}) {
      Eigen::VectorXcd z(2);
      z << cplx(0.5 * r * std::cos(th), 3.0), cplx(0.5 * r * std::sin(th), -1.5);
      const auto d = curvature_from_potential(fam, z);
      CHECK(d.R2 == doctest::Approx(ref.R2).epsilon(1e-11));
      CHECK(d.sigma == doctest::Approx(ref.sigma).epsilon(1e-11));
    }
  }
}

TEST_CASE("tube metric is Kahler-Einstein with Ric = g in this sign convention") {
  const auto fam = PotentialFamily::tube(tube_profile());
  const double a = tube_profile()->a_estimate();
  for (int k = 0; k < 20; ++k) {
    const double r = a * (0.05 + 0.9 * k / 19);
    Eigen::VectorXcd z(2);
    z << cplx(0.5 * r, 0), cplx(0, 0);
    const auto d = curvature_from_potential(fam, z);
    const auto lu = lu_scalars(d);
    CHECK((d.ric - d.g).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(d.sigma == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(d.Ric2 == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(lu.RicRR == doctest::Approx(d.R2).epsilon(1e-8));
    CHECK(lu.RRicRic == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(lu.sigma3 == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(std::abs(lu.divdivRRic) < 1e-8);
    CHECK(einstein_defect(d) < 1e-8);
  }
}

TEST_CASE("a3 routes agree") {
  for (auto m : {ModelSpace::projective, ModelSpace::hyperbolic})
    for (int n : {2, 3, 4}) {
      const auto fam = m == ModelSpace::projective ? PotentialFamily::projective(n) : PotentialFamily::hyperbolic(n);
      const auto d = curvature_from_potential(fam, point(n, 0.5));
      for (double lap : {0.0, 0.7}) {
        const double closed_form = tycz_coeffs_ke(d.R2, lap, d.sigma / n, n).a3;
        CHECK(tycz_a3_pipeline_ke(d, lap) == doctest::Approx(closed_form).epsilon(1e-10));
      }
      CHECK(tycz_a2_general(d) == doctest::Approx(tycz_coeffs_ke(d.R2, 0, d.sigma / n, n).a2).epsilon(1e-12));
    }
}

TEST_CASE("pipeline rejects non-Einstein points") {
  // φ = u + u²: Kähler but not Einstein
  const auto fam = PotentialFamily::rotation(2, [](double u) {
    return std::array<double, 5>{u + u * u, 1 + 2 * u, 2, 0, 0};
  });
  const auto d = curvature_from_potential(fam, point(2, 0.8));
  CHECK(einstein_defect(d) > 1e-3);
  CHECK_THROWS_AS(tycz_a3_pipeline_ke(d, 0.0), GeometryError);
}

TEST_CASE("flat metric lies in both potential families") {
  // tube profile y = r²/2 and rotation potential φ = u both give g = I
  auto flat_tube = std::make_shared<const RadialProfile>(RadialProfile::from_samples(
      2, 0.0,
      [] {
        std::vector<ProfileSample> s;
        for (int k = 1; k <= 400; ++k) {
          const double r = 0.01 * k;
          s.push_back({r, r * r / 2, r, 1.0, 0.0, 0.0});
        }
        return s;
      }(),
      10.0));
  Eigen::VectorXcd z(2);
  z << cplx(0.4, 0.1), cplx(-0.3, 2.0);
  const auto d = curvature_from_potential(PotentialFamily::tube(flat_tube), z);
  CHECK(d.R2 < 1e-12);
  CHECK(std::abs(d.sigma) < 1e-12);
  const auto e = curvature_from_potential(PotentialFamily::flat(2, 1.0), z);
  CHECK((d.g - e.g).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((d.g - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("model names") {
  CHECK(parse_model("flat") == ModelSpace::flat);
  CHECK(parse_model("projective") == ModelSpace::projective);
  CHECK(parse_model("hyperbolic") == ModelSpace::hyperbolic);
  CHECK_THROWS(parse_model("sphere"));
  CHECK(model_name(ModelSpace::hyperbolic) == "hyperbolic");
}
