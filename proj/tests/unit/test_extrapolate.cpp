#include <doctest.h>

#include <cmath>
#include <vector>

#include "tycz/extrapolate.hpp"

using namespace tycz;

TEST_CASE("power-law limit of synthetic data") {
  for (double beta : {0.5, 1.0, 2.0}) {
    std::vector<double> xi, q;
    for (int k = 0; k < 60; ++k) {
      const double x = 1e-5 * std::pow(10.0, 2.0 * k / 59);
      xi.push_back(x);
      q.push_back(1.25 - 0.7 * std::pow(x, beta));
    }
    const auto f = fit_power_limit(xi, q);
    CHECK(f.limit == doctest::Approx(1.25).epsilon(1e-9));
    CHECK(f.exponent == doctest::Approx(beta).epsilon(1e-3));
    CHECK(f.uncertainty < 1e-8);
  }
}

TEST_CASE("power-law fit needs enough points") {
  std::vector<double> xi{1, 2, 3}, q{1, 2, 3};
  CHECK_THROWS(fit_power_limit(xi, q));
}

TEST_CASE("even polynomial fit recovers the constant term") {
  std::vector<double> r, q;
  for (int k = 0; k < 40; ++k) {
    const double x = 0.05 + 0.01 * k;
    r.push_back(x);
    q.push_back(1.5 + 0.3 * x * x - 0.02 * std::pow(x, 4) + 0.001 * std::pow(x, 6));
  }
  const auto f = fit_even_polynomial(r, q, 4);
  CHECK(f.limit == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(f.uncertainty < 1e-10);
}
