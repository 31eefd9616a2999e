#include <doctest.h>

#include <sstream>

#include "tycz/io.hpp"

using namespace tycz;

TEST_CASE("doubles are written in shortest round-trip form") {
  for (double x : {0.1, 1.0 / 3.0, 2.624550017242767, -4.5e-300, 1e300}) {
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("profile CSV round trip") {
  const auto p = solve_profile(0.3, 2);
  std::ostringstream os;
  write_profile_csv(os, p);
  const std::string text = os.str();
  CHECK(text.find("r,y,yp,ypp,yppp,ypppp\n") != std::string::npos);
  CHECK(text.find("# y0=0.3\n") != std::string::npos);
  std::istringstream is(text);
  const auto q = read_profile_csv(is);
  CHECK(q.n() == 2);
  CHECK(q.y0() == 0.3);
  CHECK(q.a_estimate() == p.a_estimate());
  REQUIRE(q.samples().size() == p.samples().size());
  for (std::size_t i = 0; i < p.samples().size(); ++i) {
    CHECK(q.samples()[i].r == p.samples()[i].r);
    CHECK(q.samples()[i].ypp == p.samples()[i].ypp);
  }
  std::ostringstream os2;
  write_profile_csv(os2, q);
  CHECK(os2.str().substr(os2.str().find("r,y")) == text.substr(text.find("r,y")));
}

TEST_CASE("malformed profile files") {
  std::istringstream no_header("# n=2\n# y0=0\n# a_estimate=2\n1,2,3\n");
  CHECK_THROWS_AS(read_profile_csv(no_header), IoError);
  std::istringstream bad_number("# n=2\n# y0=0\n# a_estimate=2\nr,y,yp,ypp,yppp,ypppp\n0.1,x,1,1,1,1\n");
  CHECK_THROWS_AS(read_profile_csv(bad_number), IoError);
  std::istringstream no_meta("r,y,yp,ypp,yppp,ypppp\n0.1,0,1,1,1,1\n");
  CHECK_THROWS_AS(read_profile_csv(no_meta), IoError);
  CHECK_THROWS_AS(read_profile_csv(std::string("/nonexistent/profile.csv")), IoError);
}

TEST_CASE("series JSON") {
  const auto y = calabi_series(0.0, 2, 8);
  const auto j = series_json(y);
  CHECK(j["center"] == 0);
  CHECK(j["order"] == 8);
  CHECK(j["coeffs"].size() == 9);
  const auto back = series_from_json(json::parse(j.dump()));
  for (int k = 0; k <= 8; ++k) CHECK(back[k] == y[k]);
  CHECK_THROWS_AS(series_from_json(json{{"center", 0}, {"order", 3}, {"coeffs", {1, 2}}}), IoError);
  CHECK_THROWS_AS(series_from_json(json{{"order", 1}}), IoError);
}

TEST_CASE("point data JSON is row-major") {
  const auto d = curvature_from_potential(PotentialFamily::projective(2), (Eigen::VectorXcd(2) << cplx(0.2, 0.1), cplx(-0.3, 0.4)).finished());
  const auto j = point_data_json(d);
  CHECK(j["n"] == 2);
  CHECK(j["g"].size() == 4);
  CHECK(j["riem"].size() == 16);
  // entry (i, j̄, k, l̄) = (0, 1, 1, 0) sits at ((0*2+1)*2+1)*2+0 = 6
  CHECK(j["riem"][6][0].get<double>() == d.R(0, 1, 1, 0).real());
  CHECK(j["riem"][6][1].get<double>() == d.R(0, 1, 1, 0).imag());
  CHECK(j["g"][1][0].get<double>() == d.g(0, 1).real());
}

TEST_CASE("curvature and epsilon CSV headers") {
  std::ostringstream c;
  write_curvature_csv(c, std::vector<CurvatureSample>{CurvatureSample{}});
  CHECK(c.str().rfind("r,R2,dR2,d2R2,lapR2,a1,a2,a3,A,B,C\n", 0) == 0);
  EpsilonSeries s;
  s.alphas = {1, 2};
  s.values = {0.5, 1.0};
  std::ostringstream e;
  write_epsilon_csv(e, s);
  CHECK(e.str() == "alpha,epsilon\n1,0.5\n2,1\n");
}
