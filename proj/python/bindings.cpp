#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tycz/acceptance.hpp"
#include "tycz/calabi_ode.hpp"
#include "tycz/cli.hpp"
#include "tycz/epsilon_models.hpp"
#include "tycz/io.hpp"
#include "tycz/series.hpp"
#include "tycz/tensor_oracle.hpp"

namespace py = pybind11;
using namespace tycz;

namespace {

Eigen::VectorXcd to_point(const std::vector<cplx>& z) {
  return Eigen::Map<const Eigen::VectorXcd>(z.data(), static_cast<Eigen::Index>(z.size()));
}

py::dict profile_dict(const RadialProfile& p) {
  std::vector<double> r, y, yp, ypp;
  for (const auto& s : p.samples()) {
    r.push_back(s.r);
    y.push_back(s.y);
    yp.push_back(s.yp);
    ypp.push_back(s.ypp);
  }
  py::dict d;
  d["n"] = p.n();
  d["y0"] = p.y0();
  d["a"] = p.a_estimate();
  d["a_uncertainty"] = p.a_uncertainty();
  d["r"] = r;
  d["y"] = y;
  d["yp"] = yp;
  d["ypp"] = ypp;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<SeriesError>(m, "SeriesError", PyExc_ValueError);
  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
  py::register_exception<EpsilonError>(m, "EpsilonError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("calabi_series", [](double y0, int n, int order) { return calabi_series(y0, n, order).coeffs(); },
        py::arg("y0") = 0.0, py::arg("n") = 2, py::arg("order") = 24);

  m.def("solve_profile", [](double y0, int n) { return profile_dict(solve_profile(y0, n)); },
        py::arg("y0") = 0.0, py::arg("n") = 2);

  m.def("profile_csv", [](double y0, int n) {
    std::ostringstream os;
    write_profile_csv(os, solve_profile(y0, n));
    return os.str();
  }, py::arg("y0") = 0.0, py::arg("n") = 2);

  m.def("model_coefficients", [](const std::string& model, int n, double scale) {
    const auto d = model_space_data(parse_model(model), n, scale);
    py::dict out;
    out["lambda"] = d.lambda;
    out["sigma"] = d.sigma;
    out["R2"] = d.R2;
    out["a1"] = d.coeffs.a1;
    out["a2"] = d.coeffs.a2;
    out["a3"] = d.coeffs.a3;
    return out;
  }, py::arg("model"), py::arg("n"), py::arg("scale") = 1.0);

  m.def("epsilon_flat", [](double alpha, const std::vector<cplx>& z) {
    return epsilon_flat(alpha, static_cast<int>(z.size()), to_point(z)).value;
  });
  m.def("epsilon_disc", [](double alpha, double mu, const std::vector<cplx>& z) {
    return epsilon_disc(alpha, mu, to_point(z)).value;
  });
  m.def("epsilon_projective", [](int k, const std::vector<cplx>& z) {
    return epsilon_projective(k, to_point(z)).value;
  });

  m.def("criterion_count", &criterion_count);
  m.def("criterion_name", &criterion_name);
  m.def("run_criterion_json", [](int id) {
    py::gil_scoped_release release;
    const AcceptanceContext ctx;
    return criterion_json(run_criterion(id, ctx)).dump();
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<std::string> full{"tycz_lab"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = 0;
    {
      py::gil_scoped_release release;
      code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  });
}
