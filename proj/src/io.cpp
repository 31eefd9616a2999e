#include "tycz/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace tycz {
namespace {

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw IoError("not a number: '" + s + "'");
  }
  if (pos != s.size() && s.find_first_not_of(" \t\r", pos) != std::string::npos)
    throw IoError("trailing characters in number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const Eigen::MatrixXcd& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) a.push_back(complex_json(m(i, j)));
  return a;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_profile_csv(std::ostream& os, const RadialProfile& profile) {
  os << "# n=" << profile.n() << "\n";
  os << "# y0=" << format_double(profile.y0()) << "\n";
  os << "# a_estimate=" << format_double(profile.a_estimate()) << "\n";
  os << "# a_uncertainty=" << format_double(profile.a_uncertainty()) << "\n";
  os << "# residual_max=" << format_double(ode_residual(profile)) << "\n";
  os << "r,y,yp,ypp,yppp,ypppp\n";
  for (const auto& s : profile.samples())
    os << format_double(s.r) << ',' << format_double(s.y) << ',' << format_double(s.yp) << ','
       << format_double(s.ypp) << ',' << format_double(s.yppp) << ',' << format_double(s.ypppp) << '\n';
}

RadialProfile read_profile_csv(std::istream& is) {
  std::map<std::string, std::string> meta;
  std::vector<ProfileSample> samples;
  std::string line;
  bool header = false;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      meta[key] = line.substr(eq + 1);
      continue;
    }
    if (!header) {
      if (line != "r,y,yp,ypp,yppp,ypppp") throw IoError("unexpected profile header: " + line);
      header = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 6) throw IoError("line " + std::to_string(lineno) + ": expected 6 fields");
    samples.push_back({parse_double(f[0]), parse_double(f[1]), parse_double(f[2]), parse_double(f[3]),
                       parse_double(f[4]), parse_double(f[5])});
  }
  if (!header) throw IoError("profile CSV has no header");
  for (const char* k : {"n", "y0", "a_estimate"})
    if (!meta.count(k)) throw IoError(std::string("profile CSV lacks metadata '") + k + "'");
  const int n = static_cast<int>(parse_double(meta["n"]));
  const double unc = meta.count("a_uncertainty") ? parse_double(meta["a_uncertainty"]) : 0.0;
  return RadialProfile::from_samples(n, parse_double(meta["y0"]), std::move(samples),
                                     parse_double(meta["a_estimate"]), unc);
}

RadialProfile read_profile_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open profile file '" + path + "'");
  return read_profile_csv(f);
}

void write_curvature_csv(std::ostream& os, std::span<const CurvatureSample> samples) {
  os << "r,R2,dR2,d2R2,lapR2,a1,a2,a3,A,B,C\n";
  for (const auto& s : samples) {
    const double v[] = {s.r, s.R2, s.dR2, s.d2R2, s.lapR2, s.a1, s.a2, s.a3, s.A, s.B, s.C};
    for (std::size_t i = 0; i < std::size(v); ++i) os << (i ? "," : "") << format_double(v[i]);
    os << '\n';
  }
}

void write_epsilon_csv(std::ostream& os, const EpsilonSeries& series) {
  os << "alpha,epsilon\n";
  for (std::size_t i = 0; i < series.alphas.size(); ++i)
    os << format_double(series.alphas[i]) << ',' << format_double(series.values[i]) << '\n';
}

json series_json(const TaylorPoly<double>& s) {
  return json{{"center", 0}, {"order", s.order()}, {"coeffs", s.coeffs()}};
}

TaylorPoly<double> series_from_json(const json& j) {
  try {
    const auto coeffs = j.at("coeffs").get<std::vector<double>>();
    const int order = j.at("order").get<int>();
    if (static_cast<int>(coeffs.size()) != order + 1) throw IoError("series coeffs length != order + 1");
    if (j.at("center").get<double>() != 0.0) throw IoError("series center must be 0");
    return TaylorPoly<double>(coeffs);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed series JSON: ") + e.what());
  }
}

json point_data_json(const KahlerPointData& d) {
  json riem = json::array();
  for (const auto& v : d.riem) riem.push_back(complex_json(v));
  return json{{"n", d.n},           {"g", matrix_json(d.g)},   {"ginv", matrix_json(d.ginv)},
              {"riem", riem},       {"ric", matrix_json(d.ric)}, {"sigma", d.sigma},
              {"R2", d.R2},         {"Ric2", d.Ric2}};
}

json section_norm_json(const SectionNormReport& r) {
  return json{{"alpha", r.alpha},
              {"reduced_value", r.reduced_value},
              {"direct_value", r.direct_value},
              {"reduced_error", r.reduced_error},
              {"direct_error", r.direct_error},
              {"relative_gap", r.relative_gap},
              {"integrand_sup", r.integrand_sup},
              {"finite", r.finite}};
}

json fit_json(const ExpansionFit& f) {
  return json{{"c", f.c}, {"a_hat", f.a_hat}, {"stderr", f.stderr_}, {"residual", f.residual}};
}

}  // namespace tycz
