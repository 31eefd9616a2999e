#include "tycz/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include "tycz/acceptance.hpp"
#include "tycz/curvature_radial.hpp"
#include "tycz/epsilon_models.hpp"
#include "tycz/io.hpp"
#include "tycz/series.hpp"
#include "tycz/tensor_oracle.hpp"

namespace tycz {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  double y0 = 0.0;
  int n = 2;
  int order = 0;  // 0: 24 for series, the solver default otherwise
  double rtol = 1e-10;
  std::string out;
  std::string precision = "double";
  std::string format = "json";
  std::uint64_t seed = 20240601;
  std::string profile_path;
  // per-command
  std::string model;
  double scale = 1.0;
  double r = 0.0;
  double alpha_min = 0, alpha_max = 0;
  int count = 16;
  int fit_order = 0;
  std::vector<double> alphas{2.0, 3.0};
  std::vector<int> only;
};

int thread_budget() {
  int t = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("TYCZ_LAB_THREADS")) {
    try {
      t = std::stoi(env);
    } catch (const std::exception&) {
      throw UsageError("TYCZ_LAB_THREADS must be a positive integer");
    }
    if (t < 1) throw UsageError("TYCZ_LAB_THREADS must be a positive integer");
  }
  return t;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

json params_json(const RunConfig& c) {
  json p{{"y0", c.y0},       {"n", c.n},           {"order", c.order},   {"rtol", c.rtol},
         {"out", c.out},     {"precision", c.precision}, {"format", c.format}, {"seed", c.seed},
         {"threads", thread_budget()}};
  if (!c.profile_path.empty()) p["profile"] = c.profile_path;
  return p;
}

json envelope(const RunConfig& c) {
  return json{{"schema", 1}, {"command", c.command}, {"params", params_json(c)}, {"seed", c.seed},
              {"timestamp", utc_timestamp()}};
}

struct Report {
  json doc;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> files;  // name, contents
  std::string csv;                                          // stdout payload for --format csv
};

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Check make_check(std::string claim, double target, double computed, double tol, bool relative = false) {
  const double err = std::abs(computed - target);
  const bool pass = relative ? err <= tol * std::abs(target) : err <= tol;
  return {std::move(claim), target, computed, tol, pass,
          relative ? "|computed - target| <= tol |target|" : "|computed - target| <= tol"};
}

SolverConfig solver_config(const RunConfig& c) {
  SolverConfig s;
  if (c.order < 6 || c.order % 2) throw UsageError("--order must be even and >= 6");
  s.series_order = c.order;
  return s;
}

std::shared_ptr<const RadialProfile> load_or_solve(const RunConfig& c) {
  if (!c.profile_path.empty()) {
    try {
      return std::make_shared<const RadialProfile>(read_profile_csv(c.profile_path));
    } catch (const IoError& e) {
      throw UsageError(e.what());
    }
  }
  return std::make_shared<const RadialProfile>(solve_profile(c.y0, c.n, solver_config(c)));
}

void append(std::vector<Check>& to, const std::vector<Check>& from) { to.insert(to.end(), from.begin(), from.end()); }

std::vector<Check> criterion_checks(int id, const AcceptanceContext& ctx) {
  auto r = run_criterion(id, ctx);
  if (!r.error.empty()) throw std::runtime_error(criterion_name(id) + ": " + r.error);
  return r.checks;
}

// ---------------------------------------------------------------------------

template <typename T>
void series_body(const RunConfig& c, Report& rep) {
  if (c.order < 6 || c.order % 2) throw UsageError("--order must be even and >= 6");
  const auto y = calabi_series(static_cast<T>(c.y0), c.n, c.order);
  std::vector<double> coeffs;
  for (int k = 0; k <= y.order(); ++k) coeffs.push_back(static_cast<double>(y[k]));
  rep.doc["series"] = json{{"center", 0}, {"order", y.order()}, {"coeffs", coeffs}};
  std::ostringstream csv;
  csv << "k,coeff\n";
  for (int k = 0; k <= y.order(); ++k) csv << k << ',' << format_double(coeffs[static_cast<std::size_t>(k)]) << '\n';
  rep.csv = csv.str();

  const double e = std::exp(c.y0);
  const double y0n = c.y0 / c.n;
  rep.checks.push_back(make_check("b2 = e^{y0/n}/2", std::exp(y0n) / 2, coeffs[2], 1e-12, true));
  if (c.n == 2) {
    rep.checks.push_back(make_check("b4 = e^{y0}/32", e / 32, coeffs[4], 1e-12, true));
    rep.checks.push_back(make_check("b6 = 7e^{3y0/2}/2304", 7 * std::pow(e, 1.5) / 2304, coeffs[6], 1e-12, true));
    const auto pqs = pqs_series(y);
    rep.doc["pqs"] = json{{"P0", static_cast<double>(pqs.P[0])}, {"c2", static_cast<double>(pqs.P[2])},
                          {"c4", static_cast<double>(pqs.P[4])}, {"Q0", static_cast<double>(pqs.Q[0])},
                          {"S0", static_cast<double>(pqs.S[0])}};
    rep.checks.push_back(make_check("c2 = e^{y0}/8", e / 8, static_cast<double>(pqs.P[2]), 1e-12, true));
    rep.checks.push_back(
        make_check("c4 = 7e^{3y0/2}/384", 7 * std::pow(e, 1.5) / 384, static_cast<double>(pqs.P[4]), 1e-12, true));
    const auto lim = limit_origin_expressions(y);
    rep.doc["origin_limits"] = json{{"L1", static_cast<double>(lim.L1)},
                                    {"L2", static_cast<double>(lim.L2)},
                                    {"inner1", static_cast<double>(lim.inner1)},
                                    {"inner2", static_cast<double>(lim.inner2)},
                                    {"L1_pqs", static_cast<double>(lim.L1_pqs)},
                                    {"L2_pqs", static_cast<double>(lim.L2_pqs)}};
    rep.checks.push_back(make_check("L1 = -9/2", -4.5, static_cast<double>(lim.L1), 1e-10));
    rep.checks.push_back(make_check("L2 = 3/16", 0.1875, static_cast<double>(lim.L2), 1e-10));
    rep.checks.push_back(
        make_check("inner limit = -(9/2) e^{7y0/2}", -4.5 * std::exp(3.5 * c.y0), static_cast<double>(lim.inner1), 1e-10, true));
  }
  rep.files.emplace_back("series.json", rep.doc["series"].dump(2) + "\n");
}

void cmd_series(const RunConfig& c, Report& rep) {
  if (c.precision == "extended")
    series_body<long double>(c, rep);
  else
    series_body<double>(c, rep);
}

void cmd_solve(const RunConfig& c, Report& rep) {
  const auto prof = load_or_solve(c);
  const auto be = estimate_boundary(*prof);
  const double res = ode_residual(*prof);
  rep.doc["profile"] = json{{"n", prof->n()},
                            {"y0", prof->y0()},
                            {"a_estimate", prof->a_estimate()},
                            {"a_uncertainty", prof->a_uncertainty()},
                            {"a_from_limit", be.a_from_limit},
                            {"switch_radius", prof->switch_radius()},
                            {"r_max", prof->r_max()},
                            {"samples", prof->samples().size()},
                            {"residual_max", res}};
  rep.checks.push_back(make_check("ODE residual <= 1e-9", 0.0, res, 1e-9));
  rep.checks.push_back(make_check("blow-up radius: integrator vs e^y/y'^(n+1) limit", be.a, be.a_from_limit, 1e-3, true));
  std::ostringstream csv;
  write_profile_csv(csv, *prof);
  rep.csv = csv.str();
  rep.files.emplace_back("profile.csv", rep.csv);
}

void cmd_invariants(const RunConfig& c, Report& rep) {
  const auto prof = load_or_solve(c);
  if (prof->n() != 2) throw UsageError("invariants needs --n 2");
  const double r = c.r > 0 ? c.r : 0.5 * prof->a_estimate();
  if (!(r < prof->r_max())) throw UsageError("--r must lie inside the profile");
  const auto d = curvature_from_potential(PotentialFamily::tube(prof), (Eigen::VectorXcd(2) << cplx(0.5 * r, 0), cplx(0, 0)).finished());
  const auto lu = lu_scalars(d);
  rep.doc["point"] = point_data_json(d);
  rep.doc["point"]["r"] = r;
  rep.doc["point"]["lu_scalars"] =
      json{{"sigma3", lu.sigma3}, {"RicRR", lu.RicRR}, {"RRicRic", lu.RRicRic}, {"divdivRRic", lu.divdivRRic}};
  const AcceptanceContext ctx(prof);
  append(rep.checks, criterion_checks(8, ctx));
  append(rep.checks, criterion_checks(9, ctx));
  const auto samples = a3_profile(*prof);
  std::ostringstream csv;
  write_curvature_csv(csv, samples);
  rep.csv = csv.str();
  rep.files.emplace_back("curvature.csv", rep.csv);
  rep.files.emplace_back("point.json", rep.doc["point"].dump(2) + "\n");
}

void cmd_limits(const RunConfig& c, Report& rep) {
  const auto prof = load_or_solve(c);
  if (prof->n() != 2) throw UsageError("limits needs --n 2");
  const AcceptanceContext ctx(prof);
  for (int id : {4, 5, 6, 7}) append(rep.checks, criterion_checks(id, ctx));
  const auto nl = norm2_limits(*prof);
  rep.doc["limits"] = json{{"a", prof->a_estimate()},
                           {"R2_origin", nl.origin.estimate},
                           {"R2_origin_uncertainty", nl.origin.uncertainty},
                           {"R2_boundary", nl.boundary.estimate},
                           {"R2_boundary_uncertainty", nl.boundary.uncertainty}};
}

ModelSpace model_or_usage(const std::string& name) {
  try {
    return parse_model(name);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

void cmd_tycz(const RunConfig& c, Report& rep) {
  if (c.n < 1) throw UsageError("--n must be positive");
  if (!(c.scale > 0)) throw UsageError("--scale must be positive");
  const auto m = model_or_usage(c.model.empty() ? "flat" : c.model);
  const auto d = model_space_data(m, c.n, c.scale);
  rep.doc["model"] = model_name(m);
  rep.doc["scale"] = c.scale;
  rep.doc["invariants"] = json{{"lambda", d.lambda}, {"sigma", d.sigma}, {"R2", d.R2}, {"Ric2", d.Ric2}};
  rep.doc["coefficients"] = json{{"a1", d.coeffs.a1}, {"a2", d.coeffs.a2}, {"a3", d.coeffs.a3}};
  rep.checks.push_back(make_check("a1 = -sigma/2", -d.sigma / 2, d.coeffs.a1, 1e-12));
  rep.checks.push_back(make_check("|Ric|^2 = n lambda^2", c.n * d.lambda * d.lambda, d.Ric2, 1e-8));
  rep.checks.push_back(make_check("invariants agree at 3 points", 0.0, d.homogeneity_defect, 1e-10));
  if (m == ModelSpace::flat) {
    rep.checks.push_back(make_check("a2 = 0", 0.0, d.coeffs.a2, 1e-12));
    rep.checks.push_back(make_check("a3 = 0", 0.0, d.coeffs.a3, 1e-12));
  } else if (c.n <= 2) {
    rep.checks.push_back(make_check("a3 = 0", 0.0, d.coeffs.a3, 1e-12));
  } else {
    const double signed_a3 = d.coeffs.a3 * (d.lambda > 0 ? -1.0 : 1.0);
    rep.checks.push_back({"a3 nonzero with the sign of -lambda", 1e-3, signed_a3, 0.0, signed_a3 > 1e-3,
                          "computed > target"});
  }
}

std::vector<double> linear_grid(double lo, double hi, int count) {
  std::vector<double> g;
  for (int k = 0; k < count; ++k) g.push_back(lo + (hi - lo) * k / (count - 1));
  return g;
}

void cmd_epsilon(const RunConfig& c, Report& rep) {
  const std::string model = c.model.empty() ? "flat" : c.model;
  if (model != "flat" && model != "disc" && model != "projective")
    throw UsageError("--model must be flat, disc or projective for epsilon");
  if (c.n < 1) throw UsageError("--n must be positive");
  if (c.count < 6) throw UsageError("--count must be >= 6");
  double lo = c.alpha_min, hi = c.alpha_max;
  if (lo <= 0) lo = model == "flat" ? 1.0 : model == "disc" ? 4.0 * (c.n + 1) / c.scale : 4.0;
  if (hi <= 0) hi = 10 * lo;
  const int order = c.fit_order > 0 ? c.fit_order : std::max(2, c.n);
  const auto eps = epsilon_series(model, c.n, c.scale, linear_grid(lo, hi, c.count), order);

  rep.doc["alphas"] = eps.alphas;
  rep.doc["values"] = eps.values;
  json targets = json::array();
  std::vector<double> t(static_cast<std::size_t>(order), 0.0);
  if (model != "flat") {
    const auto geo = model_space_data(model == "disc" ? ModelSpace::hyperbolic : ModelSpace::projective, c.n, c.scale);
    t[0] = -geo.sigma / 2;
    if (order >= 2) t[1] = geo.coeffs.a2;
    if (order >= 3) t[2] = geo.coeffs.a3;
  }
  const int compared = std::min(order, 3);
  for (int j = 0; j < compared; ++j) {
    targets.push_back(t[static_cast<std::size_t>(j)]);
    rep.checks.push_back(make_check("a" + std::to_string(j + 1) + "_hat = a" + std::to_string(j + 1),
                                    t[static_cast<std::size_t>(j)], eps.fit.a_hat[static_cast<std::size_t>(j)],
                                    model == "flat" ? 1e-10 : 1e-3));
  }
  if (model == "flat") rep.checks.push_back(make_check("fit residual", 0.0, eps.fit.residual, 1e-12));

  // homogeneity and positivity
  double spread = 0;
  bool positive = std::all_of(eps.values.begin(), eps.values.end(), [](double v) { return v > 0; });
  const double a = eps.alphas.back();
  std::vector<double> vals;
  for (double rad : {0.0, 0.3, 0.55}) {
    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(c.n);
    z(0) = std::polar(rad, 0.7);
    vals.push_back(model == "flat"   ? epsilon_flat(a * c.scale, c.n, z).value
                   : model == "disc" ? epsilon_disc(a, c.scale, z).value
                                     : epsilon_projective(static_cast<int>(std::lround(a)), z, c.scale).value);
  }
  for (double v : vals) spread = std::max(spread, std::abs(v - vals[0]) / vals[0]);
  rep.checks.push_back(make_check("epsilon constant over 3 points", 0.0, spread, 1e-10));
  rep.checks.push_back({"epsilon values positive", 1.0, positive ? 1.0 : 0.0, 0.0, positive, "computed == target"});
  if (model == "flat" && c.n == 1) {
    const double plain = epsilon_flat(2.0, 1, Eigen::VectorXcd::Constant(1, cplx(0.4, -0.3))).value;
    const double mixed = epsilon_flat_mixed_basis(2.0, cplx(0.4, -0.3), 12, c.seed);
    rep.checks.push_back(make_check("epsilon independent of the orthonormal basis", plain, mixed, 1e-12));
  }
  rep.doc["fit"] = json{{"model", model},
                        {"c", eps.fit.c},
                        {"a1_hat", eps.fit.a_hat[0]},
                        {"a2_hat", eps.fit.a_hat.size() > 1 ? eps.fit.a_hat[1] : 0.0},
                        {"a_hat", eps.fit.a_hat},
                        {"stderr", eps.fit.stderr_},
                        {"residual", eps.fit.residual},
                        {"targets", targets},
                        {"pass", all_pass(rep.checks)}};
  std::ostringstream csv;
  write_epsilon_csv(csv, eps);
  rep.csv = csv.str();
  rep.files.emplace_back("epsilon_" + model + ".csv", rep.csv);
  rep.files.emplace_back("epsilon_" + model + "_fit.json", rep.doc["fit"].dump(2) + "\n");
}

void cmd_hnorm(const RunConfig& c, Report& rep) {
  const auto prof = load_or_solve(c);
  if (prof->n() != 2) throw UsageError("hnorm needs --n 2");
  for (double a : c.alphas)
    if (!(a > 1)) throw UsageError("--alpha values must exceed 1");
  QuadSettings q;
  q.rel_tol = c.rtol;
  std::vector<std::future<SectionNormReport>> jobs;
  const std::size_t budget = static_cast<std::size_t>(thread_budget());
  std::vector<SectionNormReport> reports;
  for (std::size_t i = 0; i < c.alphas.size(); i += budget) {
    jobs.clear();
    for (std::size_t j = i; j < std::min(c.alphas.size(), i + budget); ++j)
      jobs.push_back(std::async(std::launch::async, [&, j] { return calabi_section_norm(c.alphas[j], *prof, q); }));
    for (auto& f : jobs) reports.push_back(f.get());
  }
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back(section_norm_json(r));
    const std::string at = " (alpha=" + format_double(r.alpha) + ")";
    rep.checks.push_back({"weighted norm of h is finite" + at, 1.0, r.finite ? 1.0 : 0.0, 0.0, r.finite,
                          "computed == target"});
    rep.checks.push_back(make_check("reduced vs direct relative gap" + at, 0.0, r.relative_gap, 1e-4));
  }
  for (double C : {0.25, 1.0, 2.3, 9.0, 40.0})
    rep.checks.push_back(make_check("int du/(u^2/4 + C) = 2pi/sqrt(C) (C=" + format_double(C) + ")",
                                    2 * std::numbers::pi / std::sqrt(C), reduction_identity(C), 1e-10, true));
  rep.doc["section_norms"] = arr;
  rep.files.emplace_back("hnorm.json", arr.dump(2) + "\n");
}

void cmd_verify_all(const RunConfig& c, Report& rep, std::ostream& out) {
  const AcceptanceContext ctx(solver_config(c), c.y0);
  std::vector<CriterionResult> results;
  if (c.only.empty()) {
    results = run_all(ctx, thread_budget());
  } else {
    for (int id : c.only) {
      if (id < 1 || id > criterion_count()) throw UsageError("--only takes criterion numbers 1.." + std::to_string(criterion_count()));
      results.push_back(run_criterion(id, ctx));
    }
  }
  json arr = json::array();
  for (const auto& r : results) {
    out << summary_line(r) << "\n";
    arr.push_back(criterion_json(r));
    append(rep.checks, r.checks);
    if (!r.error.empty()) rep.checks.push_back({r.name + " raised: " + r.error, 0, 1, 0, false, "no exception"});
  }
  rep.doc["criteria"] = arr;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Numerical workbench for TYCZ coefficients of Kahler-Einstein metrics and Calabi's tube metric",
               "tycz_lab"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--y0", cfg.y0, "initial value y(0)");
  app.add_option("--n", cfg.n, "complex dimension")->check(CLI::PositiveNumber);
  app.add_option("--order", cfg.order, "origin series truncation order (even, >= 6)");
  app.add_option("--rtol", cfg.rtol, "relative quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "output directory for JSON/CSV artifacts");
  app.add_option("--precision", cfg.precision, "series arithmetic precision")
      ->check(CLI::IsMember({"double", "extended"}));
  app.add_option("--format", cfg.format, "stdout format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", cfg.seed, "seed for randomized spot checks");
  app.add_option("--profile", cfg.profile_path, "read the radial profile from a CSV file instead of solving");

  auto* series = app.add_subcommand("series", "origin Taylor series, P/Q/S coefficients and origin limits");
  auto* solve = app.add_subcommand("solve", "radial profile to the blow-up radius");
  auto* inv = app.add_subcommand("invariants", "curvature invariants along the profile and at one point");
  inv->add_option("--r", cfg.r, "radius of the pointwise dump (default a/2)");
  auto* limits = app.add_subcommand("limits", "endpoint limits of |R|^2, A, B, C and the a3 witness");
  auto* tycz = app.add_subcommand("tycz", "a1, a2, a3 of a model space");
  tycz->add_option("--model", cfg.model, "flat, projective or hyperbolic");
  tycz->add_option("--scale", cfg.scale, "potential scale");
  auto* eps = app.add_subcommand("epsilon", "epsilon functions of model spaces and expansion fits");
  eps->add_option("--model", cfg.model, "flat, disc or projective");
  eps->add_option("--scale", cfg.scale, "potential scale (mu for disc, k for projective)");
  eps->add_option("--alpha-min", cfg.alpha_min, "smallest weight");
  eps->add_option("--alpha-max", cfg.alpha_max, "largest weight");
  eps->add_option("--count", cfg.count, "number of weights");
  eps->add_option("--fit-order", cfg.fit_order, "number of fitted subleading coefficients");
  auto* hnorm = app.add_subcommand("hnorm", "weighted norm of the section h on the tube domain");
  hnorm->add_option("--alpha", cfg.alphas, "weights (> 1)");
  auto* verify = app.add_subcommand("verify-all", "full acceptance suite");
  verify->add_option("--only", cfg.only, "run only these criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.order == 0) cfg.order = cfg.command == "series" ? 24 : SolverConfig{}.series_order;
  Report rep;
  try {
    rep.doc = envelope(cfg);
    if (cfg.precision == "extended" && cfg.command != "series")
      rep.doc["params"]["precision_effective"] = "double";
    if (series->parsed()) cmd_series(cfg, rep);
    if (solve->parsed()) cmd_solve(cfg, rep);
    if (inv->parsed()) cmd_invariants(cfg, rep);
    if (limits->parsed()) cmd_limits(cfg, rep);
    if (tycz->parsed()) cmd_tycz(cfg, rep);
    if (eps->parsed()) cmd_epsilon(cfg, rep);
    if (hnorm->parsed()) cmd_hnorm(cfg, rep);
    if (verify->parsed()) cmd_verify_all(cfg, rep, cfg.out.empty() ? err : out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }

  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back(check_json(c));
  const bool pass = all_pass(rep.checks);
  rep.doc["checks"] = checks;
  rep.doc["pass"] = pass;

  if (!cfg.out.empty()) {
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    const fs::path dir(cfg.out);
    auto write = [&](const std::string& name, const std::string& text) {
      std::ofstream f(dir / name, std::ios::binary);
      if (!(f << text)) throw UsageError("cannot write " + (dir / name).string());
    };
    try {
      write(cfg.command + ".json", rep.doc.dump(2) + "\n");
      for (const auto& [name, text] : rep.files) write(name, text);
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << "\n";
      return kExitUsage;
    }
    for (const auto& c : rep.checks) out << (c.pass ? "ok    " : "FAIL  ") << c.claim << "\n";
  } else if (cfg.format == "csv" && !rep.csv.empty()) {
    out << rep.csv;
  } else {
    out << rep.doc.dump(2) << "\n";
  }
  return pass ? kExitOk : kExitCheckFailed;
}

}  // namespace tycz
