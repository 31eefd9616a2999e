#include "tycz/tensor_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace tycz {
namespace {

MetricJet empty_jet(int n) {
  MetricJet jet;
  jet.g = Eigen::MatrixXcd::Zero(n, n);
  jet.dg.assign(static_cast<std::size_t>(n), Eigen::MatrixXcd::Zero(n, n));
  jet.ddg.assign(static_cast<std::size_t>(n), jet.dg);
  return jet;
}

double kron(int a, int b) { return a == b ? 1.0 : 0.0; }

// F = y(|x|), x = z + z̄: g_{ij̄} = A δ_ij + B x_i x_j with A = y'/r, B = (y'' - A)/r².
MetricJet tube_jet(const PotentialFamily& p, const Eigen::VectorXcd& z) {
  const int n = p.n;
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = 2.0 * z(i).real();
  const double r = x.norm();
  if (!(r > 0.0)) throw GeometryError("tube potential evaluated at r = 0");
  if (p.domain_max > 0 && !(r < p.domain_max)) throw GeometryError("point outside the tube domain");
  const auto d = p.derivatives(r);
  const double yp = d[1], ypp = d[2], y3 = d[3], y4 = d[4];
  // (rA)' = y'', so A' = (y'' - A)/r, A'' = (y''' - 2A')/r, A''' = (y'''' - 3A'')/r
  const double A = yp / r;
  const double A1 = (ypp - A) / r;
  const double A2 = (y3 - 2 * A1) / r;
  const double A3 = (y4 - 3 * A2) / r;
  // B = A'/r
  const double B = A1 / r;
  const double B1 = (A2 - B) / r;
  const double B2 = (A3 - 2 * B1) / r;
  // ∂_k A = a1 x_k, ∂_l a1 = a1p x_l / r, likewise for B
  const double a1 = A1 / r, a1p = A2 / r - A1 / (r * r);
  const double b1 = B1 / r, b1p = B2 / r - B1 / (r * r);

  MetricJet jet = empty_jet(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) jet.g(i, j) = A * kron(i, j) + B * x(i) * x(j);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        jet.dg[k](i, j) = a1 * x(k) * kron(i, j) + b1 * x(i) * x(j) * x(k) +
                          B * (kron(i, k) * x(j) + kron(j, k) * x(i));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double xl = x(l) / r;
          jet.ddg[k][l](i, j) =
              a1p * xl * x(k) * kron(i, j) + a1 * kron(k, l) * kron(i, j) +
              b1p * xl * x(i) * x(j) * x(k) +
              b1 * (kron(i, l) * x(j) * x(k) + kron(j, l) * x(i) * x(k) + kron(k, l) * x(i) * x(j)) +
              B1 * xl * (kron(i, k) * x(j) + kron(j, k) * x(i)) +
              B * (kron(i, k) * kron(j, l) + kron(j, k) * kron(i, l));
        }
  return jet;
}

// F = φ(|z|²): g_{ij̄} = φ' δ_ij + φ'' z̄_i z_j.
MetricJet rotation_jet(const PotentialFamily& p, const Eigen::VectorXcd& z) {
  const int n = p.n;
  const double u = z.squaredNorm();
  if (p.domain_max > 0 && !(u < p.domain_max)) throw GeometryError("point outside the potential's domain");
  const auto d = p.derivatives(u);
  const double f1 = d[1], f2 = d[2], f3 = d[3], f4 = d[4];
  const Eigen::VectorXcd zb = z.conjugate();

  MetricJet jet = empty_jet(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) jet.g(i, j) = f1 * kron(i, j) + f2 * zb(i) * z(j);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        jet.dg[k](i, j) = f2 * (zb(k) * kron(i, j) + zb(i) * kron(j, k)) + f3 * zb(k) * zb(i) * z(j);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          jet.ddg[k][l](i, j) =
              f3 * z(l) * (zb(k) * kron(i, j) + zb(i) * kron(j, k)) +
              f2 * (kron(k, l) * kron(i, j) + kron(i, l) * kron(j, k)) +
              f4 * z(l) * zb(k) * zb(i) * z(j) +
              f3 * (kron(k, l) * zb(i) * z(j) + zb(k) * kron(i, l) * z(j));
  return jet;
}

// Columns of U form a g-orthonormal frame: U^T g conj(U) = I.
Eigen::MatrixXcd orthonormal_frame(const Eigen::MatrixXcd& g) {
  Eigen::LLT<Eigen::MatrixXcd> llt(g);
  if (llt.info() != Eigen::Success) throw GeometryError("metric is not positive definite");
  const Eigen::MatrixXcd L = llt.matrixL();
  const Eigen::MatrixXcd Linv =
      L.triangularView<Eigen::Lower>().solve(Eigen::MatrixXcd::Identity(g.rows(), g.cols()));
  return Linv.transpose();
}

struct FrameData {
  int n;
  std::vector<cplx> R;  // frame components R̂_{abcd}
  Eigen::MatrixXcd ric;
  cplx at(int a, int b, int c, int d) const {
    return R[static_cast<std::size_t>(((a * n + b) * n + c) * n + d)];
  }
};

FrameData to_frame(const KahlerPointData& d) {
  const int n = d.n;
  const Eigen::MatrixXcd U = orthonormal_frame(d.g);
  const Eigen::MatrixXcd Uc = U.conjugate();
  FrameData f{n, std::vector<cplx>(static_cast<std::size_t>(n * n * n * n)), {}};
  // contract one index at a time
  auto idx = [n](int i, int j, int k, int l) { return static_cast<std::size_t>(((i * n + j) * n + k) * n + l); };
  std::vector<cplx> t1(f.R.size()), t2(f.R.size()), t3(f.R.size());
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          cplx s = 0;
          for (int i = 0; i < n; ++i) s += U(i, a) * d.R(i, j, k, l);
          t1[idx(a, j, k, l)] = s;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          cplx s = 0;
          for (int j = 0; j < n; ++j) s += Uc(j, b) * t1[idx(a, j, k, l)];
          t2[idx(a, b, k, l)] = s;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int l = 0; l < n; ++l) {
          cplx s = 0;
          for (int k = 0; k < n; ++k) s += U(k, c) * t2[idx(a, b, k, l)];
          t3[idx(a, b, c, l)] = s;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e) {
          cplx s = 0;
          for (int l = 0; l < n; ++l) s += Uc(l, e) * t3[idx(a, b, c, l)];
          f.R[idx(a, b, c, e)] = s;
        }
  f.ric = U.transpose() * d.ric * Uc;
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------

PotentialFamily PotentialFamily::tube(std::shared_ptr<const RadialProfile> profile) {
  if (!profile) throw GeometryError("tube potential needs a profile");
  PotentialFamily p;
  p.kind = PotentialKind::tube_radial;
  p.n = profile->n();
  p.domain_max = profile->r_max() * (1.0 + 1e-15);
  p.derivatives = [profile](double r) {
    const auto s = profile->state_at(r);
    return std::array<double, 5>{s.y, s.yp, s.ypp, s.yppp, s.ypppp};
  };
  return p;
}

PotentialFamily PotentialFamily::rotation(int n, std::function<std::array<double, 5>(double)> phi,
                                          double u_max) {
  if (n < 1) throw GeometryError("dimension must be positive");
  PotentialFamily p;
  p.kind = PotentialKind::rotation_radial;
  p.n = n;
  p.derivatives = std::move(phi);
  p.domain_max = u_max;
  return p;
}

PotentialFamily PotentialFamily::flat(int n, double s) {
  return rotation(n, [s](double u) { return std::array<double, 5>{s * u, s, 0, 0, 0}; });
}

PotentialFamily PotentialFamily::projective(int n, double s) {
  return rotation(n, [s](double u) {
    const double w = 1.0 / (1.0 + u);
    return std::array<double, 5>{s * std::log1p(u), s * w, -s * w * w, 2 * s * w * w * w,
                                 -6 * s * w * w * w * w};
  });
}

PotentialFamily PotentialFamily::hyperbolic(int n, double s) {
  return rotation(
      n,
      [s](double u) {
        const double w = 1.0 / (1.0 - u);
        return std::array<double, 5>{-s * std::log1p(-u), s * w, s * w * w, 2 * s * w * w * w,
                                     6 * s * w * w * w * w};
      },
      1.0);
}

MetricJet metric_jet(const PotentialFamily& p, const Eigen::VectorXcd& z) {
  if (z.size() != p.n) throw GeometryError("point dimension does not match the potential");
  if (!p.derivatives) throw GeometryError("potential has no derivative data");
  return p.kind == PotentialKind::tube_radial ? tube_jet(p, z) : rotation_jet(p, z);
}

KahlerPointData curvature_from_jet(const MetricJet& jet) {
  const int n = static_cast<int>(jet.g.rows());
  KahlerPointData d;
  d.n = n;
  d.g = jet.g;
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(jet.g);
  if (!lu.isInvertible()) throw GeometryError("singular metric");
  d.ginv = lu.inverse();

  d.riem.assign(static_cast<std::size_t>(n * n * n * n), cplx(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          cplx s = jet.ddg[k][l](i, j);
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              s -= d.ginv(q, p) * jet.dg[k](i, q) * std::conj(jet.dg[l](j, p));
          d.riem[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)] = s;
        }

  d.ric = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0;
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) s += d.ginv(m, l) * d.R(i, j, l, m);
      d.ric(i, j) = s;
    }
  cplx sigma = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sigma += d.ginv(j, i) * d.ric(i, j);
  d.sigma = sigma.real();

  const FrameData f = to_frame(d);
  double R2 = 0;
  for (const auto& v : f.R) R2 += std::norm(v);
  d.R2 = R2;
  d.Ric2 = f.ric.squaredNorm();
  return d;
}

KahlerPointData curvature_from_potential(const PotentialFamily& p, const Eigen::VectorXcd& z) {
  return curvature_from_jet(metric_jet(p, z));
}

double riemann_symmetry_defect(const KahlerPointData& d) {
  const int n = d.n;
  double scale = 0, worst = 0;
  for (const auto& v : d.riem) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const cplx v = d.R(i, j, k, l);
          worst = std::max({worst, std::abs(v - d.R(k, j, i, l)), std::abs(v - d.R(i, l, k, j)),
                            std::abs(v - std::conj(d.R(j, i, l, k)))});
        }
  return scale > 0 ? worst / scale : worst;
}

LuScalars lu_scalars(const KahlerPointData& d) {
  const int n = d.n;
  const FrameData f = to_frame(d);
  const Eigen::MatrixXcd& ric = f.ric;
  LuScalars out;
  out.sigma3 = (ric * ric * ric).trace().real();
  cplx rrr = 0, rrc = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) rrc += f.at(i, j, k, l) * ric(j, i) * ric(l, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q) rrr += ric(i, j) * f.at(j, k, p, q) * f.at(k, i, q, p);
  out.RRicRic = rrc.real();
  out.RicRR = rrr.real();
  out.divdivRRic = -out.RRicRic + out.sigma3;
  return out;
}

TyczCoefficients tycz_coeffs_ke(double R2, double lapR2, double lambda, int n) {
  TyczCoefficients c;
  c.a1 = -n * lambda / 2.0;
  c.a2 = (R2 + n * lambda * lambda * (3.0 * n - 4.0)) / 24.0;
  c.a3 = (lapR2 - lambda * (n - 2.0) * (lambda * lambda * n * (n - 2.0) + R2)) / 48.0;
  return c;
}

double einstein_defect(const KahlerPointData& d) {
  const double lambda = d.sigma / d.n;
  return (d.ric - lambda * d.g).cwiseAbs().maxCoeff();
}

double tycz_a3_pipeline_ke(const KahlerPointData& d, double lapR2) {
  const double scale = std::max(1.0, d.g.cwiseAbs().maxCoeff() * std::abs(d.sigma / d.n));
  if (einstein_defect(d) > 1e-6 * scale)
    throw GeometryError("a3 pipeline needs a Kähler-Einstein point (Ric != (sigma/n) g)");
  const auto lu = lu_scalars(d);
  const double s = d.sigma;
  // ΔΔσ, div div(σ Ric), Δ|Ric|², Δσ² vanish for Kähler-Einstein metrics
  return lu.divdivRRic / 24.0 + lapR2 / 48.0 - s * (s * s + d.R2 - 4.0 * d.Ric2) / 48.0 -
         (lu.sigma3 - lu.RicRR + lu.RRicRic) / 24.0;
}

double tycz_a2_general(const KahlerPointData& d) {
  return (d.R2 - 4.0 * d.Ric2 + 3.0 * d.sigma * d.sigma) / 24.0;
}

ModelSpace parse_model(const std::string& name) {
  if (name == "flat") return ModelSpace::flat;
  if (name == "projective") return ModelSpace::projective;
  if (name == "hyperbolic") return ModelSpace::hyperbolic;
  throw std::invalid_argument("unknown model '" + name + "' (flat, projective, hyperbolic)");
}

std::string model_name(ModelSpace m) {
  switch (m) {
    case ModelSpace::flat: return "flat";
    case ModelSpace::projective: return "projective";
    case ModelSpace::hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

ModelData model_space_data(ModelSpace model, int n, double scale) {
  if (!(scale > 0)) throw GeometryError("model scale must be positive");
  if (n < 1) throw GeometryError("dimension must be positive");
  const PotentialFamily p = model == ModelSpace::flat         ? PotentialFamily::flat(n, scale)
                            : model == ModelSpace::projective ? PotentialFamily::projective(n, scale)
                                                              : PotentialFamily::hyperbolic(n, scale);
  std::vector<Eigen::VectorXcd> points;
  for (int m = 0; m < 3; ++m) {
    Eigen::VectorXcd z(n);
    for (int i = 0; i < n; ++i)
      z(i) = cplx(0.11 * (m + 1) + 0.07 * i, -0.05 * (m + 1) + 0.03 * i * m) / std::sqrt(double(n));
    points.push_back(z);
  }
  ModelData out;
  std::vector<KahlerPointData> data;
  for (const auto& z : points) data.push_back(curvature_from_potential(p, z));
  const auto& d0 = data.front();
  for (const auto& d : data)
    out.homogeneity_defect = std::max({out.homogeneity_defect, std::abs(d.sigma - d0.sigma),
                                       std::abs(d.R2 - d0.R2), std::abs(d.Ric2 - d0.Ric2)});
  out.sigma = d0.sigma;
  out.lambda = d0.sigma / n;
  out.R2 = d0.R2;
  out.Ric2 = d0.Ric2;
  out.coeffs = tycz_coeffs_ke(out.R2, 0.0, out.lambda, n);
  return out;
}

}  // namespace tycz
