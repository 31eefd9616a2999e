#pragma once

// Pointwise Kähler curvature from a potential: metric jet, Riemann tensor
// R_{ij̄kl̄} = ∂_k∂_l̄ g_{ij̄} - g^{pq̄} ∂_k g_{iq̄} ∂_l̄ g_{pj̄}, Ricci, scalar
// invariants, and the TYCZ coefficients of Kähler-Einstein metrics.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tycz/calabi_ode.hpp"

namespace tycz {

using cplx = std::complex<double>;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// g_{ij̄} = g(i, j), ∂_k g_{ij̄} = dg[k](i, j), ∂_k ∂_l̄ g_{ij̄} = ddg[k][l](i, j).
struct MetricJet {
  Eigen::MatrixXcd g;
  std::vector<Eigen::MatrixXcd> dg;
  std::vector<std::vector<Eigen::MatrixXcd>> ddg;
};

struct KahlerPointData {
  int n = 0;
  Eigen::MatrixXcd g;
  Eigen::MatrixXcd ginv;           // ordinary matrix inverse of g; g^{pq̄} = ginv(q, p)
  std::vector<cplx> riem;          // R_{ij̄kl̄} at ((i n + j) n + k) n + l
  Eigen::MatrixXcd ric;            // Ric_{ij̄}
  double sigma = 0, R2 = 0, Ric2 = 0;

  cplx R(int i, int j, int k, int l) const {
    return riem[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)];
  }
};

enum class PotentialKind { tube_radial, rotation_radial };

/// Potential depending on one real variable.
///  tube_radial:     F(z) = y(r), r = |x|, x = z + z̄; derivatives (y, y', y'', y''', y'''') at r.
///  rotation_radial: F(z) = φ(u), u = |z|²; derivatives (φ, φ', φ'', φ''', φ'''') at u.
struct PotentialFamily {
  PotentialKind kind = PotentialKind::rotation_radial;
  int n = 1;
  std::function<std::array<double, 5>(double)> derivatives;
  double domain_max = 0;  // r < domain_max (tube) or u < domain_max (rotation); 0 = unbounded

  static PotentialFamily tube(std::shared_ptr<const RadialProfile> profile);
  static PotentialFamily rotation(int n, std::function<std::array<double, 5>(double)> phi,
                                  double u_max = 0.0);
  static PotentialFamily flat(int n, double scale = 1.0);         // φ = scale u
  static PotentialFamily projective(int n, double scale = 1.0);   // φ = scale log(1 + u)
  static PotentialFamily hyperbolic(int n, double scale = 1.0);   // φ = -scale log(1 - u)
};

MetricJet metric_jet(const PotentialFamily& p, const Eigen::VectorXcd& z);

/// Curvature data from an explicit metric jet.
KahlerPointData curvature_from_jet(const MetricJet& jet);

KahlerPointData curvature_from_potential(const PotentialFamily& p, const Eigen::VectorXcd& z);

/// Largest violation of the Riemann symmetries, relative to max |R|.
double riemann_symmetry_defect(const KahlerPointData& d);

struct LuScalars {
  double sigma3 = 0;      // σ3(Ric)
  double RicRR = 0;       // Ric(R,R)
  double RRicRic = 0;     // R(Ric,Ric)
  double divdivRRic = 0;  // -R(Ric,Ric) + σ3(Ric), valid for Kähler-Einstein metrics
};

LuScalars lu_scalars(const KahlerPointData& d);

struct TyczCoefficients {
  double a1 = 0, a2 = 0, a3 = 0;
};

/// a1 = -nλ/2, a2 = (|R|² + nλ²(3n-4))/24, a3 = (Δ|R|² - λ(n-2)(λ²n(n-2) + |R|²))/48.
TyczCoefficients tycz_coeffs_ke(double R2, double lapR2, double lambda, int n);

/// max |Ric - λ g| with λ = σ/n.
double einstein_defect(const KahlerPointData& d);

/// a3 from the general curvature formula with the derivative terms that vanish
/// for Kähler-Einstein metrics dropped. Throws unless Ric = (σ/n) g to 1e-6.
double tycz_a3_pipeline_ke(const KahlerPointData& d, double lapR2);

/// a2 from the general formula with Δσ = 0.
double tycz_a2_general(const KahlerPointData& d);

enum class ModelSpace { flat, projective, hyperbolic };

ModelSpace parse_model(const std::string& name);
std::string model_name(ModelSpace m);

struct ModelData {
  double lambda = 0, sigma = 0, R2 = 0, Ric2 = 0;
  TyczCoefficients coeffs;
  double homogeneity_defect = 0;  // spread of the invariants over the sample points
};

/// Invariants of the model metric (flat φ = s u, projective φ = s log(1+u),
/// hyperbolic φ = -s log(1-u)) at three points; Δ|R|² = 0 by homogeneity.
ModelData model_space_data(ModelSpace model, int n, double scale = 1.0);

}  // namespace tycz
