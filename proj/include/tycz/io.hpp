#pragma once

// CSV and JSON serialization of profiles, curvature records, series, point
// data and ε reports. Numbers are written with 17 significant digits so that
// files round-trip exactly.

#include <iosfwd>
#include <json.hpp>
#include <span>
#include <stdexcept>
#include <string>

#include "tycz/calabi_ode.hpp"
#include "tycz/curvature_radial.hpp"
#include "tycz/epsilon_models.hpp"
#include "tycz/series.hpp"
#include "tycz/tensor_oracle.hpp"

namespace tycz {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using json = nlohmann::ordered_json;

/// `# key=value` metadata lines, then `r,y,yp,ypp,yppp,ypppp`.
void write_profile_csv(std::ostream& os, const RadialProfile& profile);
RadialProfile read_profile_csv(std::istream& is);
RadialProfile read_profile_csv(const std::string& path);

/// `r,R2,dR2,d2R2,lapR2,a1,a2,a3,A,B,C`.
void write_curvature_csv(std::ostream& os, std::span<const CurvatureSample> samples);

/// `alpha,epsilon`.
void write_epsilon_csv(std::ostream& os, const EpsilonSeries& series);

json series_json(const TaylorPoly<double>& s);
TaylorPoly<double> series_from_json(const json& j);

/// Tensors flattened row-major: g and ric over (i, j̄), riem over (i, j̄, k, l̄);
/// complex entries as [re, im].
json point_data_json(const KahlerPointData& d);

json section_norm_json(const SectionNormReport& r);
json fit_json(const ExpansionFit& f);

/// Shortest decimal that round-trips a double.
std::string format_double(double x);

}  // namespace tycz
