#pragma once

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fathom/catalog.hpp"
#include "fathom/cheeger.hpp"
#include "fathom/classify.hpp"
#include "fathom/dualfol.hpp"
#include "fathom/fatness.hpp"
#include "fathom/holonomy.hpp"

namespace fathom {

using Json = nlohmann::ordered_json;

/// Shared run configuration for the command-line front end.
struct RunConfig {
  double tolerance = 1e-9;
  int grid_density = 32;
  int refine_iters = 20;
  double ode_step = 1e-3;
  double horizon = 10.0;
  std::string output = "text";  // text | json | csv
  std::uint64_t seed = 20240101;
  std::string data_dir = Catalog::default_data_dir();

  void validate() const {
    if (!(tolerance > 0) || grid_density <= 0 || refine_iters < 0 || !(ode_step > 0) ||
        !(horizon > 0)) {
      throw dimension_mismatch("RunConfig: all numeric settings must be positive");
    }
    if (output != "text" && output != "json" && output != "csv") {
      throw dimension_mismatch("RunConfig: output must be text, json or csv");
    }
  }

  Json to_json() const {
    return Json{{"tolerance", tolerance}, {"grid_density", grid_density},
                {"refine_iters", refine_iters}, {"ode_step", ode_step},
                {"horizon", horizon},     {"output", output}};
  }
};

inline Json to_json(const Vec& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

inline Json to_json(const FatnessReport& r) {
  return Json{{"verdict", to_string(r.verdict)},
              {"margin", r.margin},
              {"witness", to_json(r.witness)},
              {"grid_density", r.grid_density},
              {"refine_iters", r.refine_iters},
              {"tolerance", r.tolerance},
              {"note", r.note}};
}

inline Json to_json(const ConstraintReport& r) {
  return Json{{"even_base", r.even_base},
              {"equality_case_dims", r.equality_case_dims},
              {"multiple_of_4", r.multiple_of_4},
              {"multiple_of_8", r.multiple_of_8},
              {"overall", r.overall},
              {"detail", r.detail}};
}

inline Json to_json(const SpanReport& r) {
  return Json{{"depth_dims", r.depth_dims},
              {"saturated_at", r.saturated_at},
              {"twisted", r.twisted}};
}

inline Json to_json(const RowVerdict& v) {
  return Json{{"dim", to_string(v.dim_ok)},
              {"even_base", to_string(v.even_base_ok)},
              {"multiples", to_string(v.multiples_ok)},
              {"rank", to_string(v.rank_ok)},
              {"symmetric_pair", to_string(v.symmetric_pair_ok)},
              {"fatness", to_string(v.fatness_ok)},
              {"fat_margin", v.fat_margin},
              {"notes", v.notes},
              {"flags", v.flags}};
}

inline Json report_envelope(const std::string& command, const RunConfig& cfg) {
  return Json{{"command", command}, {"seed", cfg.seed}, {"config", cfg.to_json()}};
}

inline std::string csv_number(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

inline std::string deform_csv(const std::vector<DeformSweepRow>& rows) {
  std::ostringstream out;
  out << "t,min_vertizontal,min_eig_Ot,qt_residual\n";
  for (const auto& r : rows) {
    out << csv_number(r.t) << ',' << csv_number(r.min_vertizontal) << ','
        << csv_number(r.min_eig_Ot) << ',' << csv_number(r.qt_residual) << '\n';
  }
  return out.str();
}

/// Trajectory dump: t, vertical components, |A*_X xi|, pairing <xi, nu>.
inline std::string holonomy_csv(const HomogeneousTriple& tr, const FieldTrajectory& xi,
                                const FieldTrajectory& nu, const Vec& direction,
                                double& pairing_drift, double& norm_drift) {
  std::ostringstream out;
  out << "t";
  for (int i = 0; i < tr.dim_p(); ++i) out << ",xi_" << i;
  out << ",astar_norm,pairing\n";
  const double pairing0 = xi.values.front().dot(nu.values.front());
  const double norm0 = xi.values.front().norm();
  pairing_drift = 0.0;
  norm_drift = 0.0;
  for (size_t s = 0; s < xi.values.size(); ++s) {
    const Vec p_coords = tr.p.transpose() * xi.values[s];
    const double astar = a_star(tr, direction, p_coords).norm();
    const double pairing = xi.values[s].dot(nu.values[s]);
    pairing_drift = std::max(pairing_drift, std::abs(pairing - pairing0));
    norm_drift = std::max(norm_drift, std::abs(xi.values[s].norm() - norm0));
    out << csv_number(xi.times[s]);
    for (int i = 0; i < p_coords.size(); ++i) out << ',' << csv_number(p_coords(i));
    out << ',' << csv_number(astar) << ',' << csv_number(pairing) << '\n';
  }
  out << "# summary pairing_drift=" << csv_number(pairing_drift)
      << " norm_drift=" << csv_number(norm_drift) << '\n';
  return out.str();
}

}  // namespace fathom
