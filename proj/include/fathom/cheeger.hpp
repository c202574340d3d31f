#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "fathom/submersion.hpp"

namespace fathom {

/// Orbit tensor O on a Q-orthonormal orbit basis: g(U*, V*) = Q(OU, V).
struct OrbitData {
  int dim_orbit = 0;
  Mat Q_gram;  // identity after orthonormalization
  Mat O;
};

inline OrbitData orbit_tensor(const Mat& metric_gram_on_orbit) {
  require_spd(metric_gram_on_orbit, "orbit_tensor");
  const int n = static_cast<int>(metric_gram_on_orbit.rows());
  return OrbitData{n, Mat::Identity(n, n), metric_gram_on_orbit};
}

namespace detail {
inline void assert_agree(const Mat& a, const Mat& b, const char* what, double tol = 1e-12) {
  const double r = (a - b).cwiseAbs().maxCoeff();
  if (!(r < tol)) {
    throw invalid_metric(std::string(what) + ": closed forms disagree, residual " +
                         std::to_string(r));
  }
}
}  // namespace detail

/// O_t = (O^-1 + t)^-1 = O(1 + tO)^-1; both forms evaluated and compared.
inline Mat deform(const Mat& O, double t) {
  const Mat I = Mat::Identity(O.rows(), O.cols());
  const Mat form1 = spd_inverse(spd_inverse(O) + t * I);
  const Mat form2 = O * (I + t * O).inverse();
  detail::assert_agree(form1, form2, "deform");
  return form1;
}

/// Metric tensor of g_t on a decomposed vector: the horizontal part passes
/// through, the orbit part is multiplied by (1 + tO)^-1.
inline std::pair<Vec, Vec> apply_Ct(const Mat& O, double t, const Vec& X_horizontal,
                                    const Vec& U_orbit) {
  const Mat I = Mat::Identity(O.rows(), O.cols());
  return {X_horizontal, (I + t * O).inverse() * U_orbit};
}

/// Tensor pack of the generalized deformation for orbit tensors O (base side)
/// and O_F (fiber side) at parameter t.
struct DeformationTensors {
  double t = 0.0;
  Mat O_t;
  Mat C_t_vertical_part;  // (1 + tO)^-1
  Mat O_F;
  Mat O_tilde;  // (O_F^-1 + O_t^-1)^-1
  Mat C_tilde;  // -O^-1 O_tilde
};

inline DeformationTensors tilde_tensors(const Mat& O, const Mat& O_F, double t) {
  require_spd(O, "tilde_tensors: O");
  require_spd(O_F, "tilde_tensors: O_F");
  DeformationTensors d;
  d.t = t;
  d.O_t = deform(O, t);
  d.O_F = O_F;
  const Mat I = Mat::Identity(O.rows(), O.cols());
  d.C_t_vertical_part = (I + t * O).inverse();
  const Mat Ot_inv = spd_inverse(d.O_t);
  const Mat OF_inv = spd_inverse(O_F);
  const Mat form1 = O_F * (I + Ot_inv * O_F).inverse();
  const Mat form2 = spd_inverse(OF_inv + Ot_inv);
  detail::assert_agree(form1, form2, "tilde_tensors: O_tilde");
  d.O_tilde = form2;
  require_spd(d.O_tilde, "tilde_tensors: O_tilde");
  const Mat ct1 = -d.C_t_vertical_part * Ot_inv * d.O_tilde;
  const Mat ct2 = -spd_inverse(O) * d.O_tilde;
  detail::assert_agree(ct1, ct2, "tilde_tensors: C_tilde");
  d.C_tilde = ct2;
  return d;
}

/// Tangent vector of the product P x F split into horizontal parts and
/// star-action orbit directions on each side.
struct ProductTangent {
  Vec X_P_horizontal;
  Vec V_vee;  // P-side orbit direction
  Vec X_F_horizontal;
  Vec W_star;  // F-side orbit direction
};

/// Horizontal lift of X + X_F + U* through the product submersion:
/// (X - (O_t^-1 O_tilde U)^vee, X_F + (O_F^-1 O_tilde U)*). Orbit-direction
/// orthogonality and the reconstruction identity are asserted on every call.
inline ProductTangent horizontal_lift(const Mat& O, const Mat& O_F, double t, const Vec& X,
                                      const Vec& X_F, const Vec& U) {
  const DeformationTensors d = tilde_tensors(O, O_F, t);
  ProductTangent out;
  out.X_P_horizontal = X;
  out.X_F_horizontal = X_F;
  const Vec tU = d.O_tilde * U;
  out.V_vee = -spd_inverse(d.O_t) * tU;
  out.W_star = spd_inverse(O_F) * tU;
  const Vec ortho = d.O_t * out.V_vee + O_F * out.W_star;
  if (ortho.cwiseAbs().maxCoeff() >= 1e-12 * std::max(1.0, U.cwiseAbs().maxCoeff())) {
    throw invalid_metric("horizontal_lift: star-orbit orthogonality failed");
  }
  const Vec rec = out.W_star - out.V_vee;
  if ((rec - U).cwiseAbs().maxCoeff() >= 1e-12 * std::max(1.0, U.cwiseAbs().maxCoeff())) {
    throw invalid_metric("horizontal_lift: reconstruction identity failed");
  }
  return out;
}

/// The Q_t family: the product metric g_P + t g_F evaluated on the t-lifts
/// of X + U* and Y + V*. Horizontal inner products pass through g_P = Q.
inline double qt_metric(const Mat& O, const Mat& O_F, double t, const Vec& X, const Vec& U,
                        const Vec& Y, const Vec& V) {
  const DeformationTensors d = tilde_tensors(O, O_F, t);
  const Mat A = spd_inverse(d.O_t) * d.O_tilde;
  const Mat B = spd_inverse(O_F) * d.O_tilde;
  const double vert = (A * U).dot(O * (A * V)) + t * (B * U).dot(O_F * (B * V));
  return X.dot(Y) + vert;
}

/// Analytic limit of Q_t as t -> infinity: Q(X,Y) + Q(OU, V).
inline double qt_metric_limit(const Mat& O, const Vec& X, const Vec& U, const Vec& Y,
                              const Vec& V) {
  return X.dot(Y) + U.dot(O * V);
}

/// Vertizontal curvature of the t-Cheeger-deformed normal metric on the
/// homogeneous model, computed on the product G x H with metric Q + (1/t) Q_H:
/// the plane (X, V) lifts to ((X,0), (V,-tV)/(1+t)) and the bi-invariant
/// product curvature plus the O'Neill term of the diagonal quotient is
/// evaluated on the lifted plane.
inline double deformed_vertizontal_sec(const HomogeneousTriple& tr, double t, const Vec& X,
                                       const Vec& V) {
  if (t < 0.0) throw dimension_mismatch("deformed_vertizontal_sec: t must be >= 0");
  if (t == 0.0) return vertizontal_sec(tr, X, V);
  const Vec C = tr.g->bracket_coords(tr.m * X, tr.p * V);  // g-side bracket of the lifts
  const double e = 1.0 / (1.0 + t);
  const Vec Ch = tr.h.coords.transpose() * C;
  const double k_prod = 0.25 * e * e * C.squaredNorm();
  const double a_term = 0.75 * e * e * Ch.squaredNorm() * (t / (1.0 + t));
  return k_prod + a_term;
}

/// Metric operator of the deformed metric on g: identity on m, (1+t)^-1 on h.
/// Feeding it to left_invariant_curvature gives the independent cross-check.
inline Mat deformed_metric_operator(const HomogeneousTriple& tr, double t) {
  const Mat Ph = tr.h.coords * tr.h.coords.transpose();
  return Mat::Identity(tr.dim_g(), tr.dim_g()) - (t / (1.0 + t)) * Ph;
}

/// One row of a deformation sweep for the CSV interface.
struct DeformSweepRow {
  double t = 0.0;
  double min_vertizontal = 0.0;
  double min_eig_Ot = 0.0;
  double qt_residual = 0.0;
};

/// Sweeps t over the given list: minimum sampled vertizontal curvature,
/// smallest eigenvalue of O_t for the orbit tensor O = id, and the entrywise
/// residual of Q_t against its analytic limit on the basis sample.
inline std::vector<DeformSweepRow> deform_sweep(const HomogeneousTriple& tr,
                                                const std::vector<double>& ts, int n_samples,
                                                uint64_t seed) {
  std::vector<DeformSweepRow> rows;
  const int dm = tr.dim_m();
  const int dp = tr.dim_p();
  const int dh = tr.dim_h();
  const Mat O = Mat::Identity(dh, dh);
  for (double t : ts) {
    DeformSweepRow row;
    row.t = t;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto unit = [&](int d) {
      Vec v(d);
      for (int i = 0; i < d; ++i) v(i) = gauss(rng);
      return Vec(v.normalized());
    };
    double mn = std::numeric_limits<double>::infinity();
    for (int s = 0; s < n_samples; ++s) {
      mn = std::min(mn, deformed_vertizontal_sec(tr, t, unit(dm), unit(dp)));
    }
    row.min_vertizontal = mn;
    row.min_eig_Ot = 1.0 / (1.0 + t);
    double res = 0.0;
    for (int i = 0; i < dm + dh; ++i) {
      for (int j = i; j < dm + dh; ++j) {
        const Vec Xi = i < dm ? Vec(Vec::Unit(dm, i)) : Vec(Vec::Zero(dm));
        const Vec Ui = i < dm ? Vec(Vec::Zero(dh)) : Vec(Vec::Unit(dh, i - dm));
        const Vec Xj = j < dm ? Vec(Vec::Unit(dm, j)) : Vec(Vec::Zero(dm));
        const Vec Uj = j < dm ? Vec(Vec::Zero(dh)) : Vec(Vec::Unit(dh, j - dm));
        const double qt = qt_metric(O, O, t, Xi, Ui, Xj, Uj);
        const double ql = qt_metric_limit(O, Xi, Ui, Xj, Uj);
        res = std::max(res, std::abs(qt - ql));
      }
    }
    row.qt_residual = res;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fathom
