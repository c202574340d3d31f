#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "fathom/errors.hpp"

namespace fathom {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Bilinear form used for Gram-Schmidt; arguments are matrices of one fixed size.
using MatInner = std::function<double(const Mat&, const Mat&)>;

/// Modified Gram-Schmidt with re-orthogonalization against an arbitrary inner
/// product. Throws degenerate_basis when the input is not independent.
inline std::vector<Mat> orthonormalize(const std::vector<Mat>& input, const MatInner& inner,
                                       double rank_tol = 1e-10) {
  std::vector<Mat> out;
  out.reserve(input.size());
  for (const Mat& raw : input) {
    const double scale0 = std::sqrt(std::max(inner(raw, raw), 0.0));
    Mat v = raw;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Mat& e : out) v -= inner(e, v) * e;
    }
    const double n = std::sqrt(std::max(inner(v, v), 0.0));
    if (n <= rank_tol * std::max(scale0, 1.0)) {
      throw degenerate_basis("orthonormalize: rank-deficient input");
    }
    out.push_back(v / n);
  }
  return out;
}

/// Column-space rank with an absolute singular-value threshold.
inline int numerical_rank(const Mat& columns, double sv_tol = 1e-8) {
  if (columns.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(columns);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > sv_tol) ++r;
  }
  return r;
}

/// Smallest singular value (0 for an empty matrix).
inline double smallest_singular_value(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().tail(1)(0);
}

/// Orthonormal basis of the column space, singular vectors above sv_tol.
inline Mat column_space_basis(const Mat& columns, double sv_tol = 1e-8) {
  if (columns.cols() == 0) return Mat::Zero(columns.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(columns, Eigen::ComputeThinU);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > sv_tol) ++r;
  }
  return svd.matrixU().leftCols(r);
}

/// Checks symmetry and an eigenvalue floor; throws invalid_metric on failure.
inline void require_spd(const Mat& m, const char* what, double eig_floor = 1e-12) {
  if (m.rows() != m.cols()) throw invalid_metric(std::string(what) + ": not square");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    throw invalid_metric(std::string(what) + ": not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= eig_floor) {
    throw invalid_metric(std::string(what) + ": eigenvalue below floor");
  }
}

inline Mat spd_inverse(const Mat& m) { return m.llt().solve(Mat::Identity(m.rows(), m.cols())); }

/// Deterministic lattice on the unit sphere of R^dim: spherical-coordinate
/// grid with half-offset angles, density^(dim-1) points, plus the +-axis
/// points as extra seeds. dim = 1 yields the single point {1}.
inline std::vector<Vec> sphere_lattice(int dim, int density) {
  std::vector<Vec> pts;
  if (dim <= 0) return pts;
  if (dim == 1) {
    pts.push_back(Vec::Ones(1));
    return pts;
  }
  const double pi = std::acos(-1.0);
  long total = 1;
  for (int i = 0; i < dim - 1; ++i) total *= density;
  pts.reserve(static_cast<size_t>(total) + 2 * dim);
  std::vector<int> idx(dim - 1, 0);
  for (long n = 0; n < total; ++n) {
    long rem = n;
    for (int i = 0; i < dim - 1; ++i) {
      idx[i] = static_cast<int>(rem % density);
      rem /= density;
    }
    Vec u(dim);
    double sinprod = 1.0;
    for (int i = 0; i < dim - 1; ++i) {
      // last angle sweeps the full circle, the others the half arc
      const double span = (i == dim - 2) ? 2.0 * pi : pi;
      const double a = span * (idx[i] + 0.5) / density;
      u(i) = sinprod * std::cos(a);
      sinprod *= std::sin(a);
    }
    u(dim - 1) = sinprod;
    pts.push_back(u.normalized());
  }
  for (int i = 0; i < dim; ++i) {
    Vec e = Vec::Zero(dim);
    e(i) = 1.0;
    pts.push_back(e);
    pts.push_back(-e);
  }
  return pts;
}

/// Classical fixed-step RK4 for u' = f(t, u); returns every step including u0.
inline std::vector<Vec> rk4(const std::function<Vec(double, const Vec&)>& f, Vec u0, double t0,
                            double step, long nsteps) {
  std::vector<Vec> out;
  out.reserve(static_cast<size_t>(nsteps) + 1);
  out.push_back(u0);
  Vec u = std::move(u0);
  double t = t0;
  for (long i = 0; i < nsteps; ++i) {
    const Vec k1 = f(t, u);
    const Vec k2 = f(t + 0.5 * step, u + 0.5 * step * k1);
    const Vec k3 = f(t + 0.5 * step, u + 0.5 * step * k2);
    const Vec k4 = f(t + step, u + step * k3);
    u += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += step;
    out.push_back(u);
  }
  return out;
}

}  // namespace fathom
