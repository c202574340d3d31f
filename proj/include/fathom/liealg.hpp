#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fathom/errors.hpp"
#include "fathom/numeric.hpp"

namespace fathom {

/// Matrix commutator XY - YX.
inline Mat bracket(const Mat& X, const Mat& Y) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols() || X.rows() != X.cols()) {
    throw dimension_mismatch("bracket: operands must be square and of equal size");
  }
  return X * Y - Y * X;
}

/// A compact Lie algebra of real square matrices with an Ad-invariant inner
/// product Q(X,Y) = -scale * tr(XY). Complex and quaternionic algebras are
/// stored through their real embeddings, with the scale chosen so the shipped
/// basis comes out orthonormal (1/2 per complex entry, 1/4 per quaternionic).
class MatrixLieAlgebra {
 public:
  MatrixLieAlgebra() = default;

  /// Builds the algebra from generators: orthonormalizes them against Q,
  /// validates bracket closure, and precomputes the adjoint tensor.
  MatrixLieAlgebra(std::string name, std::vector<Mat> generators, double trace_scale,
                   int rank_meta, std::vector<Mat> torus_generators,
                   double closure_tol = 1e-10)
      : name_(std::move(name)), trace_scale_(trace_scale), rank_meta_(rank_meta) {
    if (!generators.empty()) n_ = static_cast<int>(generators.front().rows());
    basis_ = orthonormalize(
        generators, [this](const Mat& a, const Mat& b) { return inner(a, b); }, 1e-10);
    const int d = dim();
    gram_ = Mat::Identity(d, d);
    ad_.assign(d, Mat::Zero(d, d));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const Mat br = bracket(basis_[i], basis_[j]);
        Vec c(d);
        Mat rec = Mat::Zero(n_, n_);
        for (int k = 0; k < d; ++k) {
          c(k) = inner(br, basis_[k]);
          rec += c(k) * basis_[k];
        }
        if ((br - rec).cwiseAbs().maxCoeff() >= closure_tol) {
          throw not_a_subalgebra(name_ + ": bracket closure failure at basis pair (" +
                                 std::to_string(i) + "," + std::to_string(j) + ")");
        }
        ad_[i].col(j) = c;
      }
    }
    for (const Mat& t : torus_generators) torus_.push_back(coords(t));
  }

  const std::string& name() const { return name_; }
  int matrix_size() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int rank() const { return rank_meta_; }
  double trace_scale() const { return trace_scale_; }
  const std::vector<Mat>& basis() const { return basis_; }
  const Mat& gram() const { return gram_; }
  const std::vector<Vec>& torus() const { return torus_; }

  /// Q(X,Y) on raw matrices.
  double inner(const Mat& X, const Mat& Y) const {
    if (X.rows() != Y.rows() || X.cols() != Y.cols()) {
      throw dimension_mismatch("inner: size mismatch");
    }
    return -trace_scale_ * (X * Y).trace();
  }

  /// Coordinates of a basis-span matrix in the orthonormal basis.
  Vec coords(const Mat& X) const {
    Vec c(dim());
    for (int k = 0; k < dim(); ++k) c(k) = inner(X, basis_[k]);
    return c;
  }

  Mat from_coords(const Vec& c) const {
    Mat X = Mat::Zero(n_, n_);
    for (int k = 0; k < dim(); ++k) X += c(k) * basis_[k];
    return X;
  }

  /// ad(u) as a dim x dim matrix acting on coordinates, [u, v] = ad(u) v.
  Mat ad_operator(const Vec& u) const {
    Mat A = Mat::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i) {
      if (u(i) != 0.0) A += u(i) * ad_[i];
    }
    return A;
  }

  /// Structure-tensor bracket on coordinate vectors.
  Vec bracket_coords(const Vec& u, const Vec& v) const {
    Vec w = Vec::Zero(dim());
    for (int i = 0; i < dim(); ++i) {
      if (u(i) != 0.0) w += u(i) * (ad_[i] * v);
    }
    return w;
  }

  /// c[i][j][k] with respect to the orthonormal basis.
  double structure_constant(int i, int j, int k) const { return ad_[i](k, j); }

 private:
  std::string name_;
  int n_ = 0;
  double trace_scale_ = 1.0;
  int rank_meta_ = 0;
  std::vector<Mat> basis_;
  Mat gram_;
  std::vector<Vec> torus_;
  std::vector<Mat> ad_;  // ad_[i](k,j) = c[i][j][k]
};

using AlgebraPtr = std::shared_ptr<const MatrixLieAlgebra>;

/// Rank-3 structure tensor c[i][j][k] of an orthonormal basis.
struct StructureConstants {
  int dim = 0;
  std::vector<Mat> c;  // c[i](k,j) = c[i][j][k]

  double operator()(int i, int j, int k) const { return c[i](k, j); }
};

inline StructureConstants structure_constants(const MatrixLieAlgebra& alg) {
  StructureConstants sc;
  sc.dim = alg.dim();
  sc.c.reserve(sc.dim);
  for (int i = 0; i < sc.dim; ++i) {
    Vec e = Vec::Zero(sc.dim);
    e(i) = 1.0;
    sc.c.push_back(alg.ad_operator(e));
  }
  return sc;
}

/// Max Jacobi-identity residual over all index triples.
inline double jacobi_residual(const MatrixLieAlgebra& alg) {
  const int d = alg.dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    Vec ei = Vec::Zero(d);
    ei(i) = 1.0;
    const Mat adi = alg.ad_operator(ei);
    for (int j = i + 1; j < d; ++j) {
      Vec ej = Vec::Zero(d);
      ej(j) = 1.0;
      const Vec bij = adi * ej;
      for (int k = j + 1; k < d; ++k) {
        Vec ek = Vec::Zero(d);
        ek(k) = 1.0;
        const Vec r = alg.bracket_coords(bij, ek) + alg.bracket_coords(alg.bracket_coords(ej, ek), ei) +
                      alg.bracket_coords(alg.bracket_coords(ek, ei), ej);
        worst = std::max(worst, r.cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

/// Max deviation from total antisymmetry of c in all three indices.
inline double antisymmetry_residual(const MatrixLieAlgebra& alg) {
  const int d = alg.dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        const double cijk = alg.structure_constant(i, j, k);
        worst = std::max(worst, std::abs(cijk + alg.structure_constant(j, i, k)));
        worst = std::max(worst, std::abs(cijk + alg.structure_constant(i, k, j)));
      }
    }
  }
  return worst;
}

/// Fits tr(ad X ad Y) = lambda * Q(X,Y); returns {lambda, max residual}.
inline std::pair<double, double> killing_proportionality(const MatrixLieAlgebra& alg) {
  const int d = alg.dim();
  Mat K(d, d);
  std::vector<Mat> ads(d);
  for (int i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e(i) = 1.0;
    ads[i] = alg.ad_operator(e);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) K(i, j) = (ads[i] * ads[j]).trace();
  }
  const double lambda = K.trace() / d;
  const double residual = (K - lambda * Mat::Identity(d, d)).cwiseAbs().maxCoeff();
  return {lambda, residual};
}

/// A subalgebra presented by orthonormal coordinate columns in the parent.
struct SubalgebraEmbedding {
  AlgebraPtr parent;
  std::string name;
  Mat coords;  // parent.dim() x sub dim, orthonormal columns

  int dim() const { return static_cast<int>(coords.cols()); }

  Mat basis_matrix(int j) const { return parent->from_coords(coords.col(j)); }
};

/// Builds and validates an embedding from generator matrices living in the
/// parent's matrix space.
inline SubalgebraEmbedding make_embedding(AlgebraPtr parent, std::string name,
                                          const std::vector<Mat>& generators,
                                          double closure_tol = 1e-10) {
  SubalgebraEmbedding emb;
  emb.parent = parent;
  emb.name = std::move(name);
  const auto ortho = orthonormalize(
      generators, [&](const Mat& a, const Mat& b) { return parent->inner(a, b); }, 1e-10);
  emb.coords = Mat(parent->dim(), static_cast<Eigen::Index>(ortho.size()));
  for (size_t j = 0; j < ortho.size(); ++j) {
    const Vec c = parent->coords(ortho[j]);
    if ((parent->from_coords(c) - ortho[j]).cwiseAbs().maxCoeff() > 1e-10) {
      throw not_a_subalgebra(emb.name + ": generator not inside parent " + parent->name());
    }
    emb.coords.col(static_cast<Eigen::Index>(j)) = c;
  }
  // closure inside the span
  const Mat P = emb.coords * emb.coords.transpose();
  for (int i = 0; i < emb.dim(); ++i) {
    for (int j = i + 1; j < emb.dim(); ++j) {
      const Vec br = parent->bracket_coords(emb.coords.col(i), emb.coords.col(j));
      if ((br - P * br).cwiseAbs().maxCoeff() >= closure_tol) {
        throw not_a_subalgebra(emb.name + ": bracket leaves the span");
      }
    }
  }
  return emb;
}

/// Q-orthogonal split of an ambient space into a subalgebra and complement.
struct OrthogonalSplit {
  SubalgebraEmbedding sub;
  Mat complement;  // parent.dim() x complement dim, orthonormal columns
};

/// Complement of sub inside `ambient` (orthonormal columns in parent coords;
/// defaults to the whole parent algebra when ambient is empty).
inline OrthogonalSplit orthogonal_complement(const SubalgebraEmbedding& sub,
                                             const Mat& ambient = Mat()) {
  const int d = sub.parent->dim();
  Mat amb = ambient;
  if (amb.size() == 0) amb = Mat::Identity(d, d);
  Mat proj_out = amb - sub.coords * (sub.coords.transpose() * amb);
  Mat comp = column_space_basis(proj_out, 1e-10);
  const int expected = static_cast<int>(amb.cols()) - sub.dim();
  if (comp.cols() != expected) {
    throw degenerate_basis("orthogonal_complement: unexpected complement dimension");
  }
  return OrthogonalSplit{sub, std::move(comp)};
}

struct PairCheck {
  bool reductive = false;
  bool symmetric = false;
  double reductive_residual = 0.0;
  double symmetric_residual = 0.0;
};

/// Tests [h,m] subset m (reductive) and additionally [m,m] subset h (symmetric)
/// for the split g = h + m.
inline PairCheck check_pair(const OrthogonalSplit& split, double tol = 1e-10) {
  const auto& alg = *split.sub.parent;
  const Mat& H = split.sub.coords;
  const Mat& M = split.complement;
  const Mat Pm = M * M.transpose();
  const Mat Ph = H * H.transpose();
  PairCheck out;
  for (int i = 0; i < H.cols(); ++i) {
    for (int j = 0; j < M.cols(); ++j) {
      const Vec br = alg.bracket_coords(H.col(i), M.col(j));
      out.reductive_residual =
          std::max(out.reductive_residual, (br - Pm * br).cwiseAbs().maxCoeff());
    }
  }
  for (int i = 0; i < M.cols(); ++i) {
    for (int j = i + 1; j < M.cols(); ++j) {
      const Vec br = alg.bracket_coords(M.col(i), M.col(j));
      out.symmetric_residual =
          std::max(out.symmetric_residual, (br - Ph * br).cwiseAbs().maxCoeff());
    }
  }
  out.reductive = out.reductive_residual < tol;
  out.symmetric = out.reductive && out.symmetric_residual < tol;
  return out;
}

}  // namespace fathom
