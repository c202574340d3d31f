#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "fathom/liealg.hpp"

namespace fathom {

/// The algebraic model of H/K -> G/K -> G/H at the basepoint coset:
/// nested subalgebras k in h in g with Q-orthogonal splits m = g - h and
/// p = h - k. Horizontal space ~ m, vertical space of the fibration ~ p.
struct HomogeneousTriple {
  AlgebraPtr g;
  SubalgebraEmbedding h;  // coordinates in g
  SubalgebraEmbedding k;  // coordinates in g, span contained in h
  Mat m;                  // g->dim() x dim_m, orthonormal columns
  Mat p;                  // g->dim() x dim_p, orthonormal columns
  std::string name;

  int dim_g() const { return g->dim(); }
  int dim_h() const { return h.dim(); }
  int dim_k() const { return k.dim(); }
  int dim_m() const { return static_cast<int>(m.cols()); }
  int dim_p() const { return static_cast<int>(p.cols()); }

  Vec m_to_ambient(const Vec& x) const { return m * x; }
  Vec p_to_ambient(const Vec& v) const { return p * v; }
};

inline HomogeneousTriple make_triple(AlgebraPtr g, SubalgebraEmbedding h, SubalgebraEmbedding k,
                                     std::string name = "") {
  HomogeneousTriple t;
  t.g = std::move(g);
  const Mat Ph = h.coords * h.coords.transpose();
  if (k.dim() > 0 && (k.coords - Ph * k.coords).cwiseAbs().maxCoeff() > 1e-10) {
    throw not_a_subalgebra("make_triple: k is not contained in h");
  }
  t.m = orthogonal_complement(h).complement;
  t.p = orthogonal_complement(k, h.coords).complement;
  t.h = std::move(h);
  t.k = std::move(k);
  t.name = std::move(name);
  return t;
}

/// Ambient vector split into m, p and k coordinates.
struct TangentRepr {
  Vec m_part, p_part, k_part;
};

inline TangentRepr decompose(const HomogeneousTriple& t, const Vec& ambient) {
  return TangentRepr{t.m.transpose() * ambient, t.p.transpose() * ambient,
                     t.k.coords.transpose() * ambient};
}

inline Vec reconstruct(const HomogeneousTriple& t, const TangentRepr& r) {
  return t.m * r.m_part + t.p * r.p_part + t.k.coords * r.k_part;
}

/// O'Neill integrability tensor A_X Y = 1/2 [X,Y]^vertical in p-coordinates.
inline Vec a_tensor(const HomogeneousTriple& t, const Vec& X, const Vec& Y) {
  const Vec br = t.g->bracket_coords(t.m * X, t.m * Y);
  return 0.5 * (t.p.transpose() * br);
}

/// Metric dual A*_X V = 1/2 [V,X]^horizontal in m-coordinates.
inline Vec a_star(const HomogeneousTriple& t, const Vec& X, const Vec& V) {
  const Vec br = t.g->bracket_coords(t.p * V, t.m * X);
  return 0.5 * (t.m.transpose() * br);
}

/// Unreduced bi-invariant sectional curvature 1/4 |[X,Y]|^2 (ambient coords).
inline double biinvariant_sec(const MatrixLieAlgebra& g, const Vec& X, const Vec& Y) {
  return 0.25 * g.bracket_coords(X, Y).squaredNorm();
}

/// Unreduced curvature of the base G/H on horizontal vectors (m-coords):
/// 1/4 |[X,Y]|^2 + 3/4 |[X,Y]^h|^2.
inline double oneill_base_sec(const HomogeneousTriple& t, const Vec& X, const Vec& Y) {
  const Vec br = t.g->bracket_coords(t.m * X, t.m * Y);
  const Vec brh = t.h.coords.transpose() * br;
  return 0.25 * br.squaredNorm() + 0.75 * brh.squaredNorm();
}

/// Unreduced vertizontal curvature |A*_X V|^2 of the total space G/K with the
/// normal metric and totally geodesic fibers.
inline double vertizontal_sec(const HomogeneousTriple& t, const Vec& X, const Vec& V) {
  return a_star(t, X, V).squaredNorm();
}

/// Unreduced curvature of the fiber H/K with the normal homogeneous metric,
/// on p-coordinates: 1/4 |[U,V]|^2 + 3/4 |[U,V]^k|^2.
inline double normal_homogeneous_sec(const HomogeneousTriple& t, const Vec& U, const Vec& V) {
  const Vec br = t.g->bracket_coords(t.p * U, t.p * V);
  const Vec brk = t.k.coords.transpose() * br;
  return 0.25 * br.squaredNorm() + 0.75 * brk.squaredNorm();
}

/// Unreduced curvature of the total space M = G/K with the normal metric at a
/// plane of n = m + p tangent vectors (ambient coords assumed in span(n)):
/// 1/4 |[A,B]^n|^2 + |[A,B]^k|^2.
inline double model_total_sec(const HomogeneousTriple& t, const Vec& A, const Vec& B) {
  const Vec br = t.g->bracket_coords(A, B);
  const Vec brk = t.k.coords.transpose() * br;
  return 0.25 * (br.squaredNorm() - brk.squaredNorm()) + brk.squaredNorm();
}

/// Left-invariant covariant derivative of constant-coordinate fields for the
/// metric <u,v> = Q(Phi u, v); Koszul formula reduced to adjoint operators.
inline Vec left_invariant_nabla(const MatrixLieAlgebra& g, const Mat& Phi,
                                const Eigen::LLT<Mat>& Phi_llt, const Vec& u, const Vec& v) {
  const Mat adu = g.ad_operator(u);
  const Mat adv = g.ad_operator(v);
  const Vec rhs =
      0.5 * (Phi * (adu * v) - adv.transpose() * (Phi * u) - adu.transpose() * (Phi * v));
  return Phi_llt.solve(rhs);
}

/// Unreduced sectional curvature K(X,Y) = <R(X,Y)Y, X> of the left-invariant
/// metric <u,v> = Q(Phi u, v). Independent of the submersion code path; used
/// as the cross-check oracle for vertizontal and deformed curvatures.
inline double left_invariant_curvature(const MatrixLieAlgebra& g, const Mat& Phi, const Vec& X,
                                       const Vec& Y) {
  require_spd(Phi, "left_invariant_curvature");
  Eigen::LLT<Mat> llt(Phi);
  const Vec nYY = left_invariant_nabla(g, Phi, llt, Y, Y);
  const Vec nXY = left_invariant_nabla(g, Phi, llt, X, Y);
  const Vec r = left_invariant_nabla(g, Phi, llt, X, nYY) -
                left_invariant_nabla(g, Phi, llt, Y, nXY) -
                left_invariant_nabla(g, Phi, llt, g.bracket_coords(X, Y), Y);
  return X.dot(Phi * r);
}

}  // namespace fathom
