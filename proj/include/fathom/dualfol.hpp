#pragma once

#include <vector>

#include "fathom/fatness.hpp"
#include "fathom/submersion.hpp"

namespace fathom {

/// Bracket-generation record: dimension of the iterated span of m under
/// bracketing with m, until stabilization. twisted means horizontal
/// reachability covers the quotient G/K: the stabilized span together with
/// the isotropy algebra k fills g (for k = 0 this is span = g).
struct SpanReport {
  std::vector<int> depth_dims;
  int saturated_at = 0;
  bool twisted = false;
};

inline SpanReport bracket_closure(const HomogeneousTriple& t, double sv_tol = 1e-8) {
  SpanReport rep;
  Mat span = t.m;
  rep.depth_dims.push_back(static_cast<int>(span.cols()));
  for (int depth = 1; depth <= t.dim_g(); ++depth) {
    std::vector<Vec> new_vecs;
    for (int i = 0; i < span.cols(); ++i) {
      for (int j = 0; j < t.dim_m(); ++j) {
        new_vecs.push_back(t.g->bracket_coords(span.col(i), t.m.col(j)));
      }
    }
    Mat stacked(t.dim_g(), span.cols() + static_cast<Eigen::Index>(new_vecs.size()));
    stacked.leftCols(span.cols()) = span;
    for (size_t v = 0; v < new_vecs.size(); ++v) {
      stacked.col(span.cols() + static_cast<Eigen::Index>(v)) = new_vecs[v];
    }
    Mat next = column_space_basis(stacked, sv_tol);
    rep.depth_dims.push_back(static_cast<int>(next.cols()));
    if (next.cols() == span.cols()) {
      rep.saturated_at = depth - 1;
      break;
    }
    span = std::move(next);
    if (static_cast<int>(span.cols()) == t.dim_g()) {
      rep.saturated_at = depth;
      break;
    }
  }
  if (t.dim_k() == 0) {
    rep.twisted = (rep.depth_dims.back() == t.dim_g());
  } else {
    Mat with_k(t.dim_g(), span.cols() + t.dim_k());
    with_k.leftCols(span.cols()) = span;
    with_k.rightCols(t.dim_k()) = t.k.coords;
    rep.twisted = (numerical_rank(with_k, sv_tol) == t.dim_g());
  }
  return rep;
}

/// Vertical part of the dual-leaf tangent at the basepoint: the span of all
/// A-tensor values over m-basis pairs, inside p.
struct DualLeafVertical {
  Mat basis;  // dim_p x dim, orthonormal columns in p-coordinates
  int dim = 0;
};

inline DualLeafVertical a_span(const HomogeneousTriple& t, double sv_tol = 1e-8) {
  std::vector<Vec> vals;
  for (int i = 0; i < t.dim_m(); ++i) {
    for (int j = i + 1; j < t.dim_m(); ++j) {
      vals.push_back(a_tensor(t, Vec::Unit(t.dim_m(), i), Vec::Unit(t.dim_m(), j)));
    }
  }
  Mat stacked(t.dim_p(), static_cast<Eigen::Index>(vals.size()));
  for (size_t v = 0; v < vals.size(); ++v) stacked.col(static_cast<Eigen::Index>(v)) = vals[v];
  DualLeafVertical out;
  out.basis = column_space_basis(stacked, sv_tol);
  out.dim = static_cast<int>(out.basis.cols());
  return out;
}

/// Basepoint reduction of the holonomy-span identity: Ad(H)-invariance
/// collapses transported spans to the basepoint A-span, so for a fat triple
/// the bracket closure must be twisted and the A-span must fill p; for
/// non-fat triples the statement is vacuous.
inline bool ambrose_singer_check(const HomogeneousTriple& t, int grid_density = 16,
                                 int refine_iters = 12) {
  const FatnessReport fat = fatness_via_astar(t, grid_density, refine_iters);
  if (fat.verdict != FatVerdict::fat) return true;
  const SpanReport closure = bracket_closure(t);
  const DualLeafVertical span = a_span(t);
  return closure.twisted && span.dim == t.dim_p();
}

}  // namespace fathom
