#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fathom/liealg.hpp"

namespace fathom {

// ---------------------------------------------------------------------------
// Real embeddings. A complex entry a+bi occupies a 2x2 block [[a,-b],[b,a]];
// a quaternion occupies the 4x4 block of left multiplication in basis 1,i,j,k.
// Left-acting quaternionic matrices commute with the right-multiplication
// operators R_i, R_j below, which is what the sp validator checks.
// ---------------------------------------------------------------------------

inline Mat complex_block(std::complex<double> z) {
  Mat b(2, 2);
  b << z.real(), -z.imag(), z.imag(), z.real();
  return b;
}

inline Mat quaternion_block(const std::array<double, 4>& q) {
  const double a = q[0], b = q[1], c = q[2], d = q[3];
  Mat m(4, 4);
  m << a, -b, -c, -d,
       b,  a, -d,  c,
       c,  d,  a, -b,
       d, -c,  b,  a;
  return m;
}

inline Mat right_mult_i() {
  Mat m(4, 4);
  m << 0, -1, 0, 0,
       1,  0, 0, 0,
       0,  0, 0, 1,
       0,  0, -1, 0;
  return m;
}

inline Mat right_mult_j() {
  Mat m(4, 4);
  m << 0, 0, -1, 0,
       0, 0,  0, -1,
       1, 0,  0, 0,
       0, 1,  0, 0;
  return m;
}

/// n x n complex matrix with a single entry z at (r,c), realified to 2n x 2n.
inline Mat complex_entry(int n, int r, int c, std::complex<double> z) {
  Mat m = Mat::Zero(2 * n, 2 * n);
  m.block(2 * r, 2 * c, 2, 2) = complex_block(z);
  return m;
}

/// n x n quaternionic matrix with entry q at (r,c), realified to 4n x 4n.
inline Mat quaternion_entry(int n, int r, int c, const std::array<double, 4>& q) {
  Mat m = Mat::Zero(4 * n, 4 * n);
  m.block(4 * r, 4 * c, 4, 4) = quaternion_block(q);
  return m;
}

inline Mat realify(const Eigen::MatrixXcd& z) {
  Mat m(2 * z.rows(), 2 * z.cols());
  for (Eigen::Index r = 0; r < z.rows(); ++r) {
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
      m.block(2 * r, 2 * c, 2, 2) = complex_block(z(r, c));
    }
  }
  return m;
}

/// Quaternionic n x n entry mapped into C^{2n x 2n}: a+bi+cj+dk at (r,c)
/// becomes [[alpha, -conj(beta)], [beta, conj(alpha)]] with alpha = a+bi,
/// beta = c+di.
inline Eigen::MatrixXcd quaternion_entry_complex(int n, int r, int c,
                                                 const std::array<double, 4>& q) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  const std::complex<double> alpha(q[0], q[1]), beta(q[2], q[3]);
  m(2 * r, 2 * c) = alpha;
  m(2 * r, 2 * c + 1) = -std::conj(beta);
  m(2 * r + 1, 2 * c) = beta;
  m(2 * r + 1, 2 * c + 1) = std::conj(alpha);
  return m;
}

// ---------------------------------------------------------------------------
// Generator families
// ---------------------------------------------------------------------------

namespace gens {

/// so(k) generators in an n x n space, indices [offset, offset+k).
inline std::vector<Mat> so_block(int n, int k, int offset = 0) {
  std::vector<Mat> g;
  for (int i = offset; i < offset + k; ++i) {
    for (int j = i + 1; j < offset + k; ++j) {
      Mat m = Mat::Zero(n, n);
      m(i, j) = 1.0;
      m(j, i) = -1.0;
      g.push_back(m);
    }
  }
  return g;
}

inline std::vector<Mat> so(int n) { return so_block(n, n); }

inline std::vector<Mat> so_torus(int n) {
  std::vector<Mat> g;
  for (int k = 0; 2 * k + 1 < n; ++k) {
    Mat m = Mat::Zero(n, n);
    m(2 * k, 2 * k + 1) = 1.0;
    m(2 * k + 1, 2 * k) = -1.0;
    g.push_back(m);
  }
  return g;
}

/// su(k) block inside an n x n complex space (k <= n), realified.
inline std::vector<Mat> su_block(int n, int k) {
  std::vector<Mat> g;
  for (int r = 0; r < k; ++r) {
    for (int c = r + 1; c < k; ++c) {
      g.push_back(complex_entry(n, r, c, {1, 0}) - complex_entry(n, c, r, {1, 0}));
      g.push_back(complex_entry(n, r, c, {0, 1}) + complex_entry(n, c, r, {0, 1}));
    }
  }
  for (int r = 0; r + 1 < k; ++r) {
    g.push_back(complex_entry(n, r, r, {0, 1}) - complex_entry(n, r + 1, r + 1, {0, 1}));
  }
  return g;
}

inline std::vector<Mat> su_torus(int n, int k) {
  std::vector<Mat> g;
  for (int r = 0; r + 1 < k; ++r) {
    g.push_back(complex_entry(n, r, r, {0, 1}) - complex_entry(n, r + 1, r + 1, {0, 1}));
  }
  return g;
}

inline std::vector<Mat> u_block(int n, int k) {
  std::vector<Mat> g = su_block(n, k);
  Mat trace = Mat::Zero(2 * n, 2 * n);
  for (int r = 0; r < k; ++r) trace += complex_entry(n, r, r, {0, 1});
  g.push_back(trace);
  return g;
}

inline std::vector<Mat> u_torus(int n, int k) {
  std::vector<Mat> g;
  for (int r = 0; r < k; ++r) g.push_back(complex_entry(n, r, r, {0, 1}));
  return g;
}

/// sp(k) block inside an n x n quaternionic space, realified to 4n x 4n.
inline std::vector<Mat> sp_block(int n, int k, int offset = 0) {
  std::vector<Mat> g;
  const std::array<double, 4> qi{0, 1, 0, 0}, qj{0, 0, 1, 0}, qk{0, 0, 0, 1};
  for (int r = offset; r < offset + k; ++r) {
    for (const auto& q : {qi, qj, qk}) g.push_back(quaternion_entry(n, r, r, q));
  }
  for (int r = offset; r < offset + k; ++r) {
    for (int c = r + 1; c < offset + k; ++c) {
      g.push_back(quaternion_entry(n, r, c, {1, 0, 0, 0}) -
                  quaternion_entry(n, c, r, {1, 0, 0, 0}));
      for (const auto& q : {qi, qj, qk}) {
        g.push_back(quaternion_entry(n, r, c, q) + quaternion_entry(n, c, r, q));
      }
    }
  }
  return g;
}

inline std::vector<Mat> sp_torus(int n, int k) {
  std::vector<Mat> g;
  for (int r = 0; r < k; ++r) g.push_back(quaternion_entry(n, r, r, {0, 1, 0, 0}));
  return g;
}

/// sp(k) sitting inside su(2k) through H^k = C^{2k}, realified.
inline std::vector<Mat> sp_in_su(int k) {
  std::vector<Mat> g;
  const std::array<double, 4> qi{0, 1, 0, 0}, qj{0, 0, 1, 0}, qk{0, 0, 0, 1};
  auto push = [&](const Eigen::MatrixXcd& z) { g.push_back(realify(z)); };
  for (int r = 0; r < k; ++r) {
    for (const auto& q : {qi, qj, qk}) push(quaternion_entry_complex(k, r, r, q));
  }
  for (int r = 0; r < k; ++r) {
    for (int c = r + 1; c < k; ++c) {
      push(quaternion_entry_complex(k, r, c, {1, 0, 0, 0}) -
           quaternion_entry_complex(k, c, r, {1, 0, 0, 0}));
      for (const auto& q : {qi, qj, qk}) {
        push(quaternion_entry_complex(k, r, c, q) + quaternion_entry_complex(k, c, r, q));
      }
    }
  }
  return g;
}

/// Two sp blocks on the diagonal of sp(a+b).
inline std::vector<Mat> sp_diag(int a, int b) {
  auto g = sp_block(a + b, a, 0);
  auto h = sp_block(a + b, b, a);
  g.insert(g.end(), h.begin(), h.end());
  return g;
}

/// s(u(k) x u(1)) inside su(k+1): the su(k) block plus the balanced circle.
inline std::vector<Mat> s_u_u1(int n, int k) {
  auto g = su_block(n, k);
  Mat z = Mat::Zero(2 * n, 2 * n);
  for (int r = 0; r < k; ++r) z += complex_entry(n, r, r, {0, 1});
  z -= static_cast<double>(k) * complex_entry(n, k, k, {0, 1});
  g.push_back(z);
  return g;
}

/// so(k) as real matrices inside su(n) (k <= n).
inline std::vector<Mat> so_real_in_su(int n, int k) {
  std::vector<Mat> g;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      g.push_back(complex_entry(n, i, j, {1, 0}) - complex_entry(n, j, i, {1, 0}));
    }
  }
  return g;
}

/// u(k) or su(k) realified inside so(2k).
inline std::vector<Mat> u_in_so(int k) { return u_block(k, k); }
inline std::vector<Mat> su_in_so(int k) { return su_block(k, k); }

/// so(a)+so(b) on the diagonal of an n x n space (n >= a+b).
inline std::vector<Mat> so_diag(int a, int b, int n) {
  auto g = so_block(n, a, 0);
  auto h = so_block(n, b, a);
  g.insert(g.end(), h.begin(), h.end());
  return g;
}

/// Self-dual (sign=+1) or anti-self-dual (sign=-1) su(2) factor of so(4),
/// sitting in the top-left 4x4 block of an n x n space.
inline std::vector<Mat> so4_factor(int n, double sign) {
  auto e = [&](int i, int j) {
    Mat m = Mat::Zero(n, n);
    m(i, j) = 1.0;
    m(j, i) = -1.0;
    return m;
  };
  return {e(0, 1) + sign * e(2, 3), e(0, 2) - sign * e(1, 3), e(0, 3) + sign * e(1, 2)};
}

/// Diagonal imaginary torus algebra u(1)^n, realified.
inline std::vector<Mat> torus(int n) {
  std::vector<Mat> g;
  for (int r = 0; r < n; ++r) g.push_back(complex_entry(n, r, r, {0, 1}));
  return g;
}

/// su(a)+su(b) block-diagonal inside an (a+b) complex space.
inline std::vector<Mat> su_product(int a, int b) {
  auto g = su_block(a + b, a);
  for (int r = a; r < a + b; ++r) {
    for (int c = r + 1; c < a + b; ++c) {
      g.push_back(complex_entry(a + b, r, c, {1, 0}) - complex_entry(a + b, c, r, {1, 0}));
      g.push_back(complex_entry(a + b, r, c, {0, 1}) + complex_entry(a + b, c, r, {0, 1}));
    }
  }
  for (int r = a; r + 1 < a + b; ++r) {
    g.push_back(complex_entry(a + b, r, r, {0, 1}) -
                complex_entry(a + b, r + 1, r + 1, {0, 1}));
  }
  return g;
}

inline std::vector<Mat> su_factor(int a, int b, int which) {
  if (which == 1) return su_block(a + b, a);
  std::vector<Mat> g;
  for (int r = a; r < a + b; ++r) {
    for (int c = r + 1; c < a + b; ++c) {
      g.push_back(complex_entry(a + b, r, c, {1, 0}) - complex_entry(a + b, c, r, {1, 0}));
      g.push_back(complex_entry(a + b, r, c, {0, 1}) + complex_entry(a + b, c, r, {0, 1}));
    }
  }
  for (int r = a; r + 1 < a + b; ++r) {
    g.push_back(complex_entry(a + b, r, r, {0, 1}) -
                complex_entry(a + b, r + 1, r + 1, {0, 1}));
  }
  return g;
}

/// sp(1)+sp(1) (or general pair) mapped into su(2(a+b)), realified.
inline std::vector<Mat> sp_diag_in_su(int a, int b) {
  const int n = a + b;
  std::vector<Mat> g;
  const std::array<double, 4> qi{0, 1, 0, 0}, qj{0, 0, 1, 0}, qk{0, 0, 0, 1};
  auto push = [&](const Eigen::MatrixXcd& z) { g.push_back(realify(z)); };
  auto block = [&](int off, int k) {
    for (int r = off; r < off + k; ++r) {
      for (const auto& q : {qi, qj, qk}) push(quaternion_entry_complex(n, r, r, q));
    }
    for (int r = off; r < off + k; ++r) {
      for (int c = r + 1; c < off + k; ++c) {
        push(quaternion_entry_complex(n, r, c, {1, 0, 0, 0}) -
             quaternion_entry_complex(n, c, r, {1, 0, 0, 0}));
        for (const auto& q : {qi, qj, qk}) {
          push(quaternion_entry_complex(n, r, c, q) + quaternion_entry_complex(n, c, r, q));
        }
      }
    }
  };
  block(0, a);
  block(a, b);
  return g;
}

/// The circle i*E_11 inside sp(n).
inline std::vector<Mat> u1_in_sp(int n) {
  return {quaternion_entry(n, 0, 0, {0, 1, 0, 0})};
}

inline std::vector<Mat> torus_first(int n, int k) {
  std::vector<Mat> g;
  for (int r = 0; r < k; ++r) g.push_back(complex_entry(n, r, r, {0, 1}));
  return g;
}

}  // namespace gens

// ---------------------------------------------------------------------------
// Defining-condition validators per family
// ---------------------------------------------------------------------------

/// Max violation of the family's defining linear conditions over a basis.
inline double defining_condition_residual(const std::string& family, const MatrixLieAlgebra& alg) {
  double worst = 0.0;
  const int n = alg.matrix_size();
  Mat J;  // complex structure for u/su families
  if (family == "su" || family == "u" || family == "t" || family == "suxsu") {
    J = Mat::Zero(n, n);
    for (int r = 0; 2 * r + 1 < n; ++r) J.block(2 * r, 2 * r, 2, 2) = complex_block({0, 1});
  }
  Mat Ri, Rj;
  if (family == "sp") {
    Ri = Mat::Zero(n, n);
    Rj = Mat::Zero(n, n);
    for (int r = 0; 4 * r + 3 < n; ++r) {
      Ri.block(4 * r, 4 * r, 4, 4) = right_mult_i();
      Rj.block(4 * r, 4 * r, 4, 4) = right_mult_j();
    }
  }
  for (const Mat& B : alg.basis()) {
    worst = std::max(worst, (B + B.transpose()).cwiseAbs().maxCoeff());
    if (J.size() > 0) worst = std::max(worst, (B * J - J * B).cwiseAbs().maxCoeff());
    if (family == "su" || family == "suxsu") {
      double imtrace = 0.0;  // imaginary part of the complex trace
      for (int r = 0; 2 * r + 1 < n; ++r) imtrace += B(2 * r + 1, 2 * r);
      worst = std::max(worst, std::abs(imtrace));
    }
    if (Ri.size() > 0) {
      worst = std::max(worst, (B * Ri - Ri * B).cwiseAbs().maxCoeff());
      worst = std::max(worst, (B * Rj - Rj * B).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

struct CatalogRecord {
  std::string name;
  int dim = 0;
  int rank = 0;
  bool realizable = false;
  std::string generator;  // "-" for arithmetic-only records
};

struct EmbeddingRecord {
  std::string parent;
  std::string name;
  int dim = 0;
  int rank = 0;  // rank of the subgroup, catalog metadata
  std::string generator;
};

struct TripleNames {
  std::string g, h, k;
};

/// Fixture-backed catalog of algebras, embeddings and homogeneous triples.
/// The backing file format (data/catalog.txt) is line-oriented:
///   algebra <name> <dim> <rank> <yes|no> <generator-id>
///   embedding <parent> <name> <dim> <generator-id>
///   triple <g> <h> <k>
class Catalog {
 public:
  explicit Catalog(const std::string& data_dir) { parse(data_dir + "/catalog.txt"); }

  static const Catalog& instance(const std::string& data_dir = default_data_dir()) {
    static std::map<std::string, std::unique_ptr<Catalog>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(data_dir);
    if (it == cache.end()) {
      it = cache.emplace(data_dir, std::make_unique<Catalog>(data_dir)).first;
    }
    return *it->second;
  }

  static std::string default_data_dir() {
#ifdef FATHOM_DEFAULT_DATA_DIR
    return FATHOM_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
  }

  /// Strips quotient decorations: "(sp1xsp1)/z2" resolves as "sp1xsp1".
  static std::string base_name(const std::string& name) {
    std::string s = name;
    if (s.size() > 3 && s.compare(s.size() - 3, 3, "/z2") == 0) s = s.substr(0, s.size() - 3);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    return s;
  }

  bool has_record(const std::string& name) const {
    return records_.count(base_name(name)) > 0;
  }

  const CatalogRecord& record(const std::string& name) const {
    auto it = records_.find(base_name(name));
    if (it == records_.end()) throw catalog_miss("unknown catalog name: " + name);
    return it->second;
  }

  bool has_embedding(const std::string& parent, const std::string& name) const {
    if (base_name(name) == "e") return has_record(parent) && record(parent).realizable;
    return embeddings_.count({base_name(parent), base_name(name)}) > 0;
  }

  const EmbeddingRecord& embedding_record(const std::string& parent,
                                          const std::string& name) const {
    auto it = embeddings_.find({base_name(parent), base_name(name)});
    if (it == embeddings_.end()) {
      throw catalog_miss("unknown embedding " + name + " in " + parent);
    }
    return it->second;
  }

  AlgebraPtr algebra(const std::string& name) const {
    const CatalogRecord& rec = record(name);
    if (!rec.realizable) {
      throw catalog_miss(rec.name + " is an arithmetic-only catalog record (no basis)");
    }
    std::lock_guard<std::mutex> lock(mu_);
    auto it = algebra_cache_.find(rec.name);
    if (it != algebra_cache_.end()) return it->second;
    AlgebraPtr built = build_algebra(rec);
    if (built->dim() != rec.dim) {
      throw catalog_miss(rec.name + ": catalog dim disagrees with built basis");
    }
    algebra_cache_.emplace(rec.name, built);
    return built;
  }

  SubalgebraEmbedding embedding(const std::string& parent_name, const std::string& name) const {
    AlgebraPtr parent = algebra(parent_name);
    if (base_name(name) == "e") {
      SubalgebraEmbedding emb;
      emb.parent = parent;
      emb.name = "e";
      emb.coords = Mat::Zero(parent->dim(), 0);
      return emb;
    }
    const EmbeddingRecord& rec = embedding_record(parent_name, name);
    SubalgebraEmbedding emb =
        make_embedding(parent, rec.name, build_embedding_gens(rec, *parent));
    if (emb.dim() != rec.dim) {
      throw catalog_miss(rec.name + ": catalog dim disagrees with built embedding");
    }
    return emb;
  }

  std::vector<TripleNames> triples(int max_dim_g) const {
    std::vector<TripleNames> out;
    for (const auto& t : triples_) {
      if (record(t.g).dim <= max_dim_g) out.push_back(t);
    }
    return out;
  }

  std::vector<CatalogRecord> all_records() const {
    std::vector<CatalogRecord> out;
    for (const auto& [k, v] : records_) out.push_back(v);
    return out;
  }

  std::vector<EmbeddingRecord> embeddings_of(const std::string& parent) const {
    std::vector<EmbeddingRecord> out;
    for (const auto& [k, v] : embeddings_) {
      if (k.first == base_name(parent)) out.push_back(v);
    }
    return out;
  }

  /// Family prefix used by the defining-condition validator.
  static std::string family_of(const std::string& generator) {
    return generator.substr(0, generator.find(':'));
  }

 private:
  void parse(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw catalog_miss("cannot open catalog file: " + path);
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::istringstream ss(line);
      std::string kind;
      if (!(ss >> kind)) continue;
      if (kind == "algebra") {
        CatalogRecord rec;
        std::string flag;
        ss >> rec.name >> rec.dim >> rec.rank >> flag >> rec.generator;
        rec.realizable = (flag == "yes");
        records_[rec.name] = rec;
      } else if (kind == "embedding") {
        EmbeddingRecord rec;
        ss >> rec.parent >> rec.name >> rec.dim >> rec.rank >> rec.generator;
        embeddings_[{rec.parent, rec.name}] = rec;
      } else if (kind == "triple") {
        TripleNames t;
        ss >> t.g >> t.h >> t.k;
        triples_.push_back(t);
      } else {
        throw catalog_miss("catalog parse error: unknown record kind '" + kind + "'");
      }
    }
  }

  static std::vector<int> generator_params(const std::string& generator) {
    std::vector<int> ps;
    const auto colon = generator.find(':');
    if (colon == std::string::npos) return ps;
    std::string rest = generator.substr(colon + 1);
    std::replace(rest.begin(), rest.end(), ',', ' ');
    std::istringstream ss(rest);
    int v;
    while (ss >> v) ps.push_back(v);
    return ps;
  }

  AlgebraPtr build_algebra(const CatalogRecord& rec) const {
    const std::string fam = family_of(rec.generator);
    const auto p = generator_params(rec.generator);
    std::vector<Mat> g, torus;
    double scale = 1.0;
    if (fam == "so") {
      g = gens::so(p[0]);
      torus = gens::so_torus(p[0]);
      scale = 1.0;
    } else if (fam == "su") {
      g = gens::su_block(p[0], p[0]);
      torus = gens::su_torus(p[0], p[0]);
      scale = 0.5;
    } else if (fam == "u") {
      g = gens::u_block(p[0], p[0]);
      torus = gens::u_torus(p[0], p[0]);
      scale = 0.5;
    } else if (fam == "sp") {
      g = gens::sp_block(p[0], p[0]);
      torus = gens::sp_torus(p[0], p[0]);
      scale = 0.25;
    } else if (fam == "t") {
      g = gens::torus(p[0]);
      torus = g;
      scale = 0.5;
    } else if (fam == "suxsu") {
      g = gens::su_product(p[0], p[1]);
      torus = gens::su_torus(p[0] + p[1], p[0]);
      auto t2 = gens::su_factor(p[0], p[1], 2);  // diagonal part of the second factor
      for (size_t i = t2.size() - (p[1] - 1); i < t2.size(); ++i) torus.push_back(t2[i]);
      scale = 0.5;
    } else {
      throw catalog_miss(rec.name + ": unknown algebra generator " + rec.generator);
    }
    return std::make_shared<MatrixLieAlgebra>(rec.name, g, scale, rec.rank, torus);
  }

  std::vector<Mat> build_embedding_gens(const EmbeddingRecord& rec,
                                        const MatrixLieAlgebra& parent) const {
    const std::string fam = family_of(rec.generator);
    const auto p = generator_params(rec.generator);
    const int n = parent.matrix_size();
    if (fam == "soblock") return gens::so_block(n, p[0]);
    if (fam == "sodiag") return gens::so_diag(p[0], p[1], n);
    if (fam == "soselfdual") return gens::so4_factor(n, +1.0);
    if (fam == "soantiselfdual") return gens::so4_factor(n, -1.0);
    if (fam == "uinso") return gens::u_in_so(p[0]);
    if (fam == "suinso") return gens::su_in_so(p[0]);
    if (fam == "sublock") return gens::su_block(n / 2, p[0]);
    if (fam == "suu1") return gens::s_u_u1(n / 2, p[0]);
    if (fam == "soreal") return gens::so_real_in_su(n / 2, p[0]);
    if (fam == "spblock") return gens::sp_block(n / 4, p[0], 0);
    if (fam == "splower") return gens::sp_block(n / 4, p[0], n / 4 - p[0]);
    if (fam == "spdiag") return gens::sp_diag(p[0], p[1]);
    if (fam == "spinsu") return gens::sp_in_su(p[0]);
    if (fam == "spdiaginsu") return gens::sp_diag_in_su(p[0], p[1]);
    if (fam == "u1insp") return gens::u1_in_sp(n / 4);
    if (fam == "torusfirst") return gens::torus_first(n / 2, p[0]);
    if (fam == "sufactor") return gens::su_factor(p[0], p[1], p[2]);
    throw catalog_miss(rec.name + ": unknown embedding generator " + rec.generator);
  }

  std::map<std::string, CatalogRecord> records_;
  std::map<std::pair<std::string, std::string>, EmbeddingRecord> embeddings_;
  std::vector<TripleNames> triples_;
  mutable std::mutex mu_;
  mutable std::map<std::string, AlgebraPtr> algebra_cache_;
};

}  // namespace fathom
