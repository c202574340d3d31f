#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fathom/catalog.hpp"
#include "fathom/liealg.hpp"

using namespace fathom;

namespace {
const Catalog& cat() { return Catalog::instance(); }

Vec random_coords(const MatrixLieAlgebra& g, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(g.dim());
  for (int i = 0; i < g.dim(); ++i) v(i) = gauss(rng);
  return v;
}
}  // namespace

TEST_CASE("bracket basics") {
  auto su2 = cat().algebra("su2");
  const Mat X = su2->basis()[0];
  CHECK(bracket(X, X).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(bracket(Mat::Zero(2, 2), Mat::Zero(3, 3)), dimension_mismatch);

  // commuting torus directions in u(2)
  auto u2 = cat().algebra("u2");
  const Mat d1 = complex_entry(2, 0, 0, {0, 1});
  const Mat d2 = complex_entry(2, 1, 1, {0, 1});
  CHECK(bracket(d1, d2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("su(2) structure constants match the Pauli commutator oracle") {
  auto su2 = cat().algebra("su2");
  REQUIRE(su2->dim() == 3);
  // The shipped basis is orthonormal; identify it against iS_j/sqrt(2) by
  // recomputing every structure constant from raw matrix commutators.
  const StructureConstants sc = structure_constants(*su2);
  double expected_magnitude = std::sqrt(2.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const double via_matrices =
            su2->inner(bracket(su2->basis()[i], su2->basis()[j]), su2->basis()[k]);
        CHECK(std::abs(sc(i, j, k) - via_matrices) < 1e-12);
        if (i != j && j != k && i != k) {
          CHECK(std::abs(std::abs(sc(i, j, k)) - expected_magnitude) < 1e-10);
        }
      }
    }
  }
  // the explicit representative: X1 = i sigma_1 / sqrt(2), X2 = i sigma_2 / sqrt(2)
  const Mat X1 = complex_entry(2, 0, 1, {0, 1. / std::sqrt(2.)}) +
                 complex_entry(2, 1, 0, {0, 1. / std::sqrt(2.)});
  const Mat X2 = complex_entry(2, 0, 1, {1. / std::sqrt(2.), 0}) +
                 complex_entry(2, 1, 0, {-1. / std::sqrt(2.), 0});
  const Mat X3 = complex_entry(2, 0, 0, {0, 1. / std::sqrt(2.)}) +
                 complex_entry(2, 1, 1, {0, -1. / std::sqrt(2.)});
  CHECK(std::abs(su2->inner(X1, X1) - 1.0) < 1e-12);
  CHECK(std::abs(su2->inner(X1, X2)) < 1e-12);
  CHECK((bracket(X1, X2) + std::sqrt(2.0) * X3).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("inner product convention and Ad-invariance") {
  auto su3 = cat().algebra("su3");
  for (int i = 0; i < su3->dim(); ++i) {
    for (int j = 0; j < su3->dim(); ++j) {
      const double q = su3->inner(su3->basis()[i], su3->basis()[j]);
      CHECK(std::abs(q - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
  }
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec z = random_coords(*su3, rng), x = random_coords(*su3, rng),
              y = random_coords(*su3, rng);
    const double lhs = su3->bracket_coords(z, x).dot(y) + x.dot(su3->bracket_coords(z, y));
    CHECK(std::abs(lhs) < 1e-10);
  }
}

TEST_CASE("structure constants: torus vanishes, so(3) matches su(2) scale") {
  auto t3 = cat().algebra("t3");
  const StructureConstants flat = structure_constants(*t3);
  for (const Mat& c : flat.c) CHECK(c.cwiseAbs().maxCoeff() < 1e-14);

  auto so3 = cat().algebra("so3");
  const StructureConstants sc = structure_constants(*so3);
  // totally antisymmetric, all nonzero entries share one magnitude
  double mag = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        if (i == j || j == k || i == k) {
          CHECK(std::abs(sc(i, j, k)) < 1e-12);
        } else {
          mag = std::abs(sc(i, j, k));
          CHECK(std::abs(sc(i, j, k) + sc(j, i, k)) < 1e-12);
          CHECK(std::abs(sc(i, j, k) + sc(i, k, j)) < 1e-12);
        }
      }
    }
  }
  CHECK(mag > 0.1);  // same algebra as su(2) up to scale
}

TEST_CASE("orthonormalize") {
  auto su3 = cat().algebra("su3");
  auto inner = [&](const Mat& a, const Mat& b) { return su3->inner(a, b); };

  SECTION("already orthonormal input is unchanged") {
    std::vector<Mat> in(su3->basis().begin(), su3->basis().begin() + 4);
    const auto out = orthonormalize(in, inner);
    for (size_t i = 0; i < in.size(); ++i) {
      CHECK((in[i] - out[i]).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SECTION("{v, 2v+w} reduces to {v, w}") {
    const Mat v = su3->basis()[0], w = su3->basis()[1];
    const auto out = orthonormalize({v, 2.0 * v + w}, inner);
    CHECK((out[0] - v).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((out[1] - w).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("random five-element set comes out with identity Gram") {
    std::mt19937_64 rng(3);
    std::vector<Mat> in;
    for (int k = 0; k < 5; ++k) in.push_back(su3->from_coords(random_coords(*su3, rng)));
    const auto out = orthonormalize(in, inner);
    for (size_t i = 0; i < out.size(); ++i) {
      for (size_t j = 0; j < out.size(); ++j) {
        CHECK(std::abs(inner(out[i], out[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
  SECTION("dependent input throws") {
    const Mat v = su3->basis()[0];
    CHECK_THROWS_AS(orthonormalize({v, 2.0 * v}, inner), degenerate_basis);
  }
}

TEST_CASE("orthogonal complements") {
  SECTION("sub equals ambient leaves nothing") {
    auto so3 = cat().algebra("so3");
    const auto full = make_embedding(so3, "all", so3->basis());
    CHECK(orthogonal_complement(full).complement.cols() == 0);
  }
  SECTION("so(2) inside so(3)") {
    const auto emb = cat().embedding("so3", "so2");
    const auto split = orthogonal_complement(emb);
    CHECK(split.complement.cols() == 2);
    CHECK((emb.coords.transpose() * split.complement).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("sp(1)+sp(1) inside sp(2) has a 4-dimensional complement") {
    const auto emb = cat().embedding("sp2", "sp1xsp1");
    const auto split = orthogonal_complement(emb);
    CHECK(split.complement.cols() == 4);
    const Mat P = split.complement * split.complement.transpose();
    CHECK(numerical_rank(P) == 4);
  }
}

TEST_CASE("check_pair classifies reductive and symmetric splits") {
  SECTION("(sp2, sp1+sp1) is a symmetric pair") {
    const auto pc = check_pair(orthogonal_complement(cat().embedding("sp2", "sp1xsp1")));
    CHECK(pc.reductive);
    CHECK(pc.symmetric);
  }
  SECTION("(su3, so3) is a symmetric pair") {
    const auto pc = check_pair(orthogonal_complement(cat().embedding("su3", "so3")));
    CHECK(pc.reductive);
    CHECK(pc.symmetric);
  }
  SECTION("trivial subalgebra of su(2): reductive but not symmetric") {
    auto su2 = cat().algebra("su2");
    SubalgebraEmbedding trivial;
    trivial.parent = su2;
    trivial.name = "e";
    trivial.coords = Mat::Zero(su2->dim(), 0);
    const auto pc = check_pair(orthogonal_complement(trivial));
    CHECK(pc.reductive);
    CHECK_FALSE(pc.symmetric);
  }
  SECTION("(su3, su2) is reductive but not symmetric") {
    const auto pc = check_pair(orthogonal_complement(cat().embedding("su3", "su2")));
    CHECK(pc.reductive);
    CHECK_FALSE(pc.symmetric);
  }
}

TEST_CASE("catalog records and dimensions") {
  CHECK(cat().record("sp2").dim == 10);
  CHECK(cat().record("sp2").rank == 2);
  CHECK(cat().algebra("sp2")->dim() == 10);
  CHECK(cat().record("su3").dim == 8);
  CHECK(cat().algebra("su3")->dim() == 8);
  CHECK(cat().record("f4").dim == 52);
  CHECK(cat().record("f4").rank == 4);
  CHECK_FALSE(cat().record("f4").realizable);
  CHECK_THROWS_AS(cat().algebra("f4"), catalog_miss);
  CHECK_THROWS_AS(cat().record("nosuch"), catalog_miss);
  CHECK(cat().record("sp2/z2").dim == 10);  // quotient names resolve to the algebra
}

TEST_CASE("catalog validation invariants", "[slow]") {
  std::vector<std::string> names = {"so3", "so4", "so5", "so6", "so7", "so8", "su2", "su3",
                                    "su4", "su5", "sp1", "sp2", "sp3", "u1",  "u2",  "u3",
                                    "t2",  "t3",  "su2xsu2"};
  for (const auto& name : names) {
    INFO(name);
    auto alg = cat().algebra(name);
    CHECK(defining_condition_residual(Catalog::family_of(cat().record(name).generator), *alg) <
          1e-12);
    CHECK(jacobi_residual(*alg) < 1e-10);
    CHECK(antisymmetry_residual(*alg) < 1e-10);
    // shipped torus: dimension equals the catalog rank, pairwise commuting
    CHECK(static_cast<int>(alg->torus().size()) == alg->rank());
    for (size_t i = 0; i < alg->torus().size(); ++i) {
      for (size_t j = i + 1; j < alg->torus().size(); ++j) {
        CHECK(alg->bracket_coords(alg->torus()[i], alg->torus()[j]).cwiseAbs().maxCoeff() <
              1e-12);
      }
    }
  }
}

TEST_CASE("killing form proportionality on simple algebras") {
  for (const auto& name :
       {"so3", "so5", "so6", "so7", "so8", "su2", "su3", "su4", "su5", "sp1", "sp2", "sp3"}) {
    INFO(name);
    auto alg = cat().algebra(name);
    const auto [lambda, residual] = killing_proportionality(*alg);
    CHECK(lambda < 0.0);
    CHECK(residual < 1e-8);
  }
}

TEST_CASE("non-closed spans are rejected") {
  auto so3 = cat().algebra("so3");
  // two rotation generators bracket into the third, outside their span
  CHECK_THROWS_AS(make_embedding(so3, "bad", {so3->basis()[0], so3->basis()[1]}),
                  not_a_subalgebra);
}

TEST_CASE("catalog embeddings validate") {
  for (const auto& parent : {"so4", "so5", "so6", "su3", "su4", "sp2", "sp3"}) {
    for (const auto& rec : cat().embeddings_of(parent)) {
      INFO(parent << " > " << rec.name);
      const auto emb = cat().embedding(parent, rec.name);
      CHECK(emb.dim() == rec.dim);
      // orthonormal columns
      const Mat gram = emb.coords.transpose() * emb.coords;
      CHECK((gram - Mat::Identity(emb.dim(), emb.dim())).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}
