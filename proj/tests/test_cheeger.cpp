#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fathom/catalog.hpp"
#include "fathom/cheeger.hpp"

using namespace fathom;

namespace {

const Catalog& cat() { return Catalog::instance(); }

HomogeneousTriple triple(const std::string& g, const std::string& h, const std::string& k) {
  return make_triple(cat().algebra(g), cat().embedding(g, h), cat().embedding(g, k),
                     g + "/" + h + "/" + k);
}

Mat random_spd(int dim, std::mt19937_64& rng, double lo = 0.2, double hi = 5.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> eig(lo, hi);
  Mat A(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) A(i, j) = gauss(rng);
  }
  const Mat Q = Eigen::HouseholderQR<Mat>(A).householderQ();
  Vec d(dim);
  for (int i = 0; i < dim; ++i) d(i) = eig(rng);
  return Q * d.asDiagonal() * Q.transpose();
}

Vec random_vec(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = gauss(rng);
  return v;
}

}  // namespace

TEST_CASE("orbit tensor") {
  SECTION("bi-invariant restriction is the identity") {
    const auto od = orbit_tensor(Mat::Identity(3, 3));
    CHECK(od.dim_orbit == 3);
    CHECK((od.O - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("doubled metric doubles the tensor") {
    const auto od = orbit_tensor(2.0 * Mat::Identity(4, 4));
    CHECK((od.O - 2.0 * Mat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("random SPD keeps its eigenvalues") {
    std::mt19937_64 rng(2);
    const Mat O = random_spd(3, rng);
    Eigen::SelfAdjointEigenSolver<Mat> before(O), after(orbit_tensor(O).O);
    CHECK((before.eigenvalues() - after.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("non-SPD input is rejected") {
    Mat bad = Mat::Identity(2, 2);
    bad(0, 0) = -1.0;
    CHECK_THROWS_AS(orbit_tensor(bad), invalid_metric);
    Mat asym = Mat::Identity(2, 2);
    asym(0, 1) = 0.5;
    CHECK_THROWS_AS(orbit_tensor(asym), invalid_metric);
  }
}

TEST_CASE("deform closed forms") {
  SECTION("diag(1,2) at t = 1") {
    Mat O = Vec::Map((const double[]){1.0, 2.0}, 2).asDiagonal();
    const Mat Ot = deform(O, 1.0);
    CHECK(std::abs(Ot(0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(Ot(1, 1) - 2.0 / 3.0) < 1e-14);
    CHECK(std::abs(Ot(0, 1)) < 1e-14);
  }
  SECTION("t = 0 returns O") {
    std::mt19937_64 rng(5);
    const Mat O = random_spd(4, rng);
    CHECK((deform(O, 0.0) - O).cwiseAbs().maxCoeff() < 1e-13);
  }
  SECTION("large-t limit: t O_t approaches the identity") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
      const Mat O = random_spd(3, rng);
      const double t = 1e6;
      CHECK((t * deform(O, t) - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-3);
    }
  }
  SECTION("both closed forms agree on a random sweep") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> tdist(0.0, 100.0);
    for (int trial = 0; trial < 200; ++trial) {
      const Mat O = random_spd(2 + trial % 5, rng);
      const double t = tdist(rng);
      const Mat I = Mat::Identity(O.rows(), O.cols());
      const Mat f1 = spd_inverse(spd_inverse(O) + t * I);
      const Mat f2 = O * (I + t * O).inverse();
      CHECK((f1 - f2).cwiseAbs().maxCoeff() < 1e-12);
      deform(O, t);  // internal assert must not fire
    }
  }
  SECTION("eigenvalues decrease strictly in t") {
    std::mt19937_64 rng(13);
    const Mat O = random_spd(4, rng);
    double prev = Eigen::SelfAdjointEigenSolver<Mat>(deform(O, 0.0)).eigenvalues().maxCoeff();
    for (double t : {0.5, 1.0, 2.0, 5.0, 20.0}) {
      const double cur = Eigen::SelfAdjointEigenSolver<Mat>(deform(O, t)).eigenvalues().maxCoeff();
      CHECK(cur < prev);
      prev = cur;
    }
    for (double t : {150.0, 400.0, 1000.0}) {
      CHECK((t * deform(O, t) - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 10.0 / t);
    }
  }
}

TEST_CASE("metric tensor C_t") {
  SECTION("t = 0 is the identity map") {
    std::mt19937_64 rng(3);
    const Mat O = random_spd(3, rng);
    const Vec X = random_vec(4, rng), U = random_vec(3, rng);
    const auto [x, u] = apply_Ct(O, 0.0, X, U);
    CHECK((x - X).cwiseAbs().maxCoeff() == 0.0);
    CHECK((u - U).cwiseAbs().maxCoeff() < 1e-13);
  }
  SECTION("O = 2 id at t = 1/2 halves the orbit part") {
    const Mat O = 2.0 * Mat::Identity(3, 3);
    const Vec U = Vec::Ones(3);
    const auto [x, u] = apply_Ct(O, 0.5, Vec::Zero(2), U);
    CHECK((u - 0.5 * U).cwiseAbs().maxCoeff() < 1e-14);
  }
  SECTION("g(C_t U*, V*) reproduces Q(O_t U, V)") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
      const Mat O = random_spd(4, rng);
      const double t = 0.3 * trial;
      const Vec U = random_vec(4, rng), V = random_vec(4, rng);
      const auto [x, ct_u] = apply_Ct(O, t, Vec::Zero(1), U);
      const double lhs = (O * ct_u).dot(V);       // g(C_t U*, V*)
      const double rhs = (deform(O, t) * U).dot(V);  // Q(O_t U, V)
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("generalized tensors") {
  SECTION("identity pair at t = 0 harmonic-means to one half") {
    const auto d = tilde_tensors(Mat::Identity(3, 3), Mat::Identity(3, 3), 0.0);
    CHECK((d.O_tilde - 0.5 * Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((d.C_tilde + 0.5 * Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-13);
  }
  SECTION("reconstruction identity") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + trial % 4;
      const Mat O = random_spd(n, rng), OF = random_spd(n, rng);
      const double t = 0.5 * (trial % 7);
      const auto d = tilde_tensors(O, OF, t);
      const Mat rec = spd_inverse(d.O_t) * d.O_tilde + spd_inverse(OF) * d.O_tilde;
      CHECK((rec - Mat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SECTION("harmonic-mean eigenvalue bound") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
      const Mat O = random_spd(3, rng), OF = random_spd(3, rng);
      const auto d = tilde_tensors(O, OF, 1.0);
      const double emax_tilde =
          Eigen::SelfAdjointEigenSolver<Mat>(d.O_tilde).eigenvalues().maxCoeff();
      const double emax_ot = Eigen::SelfAdjointEigenSolver<Mat>(d.O_t).eigenvalues().maxCoeff();
      const double emax_of = Eigen::SelfAdjointEigenSolver<Mat>(OF).eigenvalues().maxCoeff();
      CHECK(emax_tilde < std::min(emax_ot, emax_of) + 1e-12);
      Eigen::SelfAdjointEigenSolver<Mat> es(d.O_tilde, Eigen::EigenvaluesOnly);
      CHECK(es.eigenvalues().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("horizontal lift") {
  std::mt19937_64 rng(27);
  SECTION("zero orbit component gives the naive lift") {
    const Mat O = random_spd(3, rng), OF = random_spd(3, rng);
    const Vec X = random_vec(5, rng), XF = random_vec(2, rng);
    const auto lift = horizontal_lift(O, OF, 0.7, X, XF, Vec::Zero(3));
    CHECK((lift.X_P_horizontal - X).cwiseAbs().maxCoeff() == 0.0);
    CHECK((lift.X_F_horizontal - XF).cwiseAbs().maxCoeff() == 0.0);
    CHECK(lift.V_vee.cwiseAbs().maxCoeff() < 1e-14);
    CHECK(lift.W_star.cwiseAbs().maxCoeff() < 1e-14);
  }
  SECTION("identity tensors at t = 0 split U in halves") {
    const Vec U = random_vec(4, rng);
    const auto lift =
        horizontal_lift(Mat::Identity(4, 4), Mat::Identity(4, 4), 0.0, Vec::Zero(1), Vec::Zero(1), U);
    CHECK((lift.V_vee + 0.5 * U).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((lift.W_star - 0.5 * U).cwiseAbs().maxCoeff() < 1e-13);
  }
  SECTION("star-orbit orthogonality and reconstruction on random input") {
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + trial % 4;
      const Mat O = random_spd(n, rng), OF = random_spd(n, rng);
      const double t = 0.4 * (trial % 6);
      const Vec U = random_vec(n, rng);
      const auto d = tilde_tensors(O, OF, t);
      const auto lift = horizontal_lift(O, OF, t, Vec::Zero(1), Vec::Zero(1), U);
      // orthogonality against every orbit direction V
      for (int a = 0; a < n; ++a) {
        const Vec V = Vec::Unit(n, a);
        const double pairing = (d.O_t * lift.V_vee).dot(V) + (OF * lift.W_star).dot(V);
        CHECK(std::abs(pairing) < 1e-12);
      }
      CHECK((lift.W_star - lift.V_vee - U).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("Q_t metric family") {
  std::mt19937_64 rng(33);
  SECTION("pure horizontal inputs pass through") {
    const Vec X = random_vec(4, rng), Y = random_vec(4, rng);
    const double q = qt_metric(Mat::Identity(2, 2), Mat::Identity(2, 2), 1.0, X, Vec::Zero(2), Y,
                               Vec::Zero(2));
    CHECK(std::abs(q - X.dot(Y)) < 1e-14);
  }
  SECTION("symmetry") {
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 2 + trial % 3;
      const Mat O = random_spd(n, rng), OF = random_spd(n, rng);
      const double t = 0.1 + trial;
      const Vec X = random_vec(3, rng), Y = random_vec(3, rng);
      const Vec U = random_vec(n, rng), V = random_vec(n, rng);
      const double ab = qt_metric(O, OF, t, X, U, Y, V);
      const double ba = qt_metric(O, OF, t, Y, V, X, U);
      CHECK(std::abs(ab - ba) < 1e-12);
    }
  }
  SECTION("positive-definite for sampled t > 0") {
    const Mat O = random_spd(3, rng), OF = random_spd(3, rng);
    for (double t : {0.1, 1.0, 10.0, 1000.0}) {
      for (int trial = 0; trial < 20; ++trial) {
        const Vec X = random_vec(2, rng), U = random_vec(3, rng);
        if (X.norm() + U.norm() < 1e-12) continue;
        CHECK(qt_metric(O, OF, t, X, U, X, U) > 0.0);
      }
    }
  }
  SECTION("Cauchy convergence towards the analytic limit") {
    const Mat O = random_spd(3, rng), OF = random_spd(3, rng);
    double n3 = 0.0, diff = 0.0, limit_diff = 0.0;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const Vec U = Vec::Unit(3, a), V = Vec::Unit(3, b);
        const double q3 = qt_metric(O, OF, 1e3, Vec::Zero(1), U, Vec::Zero(1), V);
        const double q6 = qt_metric(O, OF, 1e6, Vec::Zero(1), U, Vec::Zero(1), V);
        const double ql = qt_metric_limit(O, Vec::Zero(1), U, Vec::Zero(1), V);
        n3 = std::max(n3, std::abs(q3));
        diff = std::max(diff, std::abs(q3 - q6));
        limit_diff = std::max(limit_diff, std::abs(q6 - ql));
      }
    }
    CHECK(diff < 1e-2 * n3);
    CHECK(limit_diff < 1e-3);
  }
}

TEST_CASE("deformed vertizontal curvature") {
  std::mt19937_64 rng(41);
  auto unit = [&](int d) {
    Vec v = random_vec(d, rng);
    return Vec(v.normalized());
  };
  SECTION("t = 0 reduces to the undeformed curvature") {
    const auto tr = triple("sp2", "sp1xsp1", "sp1u");
    for (int trial = 0; trial < 20; ++trial) {
      const Vec X = unit(4), V = unit(3);
      CHECK(deformed_vertizontal_sec(tr, 0.0, X, V) == vertizontal_sec(tr, X, V));
    }
  }
  SECTION("positivity on the fat triple across the sweep") {
    const auto tr = triple("sp2", "sp1xsp1", "sp1u");
    for (double t : {0.1, 1.0, 10.0}) {
      for (int trial = 0; trial < 500; ++trial) {
        CHECK(deformed_vertizontal_sec(tr, t, unit(4), unit(3)) > 0.0);
      }
    }
  }
  SECTION("abelian model stays flat for every t") {
    const auto flat = triple("t3", "t1", "e");
    for (double t : {0.0, 0.5, 3.0, 50.0}) {
      CHECK(deformed_vertizontal_sec(flat, t, Vec::Unit(2, 0), Vec::Unit(1, 0)) < 1e-24);
    }
  }
  SECTION("cross-check against the Koszul oracle with the deformed operator") {
    for (const auto& names :
         {TripleNames{"sp2", "sp1xsp1", "sp1u"}, TripleNames{"su3", "s(u2xu1)", "su2"}}) {
      const auto tr = triple(names.g, names.h, names.k);
      INFO(tr.name);
      for (double t : {0.1, 1.0, 10.0, 100.0}) {
        const Mat Phi = deformed_metric_operator(tr, t);
        for (int trial = 0; trial < 25; ++trial) {
          const Vec X = unit(tr.dim_m()), V = unit(tr.dim_p());
          const double product_route = deformed_vertizontal_sec(tr, t, X, V);
          const double koszul = left_invariant_curvature(*tr.g, Phi, tr.m * X, tr.p * V);
          CHECK(std::abs(product_route - koszul) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("deformation sweep rows") {
  const auto tr = triple("sp2", "sp1xsp1", "sp1u");
  const auto rows = deform_sweep(tr, {0.0, 1.0, 10.0}, 50, 7);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].t == 0.0);
  CHECK(std::abs(rows[0].min_eig_Ot - 1.0) < 1e-14);
  CHECK(std::abs(rows[1].min_eig_Ot - 0.5) < 1e-14);
  for (const auto& r : rows) CHECK(r.min_vertizontal > 0.0);
  // the t = 0 row reproduces undeformed sampling: rerun with the same seed
  const auto again = deform_sweep(tr, {0.0}, 50, 7);
  CHECK(again[0].min_vertizontal == rows[0].min_vertizontal);
}
