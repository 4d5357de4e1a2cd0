#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bethe19/weights.hpp"

#include <random>

using namespace bethe19;

namespace {
double u01(std::mt19937_64 &g) { return double(g() >> 11) * 0x1.0p-53; }
cx rand_u(std::mt19937_64 &g) {
  return cx(1.1 * (2 * u01(g) - 1), 0.7 * (2 * u01(g) - 1));
}
ModelParams params(ModelKind k, int eps = +1) {
  ModelParams p;
  p.kind = k;
  p.epsilon = eps;
  return p;
}
}  // namespace

TEST_CASE("R(0) is the permutation for both models") {
  for (ModelKind k : {ModelKind::ZF, ModelKind::IK}) {
    const Mat r0 = build_r_matrix(params(k), cx(0.0));
    CHECK(rel_residual(r0, permutation_matrix()) < 1e-14);
  }
}

TEST_CASE("weight vector structure") {
  const WeightVector wz = eval_weights(params(ModelKind::ZF), cx(0.21, 0.33));
  CHECK(wz.a == cx(1.0));
  CHECK(wz.d == wz.d_tilde);  // ZF is PT-symmetric entry-wise
  CHECK(wz.h == wz.h_tilde);
  const WeightVector wi = eval_weights(params(ModelKind::IK), cx(0.21, 0.33));
  CHECK(wi.a == cx(1.0));
  CHECK(std::abs(wi.d - wi.d_tilde) > 1e-6);  // IK is not
}

TEST_CASE("pole guard raises on the weight poles") {
  const ModelParams pz = params(ModelKind::ZF);
  CHECK_THROWS_AS(eval_weights(pz, -pz.eta + cx(1e-8, 0)), PoleProximityError);
  CHECK_THROWS_AS(eval_weights(pz, -pz.eta / 2.0), PoleProximityError);
  const ModelParams pi = params(ModelKind::IK);
  CHECK_THROWS_AS(eval_weights(pi, -pi.eta + cx(0, 1e-8)), PoleProximityError);
  // the guard works mod i pi
  CHECK_THROWS_AS(eval_weights(pz, -pz.eta + cx(0, 3.14159265358979324)),
                  PoleProximityError);
}

TEST_CASE("dist helpers measure mod i pi") {
  CHECK(dist_to_sinh_zero(cx(0, 3.14159265358979324)) < 1e-12);
  CHECK(dist_to_sinh_zero(cx(0.3, 0)) == doctest::Approx(0.3));
  CHECK(dist_to_cosh_zero(cx(0, 1.57079632679489662)) < 1e-12);
}

TEST_CASE("Yang-Baxter, unitarity, PT on a seeded sweep") {
  std::mt19937_64 g(17);
  for (ModelKind k : {ModelKind::ZF, ModelKind::IK})
    for (int eps : {+1, -1}) {
      if (k == ModelKind::ZF && eps < 0) continue;
      const ModelParams p = params(k, eps);
      for (int t = 0; t < 6; ++t) {
        const cx u = rand_u(g), v = rand_u(g);
        CHECK(check_ybe(p, u, v) < 1e-12);
        CHECK(check_unitarity(p, u) < 1e-12);
        CHECK(check_pt(p, u) < 1e-12);
      }
    }
}

TEST_CASE("crossing-unitarity with the model crossing data") {
  std::mt19937_64 g(19);
  for (ModelKind k : {ModelKind::ZF, ModelKind::IK}) {
    const ModelParams p = params(k);
    const CrossingData cd = crossing_data(p);
    if (k == ModelKind::ZF) {
      CHECK(rel_residual(cd.m_matrix, Mat(Mat::Identity(3, 3))) < 1e-15);
      CHECK(std::abs(cd.rho - p.eta / 2.0) < 1e-15);
    } else {
      CHECK(std::abs(cd.m_matrix(0, 0) - std::exp(-2.0 * p.eta)) < 1e-15);
      CHECK(std::abs(cd.rho - 1.5 * p.eta) < 1e-15);
    }
    for (int t = 0; t < 5; ++t) {
      const CrossingCheck cc = check_crossing(p, rand_u(g));
      CHECK(cc.residual < 1e-12);
      CHECK(std::abs(cc.zeta) > 1e-8);  // the scalar is generically nonzero
    }
  }
}

TEST_CASE("R commutes with M x M") {
  std::mt19937_64 g(23);
  for (ModelKind k : {ModelKind::ZF, ModelKind::IK})
    CHECK(check_r_mm_commutator(params(k), rand_u(g)) < 1e-13);
}

TEST_CASE("partial transposes compose correctly") {
  std::mt19937_64 g(29);
  Mat x(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) x(i, j) = cx(u01(g), u01(g));
  CHECK(rel_residual(partial_transpose_1(partial_transpose_1(x)), x) == 0.0);
  CHECK(rel_residual(partial_transpose_2(partial_transpose_2(x)), x) == 0.0);
  CHECK(rel_residual(partial_transpose_1(partial_transpose_2(x)),
                     Mat(x.transpose())) == 0.0);
}

TEST_CASE("r21 is the permuted R") {
  const ModelParams p = params(ModelKind::IK);
  const cx u(0.37, -0.22);
  const Mat p9 = permutation_matrix();
  CHECK(rel_residual(r21_matrix(p, u),
                     Mat(p9 * build_r_matrix(p, u) * p9)) == 0.0);
}

TEST_CASE("weight perturbation hook moves exactly the chosen entries") {
  ModelParams p = params(ModelKind::ZF);
  ModelParams q = p;
  q.weight_perturbation = WeightPerturbation{'c', cx(1e-3, 0)};
  const Mat r = build_r_matrix(p, cx(0.31, 0.05));
  const Mat rq = build_r_matrix(q, cx(0.31, 0.05));
  CHECK(std::abs(rq(1, 3) - r(1, 3) - cx(1e-3)) < 1e-15);
  CHECK(std::abs(rq(0, 0) - r(0, 0)) == 0.0);
  // the perturbed matrix violates Yang-Baxter
  CHECK(check_ybe(q, cx(0.31, 0.05), cx(-0.2, 0.14)) > 1e-6);
}

TEST_CASE("validate rejects degenerate anisotropy") {
  ModelParams p = params(ModelKind::ZF);
  p.eta = cx(0.0, 0.0);
  CHECK_THROWS_AS(p.validate(), std::exception);
  p.eta = cx(0.43, 0.17);
  p.length = 0;
  CHECK_THROWS_AS(p.validate(), std::exception);
  p.length = 2;
  p.epsilon = 2;
  CHECK_THROWS_AS(p.validate(), std::exception);
}
