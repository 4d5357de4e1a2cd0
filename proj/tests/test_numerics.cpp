#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bethe19/numerics.hpp"

#include <random>

using namespace bethe19;

namespace {
double u01(std::mt19937_64 &g) { return double(g() >> 11) * 0x1.0p-53; }
Mat random_mat(int r, int c, std::mt19937_64 &g) {
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      m(i, j) = cx(2 * u01(g) - 1, 2 * u01(g) - 1);
  return m;
}
}  // namespace

TEST_CASE("kron index convention is row-major") {
  Mat a(2, 2), b(2, 2);
  a << cx(1), cx(2), cx(3), cx(4);
  b << cx(5), cx(6), cx(7), cx(8);
  const Mat k = kron(a, b);
  REQUIRE(k.rows() == 4);
  // (i*rB+p, j*cB+q) = A(i,j) B(p,q)
  CHECK(k(0, 0) == cx(5));
  CHECK(k(0, 2) == cx(2) * cx(5));
  CHECK(k(1, 3) == cx(2) * cx(8));
  CHECK(k(3, 1) == cx(3) * cx(8));
}

TEST_CASE("kron is associative and multiplicative") {
  std::mt19937_64 g(3);
  const Mat a = random_mat(2, 2, g), b = random_mat(3, 3, g),
            c = random_mat(2, 2, g), d = random_mat(3, 3, g);
  CHECK(rel_residual(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-14);
  // (A x B)(C x D) = AC x BD
  CHECK(rel_residual(Mat(kron(a, b) * kron(c, d)),
                     kron(Mat(a * c), Mat(b * d))) < 1e-13);
}

TEST_CASE("mat_mul checks shapes") {
  std::mt19937_64 g(5);
  const Mat a = random_mat(2, 3, g), b = random_mat(3, 4, g);
  CHECK(rel_residual(mat_mul(a, b), Mat(a * b)) == 0.0);
  CHECK_THROWS_AS(mat_mul(b, a), DimensionError);
}

TEST_CASE("mat_inv round trip and singularity detection") {
  std::mt19937_64 g(7);
  const Mat a = random_mat(5, 5, g);
  const Mat ai = mat_inv(a);
  CHECK(rel_residual(Mat(a * ai), Mat(Mat::Identity(5, 5))) < 1e-12);

  Mat s = random_mat(4, 4, g);
  s.row(3) = s.row(0) + s.row(1);  // singular by construction
  CHECK_THROWS_AS(mat_inv(s), SingularMatrixError);
}

TEST_CASE("lstsq recovers planted coefficients") {
  std::mt19937_64 g(11);
  const Mat a = random_mat(40, 3, g);
  Vec x0(3);
  x0 << cx(0.3, -1.1), cx(2.0, 0.4), cx(-0.7, 0.2);
  const LstsqResult r = lstsq(a, Vec(a * x0));
  CHECK((r.x - x0).norm() < 1e-12);
  CHECK(r.residual_norm < 1e-12);
  CHECK(r.condition >= 1.0);

  Mat coll = random_mat(40, 3, g);
  coll.col(2) = coll.col(0) * cx(2.0, 1.0);  // collinear columns
  CHECK_THROWS_AS(lstsq(coll, Vec(coll * x0)), RankDeficientError);
}

TEST_CASE("rel_residual is symmetric in scale and zero-safe") {
  Vec x(2), y(2);
  x << cx(1.0), cx(0.0);
  y << cx(1.0), cx(1e-13);
  CHECK(rel_residual(x, y) == doctest::Approx(1e-13).epsilon(1e-3));
  Vec z = Vec::Zero(2);
  CHECK(std::isfinite(rel_residual(z, z)));
}
