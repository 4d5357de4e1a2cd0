#pragma once

// Dense complex linear algebra used by every other module: products,
// Kronecker products, LU inversion, least squares, residual norms.
// Everything is double-precision complex; matrices stay small (the largest
// objects are 3*3^L square with L <= 4), so plain dense kernels suffice.

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace bethe19 {

using cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct DimensionError : std::runtime_error {
  explicit DimensionError(const std::string &msg) : std::runtime_error(msg) {}
};

// Thrown when an LU pivot (or QR diagonal) falls below the relative
// tolerance; carries the offending magnitude for diagnostics.
struct SingularMatrixError : std::runtime_error {
  double pivot_magnitude;
  SingularMatrixError(const std::string &msg, double pivot)
      : std::runtime_error(msg), pivot_magnitude(pivot) {}
};

struct RankDeficientError : std::runtime_error {
  double pivot_magnitude;
  RankDeficientError(const std::string &msg, double pivot)
      : std::runtime_error(msg), pivot_magnitude(pivot) {}
};

// Standard product with an explicit shape check (Eigen's own assert is
// compiled out in release builds).
Mat mat_mul(const Mat &a, const Mat &b);

// Kronecker product: entry (i*b.rows()+k, j*b.cols()+l) = a(i,j)*b(k,l).
Mat kron(const Mat &a, const Mat &b);

// Inverse by LU with partial pivoting.  Refuses when the smallest pivot is
// below rel_tol times the largest one.
Mat mat_inv(const Mat &a, double rel_tol = 1e-10);

struct LstsqResult {
  Vec x;
  double residual_norm;   // ||A x - b||_2
  double condition;       // max/min |R diagonal| from the QR factor
};

// Least squares min ||A x - b|| via column-pivoted Householder QR.
// Requires a.rows() >= a.cols(); throws RankDeficientError when the
// smallest |R_ii| is below rel_tol times the largest.
LstsqResult lstsq(const Mat &a, const Vec &b, double rel_tol = 1e-10);

// ||x - y||_F / max(||x||_F, tiny); the workhorse residual of every check.
double rel_residual(const Mat &x, const Mat &y);
double rel_residual(const Vec &x, const Vec &y);

}  // namespace bethe19
