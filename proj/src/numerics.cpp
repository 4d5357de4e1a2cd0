#include "bethe19/numerics.hpp"

namespace bethe19 {

Mat mat_mul(const Mat &a, const Mat &b) {
  if (a.cols() != b.rows())
    throw DimensionError("mat_mul: inner dimensions " +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()));
  return a * b;
}

Mat kron(const Mat &a, const Mat &b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat mat_inv(const Mat &a, double rel_tol) {
  if (a.rows() != a.cols())
    throw DimensionError("mat_inv: matrix is " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()));
  Eigen::PartialPivLU<Mat> lu(a);
  const auto diag = lu.matrixLU().diagonal();
  double pmin = diag.cwiseAbs().minCoeff();
  double pmax = diag.cwiseAbs().maxCoeff();
  if (!(pmin > rel_tol * pmax))
    throw SingularMatrixError(
        "mat_inv: singular to tolerance, min pivot " + std::to_string(pmin),
        pmin);
  return lu.inverse();
}

LstsqResult lstsq(const Mat &a, const Vec &b, double rel_tol) {
  if (a.rows() < a.cols())
    throw DimensionError("lstsq: underdetermined system");
  if (a.rows() != b.size())
    throw DimensionError("lstsq: rhs length mismatch");
  Eigen::ColPivHouseholderQR<Mat> qr(a);
  const Mat &qrm = qr.matrixQR();
  double rmin = std::abs(qrm(0, 0)), rmax = rmin;
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    double d = std::abs(qrm(i, i));
    rmin = std::min(rmin, d);
    rmax = std::max(rmax, d);
  }
  if (!(rmin > rel_tol * rmax))
    throw RankDeficientError(
        "lstsq: rank deficient to tolerance, min diagonal " +
            std::to_string(rmin),
        rmin);
  LstsqResult res;
  res.x = qr.solve(b);
  res.residual_norm = (a * res.x - b).norm();
  res.condition = rmax / (rmin > 0 ? rmin : 1e-300);
  return res;
}

double rel_residual(const Mat &x, const Mat &y) {
  double n = std::max(x.norm(), 1e-300);
  return (x - y).norm() / n;
}

double rel_residual(const Vec &x, const Vec &y) {
  double n = std::max(x.norm(), 1e-300);
  return (x - y).norm() / n;
}

}  // namespace bethe19
