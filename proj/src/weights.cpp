#include "bethe19/weights.hpp"

#include <cmath>

namespace bethe19 {

using std::cosh;
using std::exp;
using std::sinh;

namespace {
constexpr double pi = 3.14159265358979323846;
}

const char *kind_name(ModelKind k) { return k == ModelKind::ZF ? "zf" : "ik"; }

double dist_to_sinh_zero(cx z) {
  // zeros at i k pi
  double im = std::remainder(z.imag(), pi);
  return std::hypot(z.real(), im);
}

double dist_to_cosh_zero(cx z) {
  // cosh(z) = i a sinh(z + i pi/2) up to sign: zeros at i(pi/2 + k pi)
  return dist_to_sinh_zero(z + cx(0.0, pi / 2));
}

void ModelParams::validate(double exclusion) const {
  if (length < 1)
    throw std::invalid_argument("ModelParams: length must be >= 1");
  if (epsilon != 1 && epsilon != -1)
    throw std::invalid_argument("ModelParams: epsilon must be +1 or -1");
  const cx bad[] = {cx(0, 0), cx(0, pi / 2), cx(0, pi)};
  for (cx b : bad)
    if (std::abs(eta - b) < exclusion)
      throw std::invalid_argument("ModelParams: eta within exclusion radius "
                                  "of a degenerate anisotropy");
}

WeightVector eval_weights(const ModelParams &p, cx u, double exclusion) {
  p.validate();
  const cx eta = p.eta;
  if (dist_to_sinh_zero(u + eta) < exclusion)
    throw PoleProximityError("sinh(u+eta)", u);
  WeightVector w;
  w.a = 1.0;
  w.b = sinh(u) / sinh(u + eta);
  w.c = sinh(eta) / sinh(u + eta);
  if (p.kind == ModelKind::ZF) {
    if (dist_to_sinh_zero(u + eta / 2.0) < exclusion)
      throw PoleProximityError("sinh(u+eta/2)", u);
    const cx den = sinh(u + eta / 2.0) * sinh(u + eta);
    w.d = sinh(eta) * sinh(u) / den;
    w.d_tilde = w.d;
    w.f = sinh(u - eta / 2.0) * sinh(u) / den;
    w.e = (cosh(eta / 2.0 - u) * cosh(u + eta) - cosh(eta / 2.0)) / den;
    w.h = sinh(eta) * sinh(eta / 2.0) / den;
    w.h_tilde = w.h;
  } else {
    if (dist_to_cosh_zero(u + 1.5 * eta) < exclusion)
      throw PoleProximityError("cosh(u+3eta/2)", u);
    const cx den = cosh(u + 1.5 * eta) * sinh(u + eta);
    w.d = exp(eta) * sinh(eta) * sinh(u) / den;
    w.d_tilde = -exp(-2.0 * eta) * w.d;
    w.f = cosh(u + eta / 2.0) * sinh(u) / den;
    w.e = (cosh(u - eta / 2.0) * sinh(u + 2.0 * eta) -
           cosh(eta / 2.0) * sinh(eta)) / den;
    w.h = (den - exp(2.0 * eta) * cosh(u + eta / 2.0) * sinh(u)) / den;
    w.h_tilde = (den - exp(-2.0 * eta) * cosh(u + eta / 2.0) * sinh(u)) / den;
  }
  if (p.weight_perturbation) {
    const auto &wp = *p.weight_perturbation;
    switch (wp.which) {
      case 'a': w.a += wp.delta; break;
      case 'b': w.b += wp.delta; break;
      case 'c': w.c += wp.delta; break;
      case 'd': w.d += wp.delta; break;
      case 't': w.d_tilde += wp.delta; break;
      case 'e': w.e += wp.delta; break;
      case 'f': w.f += wp.delta; break;
      case 'h': w.h += wp.delta; break;
      case 'g': w.h_tilde += wp.delta; break;
      default: break;
    }
  }
  return w;
}

Mat build_r_matrix(const ModelParams &p, cx u) {
  const WeightVector w = eval_weights(p, u);
  Mat R = Mat::Zero(9, 9);
  R(0, 0) = w.a;
  R(1, 1) = w.b; R(1, 3) = w.c;
  R(2, 2) = w.f; R(2, 4) = w.d; R(2, 6) = w.h;
  R(3, 1) = w.c; R(3, 3) = w.b;
  R(4, 2) = w.d_tilde; R(4, 4) = w.e; R(4, 6) = w.d;
  R(5, 5) = w.b; R(5, 7) = w.c;
  R(6, 2) = w.h_tilde; R(6, 4) = w.d_tilde; R(6, 6) = w.f;
  R(7, 5) = w.c; R(7, 7) = w.b;
  R(8, 8) = w.a;
  return R;
}

CrossingData crossing_data(const ModelParams &p) {
  CrossingData cd;
  if (p.kind == ModelKind::ZF) {
    cd.m_matrix = Mat::Identity(3, 3);
    cd.rho = p.eta / 2.0;
  } else {
    cd.m_matrix = Mat::Zero(3, 3);
    cd.m_matrix(0, 0) = exp(-2.0 * p.eta);
    cd.m_matrix(1, 1) = 1.0;
    cd.m_matrix(2, 2) = exp(2.0 * p.eta);
    cd.rho = 1.5 * p.eta;
  }
  return cd;
}

Mat permutation_matrix() {
  Mat P = Mat::Zero(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      P(3 * i + k, 3 * k + i) = 1.0;
  return P;
}

Mat r21_matrix(const ModelParams &p, cx u) {
  static const Mat P = permutation_matrix();
  return P * build_r_matrix(p, u) * P;
}

Mat partial_transpose_1(const Mat &x) {
  Mat y(9, 9);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          y(3 * a + b, 3 * c + d) = x(3 * c + b, 3 * a + d);
  return y;
}

Mat partial_transpose_2(const Mat &x) {
  Mat y(9, 9);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          y(3 * a + b, 3 * c + d) = x(3 * a + d, 3 * c + b);
  return y;
}

double check_ybe(const ModelParams &p, cx u, cx v) {
  const Mat I3 = Mat::Identity(3, 3);
  static const Mat P = permutation_matrix();
  const Mat IP = kron(I3, P);
  const Mat R12 = kron(build_r_matrix(p, u - v), I3);
  const Mat R23 = kron(I3, build_r_matrix(p, v));
  const Mat R13 = IP * kron(build_r_matrix(p, u), I3) * IP;
  const Mat lhs = R12 * R13 * R23;
  const Mat rhs = R23 * R13 * R12;
  return rel_residual(lhs, rhs);
}

double check_unitarity(const ModelParams &p, cx u) {
  const Mat prod = build_r_matrix(p, u) * r21_matrix(p, -u);
  return rel_residual(prod, Mat::Identity(9, 9));
}

double check_pt(const ModelParams &p, cx u) {
  const Mat R = build_r_matrix(p, u);
  return rel_residual(r21_matrix(p, u), Mat(R.transpose()));
}

CrossingCheck check_crossing(const ModelParams &p, cx u) {
  const CrossingData cd = crossing_data(p);
  const Mat I3 = Mat::Identity(3, 3);
  const Mat M1 = kron(cd.m_matrix, I3);
  const Mat M1inv = mat_inv(M1);
  const Mat X = partial_transpose_1(build_r_matrix(p, u)) * M1 *
                partial_transpose_2(build_r_matrix(p, -u - 2.0 * cd.rho)) *
                M1inv;
  CrossingCheck out;
  out.zeta = X(0, 0);
  out.residual = rel_residual(X, Mat(out.zeta * Mat::Identity(9, 9)));
  return out;
}

double check_r_mm_commutator(const ModelParams &p, cx u) {
  const Mat R = build_r_matrix(p, u);
  const Mat MM = kron(crossing_data(p).m_matrix, crossing_data(p).m_matrix);
  return (R * MM - MM * R).norm() / std::max(R.norm(), 1e-300);
}

}  // namespace bethe19
