#include "bethe19/boundary.hpp"

namespace bethe19 {

using std::cosh;
using std::exp;
using std::sinh;

namespace {
constexpr double pi = 3.14159265358979323846;

Mat k_minus_entries(const ModelParams &p, cx xi, cx beta, cx u) {
  const cx eta = p.eta;
  Mat K = Mat::Zero(3, 3);
  if (p.kind == ModelKind::ZF) {
    K(0, 0) = sinh(u + xi) * sinh(u + xi - eta / 2.0);
    K(1, 1) = sinh(xi - u) * sinh(u + xi - eta / 2.0);
    K(2, 2) = sinh(u - xi) * sinh(u - xi + eta / 2.0);
    K(0, 1) = beta * sinh(2.0 * u) * sinh(u + xi - eta / 2.0);
    K(1, 2) = beta * sinh(2.0 * u) * sinh(xi - u);
    K(0, 2) = (beta * beta * sinh(eta / 2.0) / sinh(eta)) * sinh(2.0 * u) *
              sinh(2.0 * u - eta / 2.0);
  } else {
    const cx ip4 = cx(0.0, p.epsilon * pi / 4.0);
    K(0, 0) = sinh(u + 0.75 * eta + ip4) * cosh(u + 0.75 * eta - ip4);
    K(2, 2) = K(0, 0);
    K(1, 1) = sinh(-u + 0.75 * eta + ip4) * cosh(u + 0.75 * eta - ip4);
    K(0, 1) = beta * sinh(2.0 * u) * cosh(u + 0.75 * eta - ip4);
    K(1, 2) = beta * sinh(2.0 * u) * exp(-eta) * sinh(u + 0.75 * eta + ip4);
    K(0, 2) = (-beta * beta * exp(-eta) / cosh(eta / 2.0)) * sinh(2.0 * u) *
              cosh(u + 0.25 * eta + ip4) * sinh(u + 0.75 * eta + ip4);
  }
  return K;
}
}  // namespace

KMatrix build_k_minus(const ModelParams &p, cx u) {
  p.validate();
  return KMatrix{KMatrix::Side::minus,
                 k_minus_entries(p, p.xi_minus, p.beta_minus, u), p};
}

KMatrix build_k_plus(const ModelParams &p, cx u) {
  p.validate();
  const CrossingData cd = crossing_data(p);
  Mat K = k_minus_entries(p, p.xi_plus, p.beta_plus, -u - cd.rho) *
          cd.m_matrix;
  if (p.kplus_perturbation) {
    const auto &ep = *p.kplus_perturbation;
    K(ep.row, ep.col) += ep.delta;
  }
  return KMatrix{KMatrix::Side::plus, K, p};
}

double check_reflection_left(const ModelParams &p, cx u, cx v) {
  const Mat I3 = Mat::Identity(3, 3);
  const Mat K1 = kron(build_k_minus(p, u).matrix, I3);
  const Mat K2 = kron(I3, build_k_minus(p, v).matrix);
  const Mat lhs = build_r_matrix(p, u - v) * K1 * r21_matrix(p, u + v) * K2;
  const Mat rhs = K2 * build_r_matrix(p, u + v) * K1 * r21_matrix(p, u - v);
  return rel_residual(lhs, rhs);
}

double check_reflection_right(const ModelParams &p, cx u, cx v) {
  const CrossingData cd = crossing_data(p);
  const Mat I3 = Mat::Identity(3, 3);
  const Mat M1 = kron(cd.m_matrix, I3);
  const Mat M1inv = mat_inv(M1);
  const Mat K1t = kron(Mat(build_k_plus(p, u).matrix.transpose()), I3);
  const Mat K2t = kron(I3, Mat(build_k_plus(p, v).matrix.transpose()));
  const cx w = -u - v - 2.0 * cd.rho;
  const Mat lhs =
      build_r_matrix(p, v - u) * K1t * M1inv * r21_matrix(p, w) * M1 * K2t;
  const Mat rhs =
      K2t * M1 * build_r_matrix(p, w) * M1inv * K1t * r21_matrix(p, v - u);
  return rel_residual(lhs, rhs);
}

}  // namespace bethe19
