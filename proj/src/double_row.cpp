#include "bethe19/double_row.hpp"

namespace bethe19 {

namespace {

long quantum_dim(int length) {
  long d = 1;
  for (int i = 0; i < length; ++i) d *= 3;
  return d;
}

// R acting on aux (x) site k, embedded in aux (x) (C^3)^L.
Mat embed_r_at_site(const Mat &R, int site, int length) {
  const long dq = quantum_dim(length);
  Mat out = Mat::Zero(3 * dq, 3 * dq);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Mat rij = R.block(3 * i, 3 * j, 3, 3);
      out.block(i * dq, j * dq, dq, dq) = embed_site(rij, site, length);
    }
  return out;
}

MonodromyBlocks split_blocks(const Mat &full, cx u,
                             MonodromyBlocks::Flavor flavor) {
  const long dq = full.rows() / 3;
  MonodromyBlocks mb;
  mb.u = u;
  mb.flavor = flavor;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      mb.T[i][j] = full.block(i * dq, j * dq, dq, dq);
  return mb;
}

// T_a embedded on aux1 (x) aux2 (x) quantum: aux_slot selects which of the
// two auxiliary spaces carries the operator index.
Mat embed_two_aux(const std::array<std::array<Mat, 3>, 3> &blocks,
                  int aux_slot) {
  const long dq = blocks[0][0].rows();
  Mat out = Mat::Zero(9 * dq, 9 * dq);
  const Mat I3 = Mat::Identity(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Mat eij = Mat::Zero(3, 3);
      eij(i, j) = 1.0;
      const Mat auxpart =
          aux_slot == 0 ? kron(eij, I3) : kron(I3, eij);
      out += kron(auxpart, blocks[i][j]);
    }
  return out;
}

}  // namespace

Mat embed_site(const Mat &op, int site, int length) {
  Mat out = kron(Mat::Identity(quantum_dim(site), quantum_dim(site)), op);
  const long rest = quantum_dim(length - 1 - site);
  return kron(out, Mat::Identity(rest, rest));
}

Vec pseudovacuum(int length) {
  Vec v = Vec::Zero(quantum_dim(length));
  v(0) = 1.0;
  return v;
}

Mat MonodromyBlocks::reassemble() const {
  const long dq = T[0][0].rows();
  Mat full(3 * dq, 3 * dq);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      full.block(i * dq, j * dq, dq, dq) = T[i][j];
  return full;
}

MonodromyBlocks build_monodromy(const ModelParams &p, cx u) {
  if (p.length > 4)
    throw std::invalid_argument("build_monodromy: L capped at 4");
  const Mat R = build_r_matrix(p, u);
  const long dq = quantum_dim(p.length);
  Mat T = Mat::Identity(3 * dq, 3 * dq);
  for (int k = 0; k < p.length; ++k) T = T * embed_r_at_site(R, k, p.length);
  return split_blocks(T, u, MonodromyBlocks::Flavor::plain);
}

MonodromyBlocks build_hat_monodromy(const ModelParams &p, cx u) {
  const Mat Tm = build_monodromy(p, -u).reassemble();
  return split_blocks(mat_inv(Tm, 1e-13), u, MonodromyBlocks::Flavor::hat);
}

OperatorSet build_double_row(const ModelParams &p, cx u) {
  const long dq = quantum_dim(p.length);
  const Mat T = build_monodromy(p, u).reassemble();
  const Mat That = build_hat_monodromy(p, u).reassemble();
  const Mat Km = kron(build_k_minus(p, u).matrix, Mat::Identity(dq, dq));
  const Mat U = T * Km * That;
  OperatorSet ops;
  ops.u = u;
  auto blk = [&](int i, int j) { return U.block(i * dq, j * dq, dq, dq); };
  ops.A1 = blk(0, 0); ops.B1 = blk(0, 1); ops.B2 = blk(0, 2);
  ops.C1 = blk(1, 0); ops.A2 = blk(1, 1); ops.B3 = blk(1, 2);
  ops.C2 = blk(2, 0); ops.C3 = blk(2, 1); ops.A3 = blk(2, 2);
  return ops;
}

FValues f_functions(const ModelParams &p, cx u) {
  const WeightVector w = eval_weights(p, 2.0 * u);
  const cx den = w.c * w.c - w.e;
  if (std::abs(den) < 1e-12)
    throw PoleProximityError("c(2u)^2 - e(2u)", u);
  FValues f;
  f.f1 = w.c;
  f.f2 = w.h_tilde;
  f.f3 = w.c * (w.h_tilde - 1.0) / den;
  f.f4 = (w.c * w.c - w.h_tilde * w.e) / den;
  return f;
}

ShiftedSet shifted_operators(const OperatorSet &ops, const ModelParams &p,
                             cx u) {
  const FValues f = f_functions(p, u);
  ShiftedSet s;
  s.f1 = f.f1; s.f2 = f.f2; s.f3 = f.f3; s.f4 = f.f4;
  s.D1 = ops.A1;
  s.D2 = ops.A2 - f.f1 * ops.A1;
  s.D3 = ops.A3 - f.f2 * ops.A1 - f.f3 * s.D2;
  return s;
}

OmegaValues omega_weights(const ModelParams &p, cx u) {
  const Mat Kp = build_k_plus(p, u).matrix;
  const FValues f = f_functions(p, u);
  OmegaValues w;
  w.w1 = Kp(0, 0) + f.f1 * Kp(1, 1) + f.f2 * Kp(2, 2);
  w.w2 = Kp(1, 1) + f.f3 * Kp(2, 2);
  w.w3 = Kp(2, 2);
  return w;
}

TransferParts transfer_matrix(const ModelParams &p, cx u) {
  const OperatorSet ops = build_double_row(p, u);
  const ShiftedSet sh = shifted_operators(ops, p, u);
  const OmegaValues w = omega_weights(p, u);
  const Mat Kp = build_k_plus(p, u).matrix;
  TransferParts out;
  out.t_d = w.w1 * sh.D1 + w.w2 * sh.D2 + w.w3 * sh.D3;
  out.t_u = Kp(0, 1) * ops.C1 + Kp(0, 2) * ops.C2 + Kp(1, 2) * ops.C3;
  // independent trace route over the auxiliary space
  const Mat *U[3][3] = {{&ops.A1, &ops.B1, &ops.B2},
                        {&ops.C1, &ops.A2, &ops.B3},
                        {&ops.C2, &ops.C3, &ops.A3}};
  out.t = Mat::Zero(out.t_d.rows(), out.t_d.cols());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.t += Kp(i, j) * (*U[j][i]);
  return out;
}

double check_global1(const ModelParams &p, cx u, cx v) {
  if (p.length > 2)
    throw std::invalid_argument("check_global1: triple space capped at L=2");
  const long dq = quantum_dim(p.length);
  const Mat Rc = kron(Mat(permutation_matrix() * build_r_matrix(p, u - v)),
                      Mat::Identity(dq, dq));
  const Mat T1u = embed_two_aux(build_monodromy(p, u).T, 0);
  const Mat T2v = embed_two_aux(build_monodromy(p, v).T, 1);
  const Mat T1v = embed_two_aux(build_monodromy(p, v).T, 0);
  const Mat T2u = embed_two_aux(build_monodromy(p, u).T, 1);
  return rel_residual(Mat(Rc * T1u * T2v), Mat(T1v * T2u * Rc));
}

double check_global2(const ModelParams &p, cx u, cx v) {
  if (p.length > 2)
    throw std::invalid_argument("check_global2: triple space capped at L=2");
  const long dq = quantum_dim(p.length);
  auto aux_r = [&](const Mat &r9) {
    return kron(r9, Mat::Identity(dq, dq));
  };
  auto ublocks = [&](cx z) {
    const OperatorSet o = build_double_row(p, z);
    std::array<std::array<Mat, 3>, 3> U;
    U[0] = {o.A1, o.B1, o.B2};
    U[1] = {o.C1, o.A2, o.B3};
    U[2] = {o.C2, o.C3, o.A3};
    return U;
  };
  const Mat U1 = embed_two_aux(ublocks(u), 0);
  const Mat U2 = embed_two_aux(ublocks(v), 1);
  const Mat Rmv = aux_r(build_r_matrix(p, u - v));
  const Mat R21pv = aux_r(r21_matrix(p, u + v));
  const Mat Rpv = aux_r(build_r_matrix(p, u + v));
  const Mat R21mv = aux_r(r21_matrix(p, u - v));
  return rel_residual(Mat(Rmv * U1 * R21pv * U2), Mat(U2 * Rpv * U1 * R21mv));
}

}  // namespace bethe19
