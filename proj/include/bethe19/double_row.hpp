#pragma once

// Single-row monodromies T(u), T-hat(u) = T(-u)^-1, the double-row
// monodromy U(u) = T(u) K-(u) T-hat(u), its nine operator entries on the
// 3^L quantum space, the shifted diagonal operators D_j, and the transfer
// matrix t(u) = t_d(u) + t_u(u).
//
// Embedding order is fixed as aux (x) site_1 (x) ... (x) site_L with
// row-major Kronecker composition throughout.

#include "bethe19/boundary.hpp"

#include <array>

namespace bethe19 {

struct MonodromyBlocks {
  enum class Flavor { plain, hat };
  std::array<std::array<Mat, 3>, 3> T;  // T[i][j] is dimq x dimq
  cx u;
  Flavor flavor;

  Mat reassemble() const;  // the 3*dimq square matrix
};

struct OperatorSet {
  // positions in U: A1=U11, B1=U12, B2=U13, C1=U21, A2=U22, B3=U23,
  //                 C2=U31, C3=U32, A3=U33 (1-based)
  Mat A1, A2, A3, B1, B2, B3, C1, C2, C3;
  cx u;
};

struct ShiftedSet {
  Mat D1, D2, D3;
  cx f1, f2, f3, f4;
};

// I_{3^k} (x) op (x) I_{3^(L-1-k)} acting on site k (0-based) of (C^3)^L.
Mat embed_site(const Mat &op, int site, int length);

// (1,0,0)^(x)L, the pseudovacuum.
Vec pseudovacuum(int length);

// T(u) = R_{a1}(u) ... R_{aL}(u); L capped at 4 (dense desk scale).
MonodromyBlocks build_monodromy(const ModelParams &p, cx u);

// T-hat(u) = T(-u)^-1, computed by explicit inversion of the reassembled
// matrix.  (The L = 1 unitarity shortcut exists only as a test oracle.)
MonodromyBlocks build_hat_monodromy(const ModelParams &p, cx u);

OperatorSet build_double_row(const ModelParams &p, cx u);

struct FValues {
  cx f1, f2, f3, f4;
};
// f1 = c(2u), f2 = h~(2u), f3 = c(2u)(h~(2u)-1)/(c(2u)^2-e(2u)),
// f4 = (c(2u)^2 - h~(2u)e(2u))/(c(2u)^2 - e(2u)).
FValues f_functions(const ModelParams &p, cx u);

// D1 = A1, D2 = A2 - f1 A1, D3 = A3 - f2 A1 - f3 D2.
ShiftedSet shifted_operators(const OperatorSet &ops, const ModelParams &p,
                             cx u);

struct OmegaValues {
  cx w1, w2, w3;
};
// w1 = k11+ + f1 k22+ + f2 k33+, w2 = k22+ + f3 k33+, w3 = k33+.
OmegaValues omega_weights(const ModelParams &p, cx u);

struct TransferParts {
  Mat t;    // trace route: sum_ij K+_ij U_ji
  Mat t_d;  // w1 D1 + w2 D2 + w3 D3
  Mat t_u;  // k12+ C1 + k13+ C2 + k23+ C3
};
TransferParts transfer_matrix(const ModelParams &p, cx u);

// Residual of Rcheck(u-v) T1(u) T2(v) = T1(v) T2(u) Rcheck(u-v) with
// Rcheck = P R, on aux(x)aux(x)quantum; L capped at 2.
double check_global1(const ModelParams &p, cx u, cx v);

// Residual of the boundary algebra for U on aux(x)aux(x)quantum:
// R12(u-v) U1(u) R21(u+v) U2(v) = U2(v) R12(u+v) U1(u) R21(u-v); L <= 2.
double check_global2(const ModelParams &p, cx u, cx v);

}  // namespace bethe19
