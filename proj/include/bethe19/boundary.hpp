#pragma once

// Upper-triangular boundary matrices K-(u), K+(u) for both models and the
// two reflection-equation checks on the 3(x)3 double-auxiliary space.

#include "bethe19/weights.hpp"

namespace bethe19 {

struct KMatrix {
  enum class Side { minus, plus };
  Side side;
  Mat matrix;  // 3x3
  ModelParams params_snapshot;
};

// Entries are entire functions; no pole guard needed.
KMatrix build_k_minus(const ModelParams &p, cx u);

// K+(u) = K-(-u-rho) M with (xi_minus, beta_minus) -> (xi_plus, beta_plus)
// substituted before evaluation; M, rho from crossing_data.  The optional
// kplus_perturbation hook is applied additively at the end.
KMatrix build_k_plus(const ModelParams &p, cx u);

// Relative Frobenius residual of
//   R12(u-v) K1-(u) R21(u+v) K2-(v) = K2-(v) R12(u+v) K1-(u) R21(u-v)
double check_reflection_left(const ModelParams &p, cx u, cx v);

// Relative Frobenius residual of
//   R12(v-u) K1+t1(u) M1^-1 R21(-u-v-2rho) M1 K2+t2(v)
//     = K2+t2(v) M1 R12(-u-v-2rho) M1^-1 K1+t1(u) R21(v-u)
double check_reflection_right(const ModelParams &p, cx u, cx v);

}  // namespace bethe19
