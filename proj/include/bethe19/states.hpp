#pragma once

// Bethe-ansatz scalar functions (Delta, Theta, amplitudes, Omega, g, s,
// Gamma, g-coefficients, Lambda_n) and the state constructions:
// Psi_n by the Tarasov-like recurrence and Phi_n as the superposition
// Phi_n = Psi_n + sum_k sum_{removed sets} g^{(k)} Psi_k.

#include "bethe19/double_row.hpp"

#include <vector>

namespace bethe19 {

struct CoincidentRapiditiesError : std::runtime_error {
  CoincidentRapiditiesError(cx a, cx b)
      : std::runtime_error("rapidities too close: (" +
                           std::to_string(a.real()) + "," +
                           std::to_string(a.imag()) + ") vs (" +
                           std::to_string(b.real()) + "," +
                           std::to_string(b.imag()) + ")") {}
};

struct ZeroStateError : std::runtime_error {
  explicit ZeroStateError(const std::string &msg) : std::runtime_error(msg) {}
};

struct BetheState {
  enum class Kind { psi, phi };
  Vec vector;
  std::vector<cx> rapidities;
  Kind kind;
  ModelParams params_snapshot;
};

enum class AmplitudeName { a11, a21, a31, e01, e04, e05 };

// Delta_1 = k11-, Delta_2 = (k22- - f1 k11-) b^{2L},
// Delta_3 = (k33- - f4 k11- - f3 k22-) f^{2L}.
struct DeltaValues {
  cx d1, d2, d3;
};
DeltaValues delta_functions(const ModelParams &p, cx u);

cx amplitude(const ModelParams &p, AmplitudeName name, cx u, cx v);

// Omega(u,v) = 1/e01(u,v)
cx omega(const ModelParams &p, cx u, cx v);

// Memoized scalars over one rapidity list; pairwise entries indexed by the
// positions in the list (diagonal unused).
struct ScalarTable {
  std::vector<cx> rapidities;
  std::vector<cx> delta1, delta2, delta3, theta, g;
  Mat a11, a21, a31, e01, e04, e05, omega_pair, s_pair;
  static ScalarTable build(const ModelParams &p, const std::vector<cx> &us);
};

// Gamma_i^{(n)} for 1-based i in [2, n]:
//   prod_{j=2, j<i} Omega(u_i, u_j) *
//   { Delta1(u_i) e04(u_1,u_i) prod_{k=2,k!=i} a11(u_i,u_k)
//   + Delta2(u_i) e05(u_1,u_i) prod_{k=2,k!=i} a21(u_i,u_k) }
cx gamma_coefficient(const ModelParams &p, int i,
                     const std::vector<cx> &rapidities,
                     const ScalarTable &table);

// Psi_0 = pseudovacuum; Psi_1 = B1(u1) Psi_0;
// Psi_n = B1(u1) Psi_{n-1}(u2..un)
//         - B2(u1) sum_{i=2}^n Gamma_i^{(n)} Psi_{n-2}(.. u_i removed ..).
// Refuses rapidity pairs closer than min_separation.
BetheState build_psi(const ModelParams &p, const std::vector<cx> &rapidities,
                     double min_separation = 1e-4);

cx g_scalar(const ModelParams &p, cx u);
cx s_function(const ModelParams &p, cx u1, cx u2);

// g^{(k)}_{removed} = prod_{m in removed} [ g(u_m)
//   prod_{m' in removed, m'<m} s(u_{m'}, u_m)
//   prod_{m'' not in removed} a21(u_m, u_{m''}) *
//       (Omega(u_m, u_{m''}) if m > m'' else 1) ]
// removed holds 0-based indices into rapidities.
cx g_coefficient(const ModelParams &p, const std::vector<int> &removed,
                 const std::vector<cx> &rapidities);

// Phi_n = Psi_n + sum over nonempty removed subsets (lexicographic order)
// of g^{(k)}_{removed} Psi_k(kept rapidities).
BetheState build_phi(const ModelParams &p, const std::vector<cx> &rapidities,
                     double min_separation = 1e-4);

// Lambda_n(u) = sum_alpha w_alpha(u) Delta_alpha(u)
//               prod_j a_{alpha 1}(u, u_j).
cx lambda_eigenvalue(const ModelParams &p, cx u,
                     const std::vector<cx> &rapidities);

cx theta_function(const ModelParams &p, cx u);

// Delta1(u_j)/Delta2(u_j) + Theta(u_j) prod_{k!=j} a21(u_j,u_k)/a11(u_j,u_k);
// zero iff u_j satisfies its Bethe equation.  j is 0-based.
cx bethe_residual(const ModelParams &p, const std::vector<cx> &rapidities,
                  int j);

// Principal-branch log form of the same equation, offered for solver
// conditioning experiments only; the quotient form above defines "solved".
cx bethe_residual_log(const ModelParams &p, const std::vector<cx> &rapidities,
                      int j);

}  // namespace bethe19
