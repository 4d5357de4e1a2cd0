#pragma once

// The two 19-vertex models: Boltzmann weights, 9x9 R-matrix assembly,
// crossing data (M, rho) and the R-matrix property checks (Yang-Baxter,
// unitarity, PT, crossing-unitarity, [R, MxM]).

#include "bethe19/numerics.hpp"

#include <optional>
#include <string>

namespace bethe19 {

enum class ModelKind { ZF, IK };

const char *kind_name(ModelKind k);

// Hooks used only by the sensitivity (negative-control) checks: an additive
// perturbation of one K+ entry, or of one Boltzmann weight.  Empty in any
// physical run.
struct EntryPerturbation {
  int row = 0;
  int col = 0;
  cx delta{0.0, 0.0};
};
struct WeightPerturbation {
  char which = 'c';  // one of a b c d t(=d~) e f h g(=h~)
  cx delta{0.0, 0.0};
};

struct ModelParams {
  ModelKind kind = ModelKind::ZF;
  cx eta{0.43, 0.17};          // anisotropy
  cx xi_minus{0.37, -0.21};    // boundary constants (ZF; ignored for IK)
  cx xi_plus{-0.24, 0.31};
  cx beta_minus{0.55, 0.13};   // off-diagonal boundary strengths
  cx beta_plus{0.41, -0.27};
  int epsilon = +1;            // IK sign (ignored for ZF)
  int length = 1;              // number of sites L

  std::optional<EntryPerturbation> kplus_perturbation;
  std::optional<WeightPerturbation> weight_perturbation;

  // eta must stay away from {0, i pi/2, i pi}; L >= 1; epsilon = +-1
  void validate(double exclusion = 1e-6) const;
};

// The nine weights at one spectral point; a == 1 in both models.
struct WeightVector {
  cx a, b, c, d, d_tilde, e, f, h, h_tilde;
};

// Crossing matrix M and shift rho, normalized so that the displayed
// identities hold verbatim: crossing-unitarity at argument -u-2*rho and
// K+(u) = K-(-u-rho) M.  (ZF: M = I, rho = eta/2; IK: M = diag(e^{-2eta},
// 1, e^{2eta}), rho = 3*eta/2.)
struct CrossingData {
  Mat m_matrix;                 // 3x3 diagonal
  cx rho;
  std::optional<cx> zeta_probe; // scalar of crossing-unitarity, recovered
                                // numerically when check_crossing runs
};

struct PoleProximityError : std::runtime_error {
  std::string denominator;  // e.g. "sinh(u+eta)"
  PoleProximityError(const std::string &den, cx u)
      : std::runtime_error("evaluation within exclusion radius of a zero of " +
                           den + " at u = (" + std::to_string(u.real()) + "," +
                           std::to_string(u.imag()) + ")"),
        denominator(den) {}
};

// Distance of z to the zero set of sinh (i.e. {i k pi}) resp. cosh.
double dist_to_sinh_zero(cx z);
double dist_to_cosh_zero(cx z);

WeightVector eval_weights(const ModelParams &p, cx u, double exclusion = 1e-6);

// 9x9 R acting on aux (x) site, row-major composite index 3i+k.
Mat build_r_matrix(const ModelParams &p, cx u);

CrossingData crossing_data(const ModelParams &p);

// 9x9 permutation P of 3(x)3 and R21 = P R12 P.
Mat permutation_matrix();
Mat r21_matrix(const ModelParams &p, cx u);

// Partial transposes on the first/second factor of a 3(x)3 operator:
//   t1: Y[3a+b, 3c+d] = X[3c+b, 3a+d]
//   t2: Y[3a+b, 3c+d] = X[3a+d, 3c+b]
Mat partial_transpose_1(const Mat &x);
Mat partial_transpose_2(const Mat &x);

// Relative Frobenius residuals of the R-matrix identities.
double check_ybe(const ModelParams &p, cx u, cx v);
double check_unitarity(const ModelParams &p, cx u);
double check_pt(const ModelParams &p, cx u);

struct CrossingCheck {
  double residual;
  cx zeta;
};
CrossingCheck check_crossing(const ModelParams &p, cx u);

// ||[R(u), MxM]|| / ||R(u)||
double check_r_mm_commutator(const ModelParams &p, cx u);

}  // namespace bethe19
