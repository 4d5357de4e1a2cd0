#pragma once

// Numerical solution of the Bethe system for n = 1, 2, 3: seeded grid scan
// plus damped complex Newton with numerical Jacobian.  The solver reports
// found roots only; no completeness claim is made or implied.

#include "bethe19/states.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bethe19 {

struct RootSearchConfig {
  double re_min = -1.0, re_max = 1.0;
  double im_min = -1.0, im_max = 1.0;
  double step = 0.1;              // grid spacing for the n = 1 scan
  double newton_tol = 1e-12;      // residual target
  int max_iter = 60;
  double damping = 1.0;           // initial Newton step factor
  double dedup_radius = 1e-6;
  double exclusion_radius = 1e-5; // berth around structural zero/pole loci
  double kinematic_radius = 1e-2; // wider berth around the weight poles
                                  // (Delta_2 ~ b^{2L} amplifies them)
  double min_separation = 1e-4;   // pairwise rapidity separation
  std::uint64_t seed = 1;
};

struct RootSet {
  std::vector<cx> rapidities;          // canonically sorted
  std::vector<double> residuals;       // per-equation |bethe_residual|
  bool converged = false;
  int iterations = 0;
  double jacobian_condition = 0.0;     // pivot-ratio estimate, final Newton step
  std::vector<std::string> flags;      // diagnostics (guard hits, reflection
                                       // images, abort reasons)
  double max_residual() const;
};

// True when u sits on a guard locus: zeros of sinh(2u) or sinh(2u+eta)
// (structural zeros/poles of the Bethe equation), Theta's boundary-constant
// pole, or -- with the wider kinematic_radius -- the weight-pole loci that
// the Delta functions amplify.  All distances taken mod i pi.
bool on_guard_locus(const ModelParams &p, cx u, const RootSearchConfig &cfg);

// Pairwise guards inside one candidate set: coincidence mod i pi, and the
// a11/a21 pole locus u_j + u_k = -eta (mod i pi).  Root tuples sitting on
// the latter solve the Bethe system but lie on an amplitude pole where the
// eigenstate construction is invalid; they are excluded as spurious.
bool pair_on_guard_locus(const ModelParams &p, cx a, cx b,
                         const RootSearchConfig &cfg);

// Grid scan of |F| over the configured rectangle, Newton from every local
// minimum cell, guard filtering, dedup.  u = 0 is never returned.
std::vector<RootSet> scan_n1(const ModelParams &p,
                             const RootSearchConfig &cfg);

// Damped Newton in C^n from one guess.  Non-convergence (iteration cap,
// singular Jacobian, rapidity collision mid-iteration, guard hit) is
// reported via converged = false plus a diagnostic flag.
RootSet solve_system(const ModelParams &p, int n,
                     const std::vector<cx> &initial_guess,
                     const RootSearchConfig &cfg);

// Deterministic lattice seeds plus perturbed combinations of lower-n roots;
// returns deduplicated converged sets in canonical order.  Reflection-map
// (u -> -u-eta) duplicates between sets are flagged, not deleted.
std::vector<RootSet> multi_start(const ModelParams &p, int n,
                                 const RootSearchConfig &cfg);

}  // namespace bethe19
