#include "bethe19/verify.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "bethe19/boundary.hpp"
#include "bethe19/double_row.hpp"

namespace bethe19 {

namespace {

double u01(std::mt19937_64 &g) { return double(g() >> 11) * 0x1.0p-53; }

cx rand_cx(std::mt19937_64 &g) {
  return cx(2.0 * u01(g) - 1.0, 2.0 * u01(g) - 1.0);
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

std::string fmt(cx z) {
  std::ostringstream os;
  os.precision(9);
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

// u samples for spectra checks, kept away from the rapidities and from the
// weight poles of the model at hand
std::vector<cx> usable_samples(const ModelParams &p,
                               const std::vector<cx> &samples,
                               const std::vector<cx> &rapidities) {
  std::vector<cx> keep;
  for (cx u : samples) {
    bool ok = true;
    for (cx r : rapidities)
      if (std::abs(u - r) < 0.1) ok = false;
    if (!ok) continue;
    try {
      eval_weights(p, u);
      eval_weights(p, 2.0 * u);
    } catch (const PoleProximityError &) {
      continue;
    }
    keep.push_back(u);
  }
  return keep;
}

}  // namespace

CheckReport check_vacuum(const ModelParams &p,
                         const std::vector<cx> &u_samples, double tol) {
  Timer timer;
  CheckReport rep;
  rep.name = "vacuum";
  rep.tolerance = tol;
  const Vec psi0 = pseudovacuum(p.length);
  double worst = 0.0;
  int used = 0;
  for (cx u : usable_samples(p, u_samples, {})) {
    TransferParts tp = transfer_matrix(p, u);
    const cx lam0 = lambda_eigenvalue(p, u, {});
    const double r_eig =
        (tp.t * psi0 - lam0 * psi0).norm() / std::max(std::abs(lam0), 1e-300);
    const double r_up =
        (tp.t_u * psi0).norm() / std::max(1.0, tp.t_u.norm());
    worst = std::max({worst, r_eig, r_up});
    ++used;
  }
  rep.max_residual = worst;
  rep.pass = used > 0 && worst < tol;
  rep.details = "L=" + std::to_string(p.length) + " samples=" +
                std::to_string(used);
  rep.wall_seconds = timer.elapsed();
  return rep;
}

CheckReport check_eigenstate(const ModelParams &p,
                             const std::vector<cx> &rapidities,
                             const std::vector<cx> &u_samples, double tol) {
  Timer timer;
  CheckReport rep;
  rep.name = "eigenstate n=" + std::to_string(rapidities.size());
  rep.tolerance = tol;
  Vec phi;
  try {
    phi = rapidities.empty() ? pseudovacuum(p.length)
                             : build_phi(p, rapidities).vector;
  } catch (const ZeroStateError &) {
    rep.details = "zero-norm state (flagged)";
    rep.max_residual = std::numeric_limits<double>::infinity();
    rep.wall_seconds = timer.elapsed();
    return rep;
  } catch (const std::exception &e) {
    rep.details = std::string("state construction failed: ") + e.what();
    rep.max_residual = std::numeric_limits<double>::infinity();
    rep.wall_seconds = timer.elapsed();
    return rep;
  }
  const double nrm = phi.norm();
  if (!(nrm > 0.0) || !phi.allFinite()) {
    rep.details = "zero-norm state (flagged)";
    rep.max_residual = std::numeric_limits<double>::infinity();
    rep.wall_seconds = timer.elapsed();
    return rep;
  }
  phi /= nrm;
  double worst = 0.0;
  int used = 0;
  for (cx u : usable_samples(p, u_samples, rapidities)) {
    TransferParts tp = transfer_matrix(p, u);
    const cx lam = lambda_eigenvalue(p, u, rapidities);
    const double resid = (tp.t * phi - lam * phi).norm();
    const cx rayleigh = phi.dot(tp.t * phi);  // phi is unit norm
    const double rq = std::abs(rayleigh - lam) / std::max(std::abs(lam), 1e-300);
    worst = std::max({worst, resid, rq});
    ++used;
  }
  rep.max_residual = worst;
  rep.pass = used > 0 && worst < tol;
  rep.details = "samples=" + std::to_string(used);
  rep.wall_seconds = timer.elapsed();
  return rep;
}

CheckReport check_commuting_family(const ModelParams &p, int npairs,
                                   double tol, std::uint64_t seed) {
  Timer timer;
  CheckReport rep;
  rep.name = "commuting family";
  rep.tolerance = tol;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  int done = 0, attempts = 0;
  while (done < npairs && attempts < 40 * npairs) {
    ++attempts;
    const cx u(1.2 * (2.0 * u01(rng) - 1.0), 0.8 * (2.0 * u01(rng) - 1.0));
    const cx v(1.2 * (2.0 * u01(rng) - 1.0), 0.8 * (2.0 * u01(rng) - 1.0));
    try {
      const Mat tu = transfer_matrix(p, u).t;
      const Mat tv = transfer_matrix(p, v).t;
      const double denom = std::max(tu.norm() * tv.norm(), 1e-300);
      worst = std::max(worst, (tu * tv - tv * tu).norm() / denom);
      ++done;
    } catch (const std::exception &) {
      continue;  // resample away from a pole
    }
  }
  rep.max_residual = worst;
  rep.pass = done == npairs && worst < tol;
  rep.details = "L=" + std::to_string(p.length) + " pairs=" +
                std::to_string(done);
  rep.wall_seconds = timer.elapsed();
  return rep;
}

CheckReport fit_g(const ModelParams &p, cx u1,
                  const std::vector<cx> &u_samples, double tol, GFit *out) {
  Timer timer;
  CheckReport rep;
  rep.name = "fit g (n=1 mixing scalar)";
  rep.tolerance = tol;
  const Vec psi0 = pseudovacuum(p.length);
  Vec psi1;
  try {
    psi1 = build_psi(p, {u1}).vector;
  } catch (const std::exception &e) {
    rep.details = std::string("psi construction failed: ") + e.what();
    rep.wall_seconds = timer.elapsed();
    return rep;
  }
  std::vector<cx> fits;
  bool degenerate = false;
  for (cx u : usable_samples(p, u_samples, {u1})) {
    TransferParts tp = transfer_matrix(p, u);
    const cx lam1 = lambda_eigenvalue(p, u, {u1});
    const cx lam0 = lambda_eigenvalue(p, u, {});
    if (std::abs(lam1 - lam0) < 1e-8 * std::max(1.0, std::abs(lam1)))
      degenerate = true;
    const Vec col = tp.t * psi0 - lam1 * psi0;
    const Vec rhs = -(tp.t * psi1 - lam1 * psi1);
    fits.push_back(col.dot(rhs) / col.squaredNorm());
  }
  if (fits.empty()) {
    rep.details = "no usable u samples";
    rep.wall_seconds = timer.elapsed();
    return rep;
  }
  cx mean = 0.0;
  for (cx g : fits) mean += g;
  mean /= double(fits.size());
  double spread = 0.0;
  for (cx g : fits) spread = std::max(spread, std::abs(g - mean));
  const cx closed = g_scalar(p, u1);
  const double dev = std::abs(mean - closed) / std::max(1.0, std::abs(closed));
  if (out) *out = GFit{mean, closed, spread, degenerate};
  rep.max_residual = std::max(dev, spread);
  rep.pass = !degenerate && dev < tol && spread < 1e-8;
  rep.details = "fitted=" + fmt(mean) + " closed=" + fmt(closed) +
                " spread=" + fmt(spread) +
                (degenerate ? " (degenerate spectrum flagged)" : "");
  rep.wall_seconds = timer.elapsed();
  return rep;
}

CheckReport fit_g_coefficients_n2(const ModelParams &p,
                                  const std::vector<cx> &rapidities,
                                  const std::vector<cx> &u_samples,
                                  double tol) {
  Timer timer;
  CheckReport rep;
  rep.name = "fit g coefficients (n=2)";
  rep.tolerance = tol;
  if (rapidities.size() != 2) {
    rep.details = "needs exactly two rapidities";
    rep.wall_seconds = timer.elapsed();
    return rep;
  }
  const cx u1 = rapidities[0], u2 = rapidities[1];
  Vec psi2, psi1_of_u2, psi1_of_u1;
  const Vec psi0 = pseudovacuum(p.length);
  try {
    psi2 = build_psi(p, rapidities).vector;
    psi1_of_u2 = build_psi(p, {u2}).vector;
    psi1_of_u1 = build_psi(p, {u1}).vector;
  } catch (const std::exception &e) {
    rep.details = std::string("psi construction failed: ") + e.what();
    rep.wall_seconds = timer.elapsed();
    return rep;
  }
  const auto samples = usable_samples(p, u_samples, rapidities);
  if (samples.empty()) {
    rep.details = "no usable u samples";
    rep.wall_seconds = timer.elapsed();
    return rep;
  }
  const Eigen::Index dim = psi0.size();
  Mat design(dim * samples.size(), 3);
  Vec rhs(dim * samples.size());
  for (size_t s = 0; s < samples.size(); ++s) {
    const cx u = samples[s];
    TransferParts tp = transfer_matrix(p, u);
    const cx lam2 = lambda_eigenvalue(p, u, rapidities);
    auto apply = [&](const Vec &v) -> Vec { return tp.t * v - lam2 * v; };
    design.block(dim * s, 0, dim, 1) = apply(psi1_of_u2);
    design.block(dim * s, 1, dim, 1) = apply(psi1_of_u1);
    design.block(dim * s, 2, dim, 1) = apply(psi0);
    rhs.segment(dim * s, dim) = -apply(psi2);
  }
  Vec fitted;
  double cond = 0.0;
  try {
    LstsqResult ls = lstsq(design, rhs);
    fitted = ls.x;
    cond = ls.condition;
  } catch (const RankDeficientError &) {
    rep.details = "design matrix rank-deficient (flagged)";
    rep.max_residual = std::numeric_limits<double>::infinity();
    rep.wall_seconds = timer.elapsed();
    return rep;
  }
  const cx g1 = g_coefficient(p, {0}, rapidities);
  const cx g2 = g_coefficient(p, {1}, rapidities);
  const cx g12 = g_coefficient(p, {0, 1}, rapidities);
  const cx closed[3] = {g1, g2, g12};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    worst = std::max(worst, std::abs(fitted(i) - closed[i]) /
                                std::max(1.0, std::abs(closed[i])));
  rep.max_residual = worst;
  rep.pass = worst < tol;
  rep.details = "g1=" + fmt(fitted(0)) + " g2=" + fmt(fitted(1)) +
                " g12=" + fmt(fitted(2)) + " cond=" + fmt(cond);
  rep.wall_seconds = timer.elapsed();
  return rep;
}

CheckReport fit_exchange_coefficients(const ModelParams &p,
                                      ExchangeRelation rel, cx u, cx v,
                                      double tol, std::uint64_t seed) {
  Timer timer;
  CheckReport rep;
  rep.tolerance = tol;
  OperatorSet ou, ov;
  ShiftedSet du, dv;
  try {
    ou = build_double_row(p, u);
    ov = build_double_row(p, v);
    du = shifted_operators(ou, p, u);
    dv = shifted_operators(ov, p, v);
  } catch (const std::exception &e) {
    rep.name = "exchange fit";
    rep.details = std::string("operator construction failed: ") + e.what();
    rep.wall_seconds = timer.elapsed();
    return rep;
  }
  // term lists: lhs product and the candidate products on the right
  struct Term {
    const Mat *left, *right;
  };
  Mat lhs_op;
  std::vector<Term> terms;
  // known closed forms, by index into `terms`
  std::vector<std::pair<int, cx>> asserted;
  switch (rel) {
    case ExchangeRelation::B1B1:
      rep.name = "exchange fit B1B1";
      lhs_op = ou.B1 * ov.B1;
      terms = {{&ov.B1, &ou.B1},
               {&ov.B2, &du.D2},
               {&ov.B2, &du.D1},
               {&ou.B2, &dv.D1},
               {&ou.B2, &dv.D2}};
      asserted = {{0, amplitude(p, AmplitudeName::e01, u, v)},
                  {3, amplitude(p, AmplitudeName::e04, u, v)},
                  {4, amplitude(p, AmplitudeName::e05, u, v)}};
      break;
    case ExchangeRelation::D1B1:
      rep.name = "exchange fit D1B1";
      lhs_op = du.D1 * ov.B1;
      terms = {{&ov.B1, &du.D1}, {&ou.B1, &dv.D1}, {&ou.B1, &dv.D2},
               {&ou.B2, &ov.C1}, {&ou.B2, &ov.C3}, {&ov.B2, &ou.C1}};
      asserted = {{0, amplitude(p, AmplitudeName::a11, u, v)}};
      break;
    case ExchangeRelation::D2B1:
      rep.name = "exchange fit D2B1";
      lhs_op = du.D2 * ov.B1;
      terms = {{&ov.B1, &du.D2}, {&ou.B1, &dv.D1}, {&ou.B1, &dv.D2},
               {&ou.B3, &dv.D1}, {&ou.B3, &dv.D2}, {&ou.B2, &ov.C1},
               {&ou.B2, &ov.C3}, {&ov.B2, &ou.C1}, {&ov.B2, &ou.C3},
               {&ov.B1, &du.D1}};
      asserted = {{0, amplitude(p, AmplitudeName::a21, u, v)}};
      break;
    case ExchangeRelation::D3B1:
      rep.name = "exchange fit D3B1";
      lhs_op = du.D3 * ov.B1;
      terms = {{&ov.B1, &du.D3}, {&ou.B1, &dv.D1}, {&ou.B1, &dv.D2},
               {&ou.B3, &dv.D1}, {&ou.B3, &dv.D2}, {&ou.B2, &ov.C1},
               {&ou.B2, &ov.C3}, {&ov.B2, &ou.C1}, {&ov.B2, &ou.C3},
               {&ov.B1, &du.D1}, {&ov.B1, &du.D2}};
      asserted = {{0, amplitude(p, AmplitudeName::a31, u, v)}};
      break;
  }
  const int ncoeff = static_cast<int>(terms.size());
  const int nprobe = 3 * ncoeff;
  const Eigen::Index dim = lhs_op.rows();
  std::mt19937_64 rng(seed);
  Mat design(dim * nprobe, ncoeff);
  Vec rhs(dim * nprobe);
  for (int s = 0; s < nprobe; ++s) {
    Vec w(dim);
    for (Eigen::Index i = 0; i < dim; ++i) w(i) = rand_cx(rng);
    rhs.segment(dim * s, dim) = lhs_op * w;
    for (int t = 0; t < ncoeff; ++t)
      design.block(dim * s, t, dim, 1) =
          (*terms[t].left) * ((*terms[t].right) * w);
  }
  Vec fitted;
  double cond = 0.0, fit_resid = 0.0;
  try {
    LstsqResult ls = lstsq(design, rhs);
    fitted = ls.x;
    cond = ls.condition;
    fit_resid = ls.residual_norm / std::max(rhs.norm(), 1e-300);
  } catch (const RankDeficientError &) {
    rep.details = "collinear term set (flagged)";
    rep.max_residual = std::numeric_limits<double>::infinity();
    rep.wall_seconds = timer.elapsed();
    return rep;
  }
  double worst = fit_resid;  // the relation itself must close
  std::ostringstream notes;
  for (auto [idx, closed] : asserted) {
    const double dev =
        std::abs(fitted(idx) - closed) / std::max(1.0, std::abs(closed));
    worst = std::max(worst, dev);
    notes << "c" << idx << "=" << fmt(fitted(idx)) << " ";
  }
  rep.max_residual = worst;
  rep.pass = worst < tol;
  rep.details = notes.str() + "cond=" + fmt(cond) + " terms=" +
                std::to_string(ncoeff);
  rep.wall_seconds = timer.elapsed();
  return rep;
}

std::vector<CheckReport> full_suite(const ModelParams &p,
                                    const RootSearchConfig &cfg, int max_n,
                                    const std::string &stop_after) {
  std::vector<CheckReport> out;
  auto done = [&] {
    return !stop_after.empty() && out.back().name.rfind(stop_after, 0) == 0;
  };
  const std::vector<cx> samples = {cx(0.31, -0.12), cx(-0.27, 0.41),
                                   cx(0.63, 0.29), cx(0.11, 0.57),
                                   cx(-0.73, 0.21)};

  {  // stage: local algebra
    Timer timer;
    CheckReport rep;
    rep.name = "algebra";
    rep.tolerance = 1e-10;
    std::mt19937_64 rng(5);
    double worst = 0.0;
    for (int k = 0; k < 8; ++k) {
      const cx a(1.1 * (2.0 * u01(rng) - 1.0), 0.7 * (2.0 * u01(rng) - 1.0));
      const cx b(1.1 * (2.0 * u01(rng) - 1.0), 0.7 * (2.0 * u01(rng) - 1.0));
      try {
        worst = std::max({worst, check_ybe(p, a, b), check_unitarity(p, a),
                          check_pt(p, a), check_crossing(p, a).residual,
                          check_r_mm_commutator(p, a),
                          check_reflection_left(p, a, b),
                          check_reflection_right(p, a, b)});
      } catch (const PoleProximityError &) {
        continue;
      }
    }
    rep.max_residual = worst;
    rep.pass = worst < rep.tolerance;
    rep.wall_seconds = timer.elapsed();
    out.push_back(rep);
  }
  const bool algebra_ok = out.back().pass;
  if (done()) return out;

  {  // stage: global relations on short chains
    Timer timer;
    CheckReport rep;
    rep.name = "global relations";
    rep.tolerance = 1e-9;
    if (!algebra_ok) {
      rep.details = "skipped (algebra failed)";
    } else {
      ModelParams q = p;
      q.length = std::min(p.length, 2);
      double worst = std::max(check_global1(q, cx(0.23, 0.11), cx(-0.31, 0.17)),
                              check_global1(q, cx(0.41, -0.19), cx(0.12, 0.33)));
      ModelParams q1 = p;
      q1.length = 1;
      worst = std::max(worst,
                       check_global2(q1, cx(0.23, 0.11), cx(-0.31, 0.17)));
      rep.max_residual = worst;
      rep.pass = worst < rep.tolerance;
    }
    rep.wall_seconds = timer.elapsed();
    out.push_back(rep);
  }
  if (done()) return out;

  {  // stage: vacuum
    CheckReport rep;
    if (!algebra_ok) {
      rep.name = "vacuum";
      rep.tolerance = 1e-10;
      rep.details = "skipped (algebra failed)";
    } else {
      rep = check_vacuum(p, samples);
    }
    out.push_back(rep);
  }
  const bool vacuum_ok = out.back().pass;
  if (done()) return out;

  {  // stage: commuting family
    CheckReport rep;
    if (!algebra_ok) {
      rep.name = "commuting family";
      rep.tolerance = 1e-9;
      rep.details = "skipped (algebra failed)";
    } else {
      rep = check_commuting_family(p);
    }
    out.push_back(rep);
  }
  const bool commuting_ok = out.back().pass;
  if (done()) return out;

  std::vector<RootSet> roots1, roots2;
  {  // stage: eigenstates from Bethe roots
    Timer timer;
    CheckReport rep;
    rep.name = "eigenstates";
    rep.tolerance = 1e-8;
    if (!vacuum_ok || !commuting_ok) {
      rep.details = "skipped (vacuum or commuting family failed)";
    } else {
      double worst = 0.0;
      int checked = 0;
      roots1 = multi_start(p, 1, cfg);
      std::vector<const std::vector<RootSet> *> levels = {&roots1};
      if (max_n >= 2) {
        roots2 = multi_start(p, 2, cfg);
        levels.push_back(&roots2);
      }
      std::vector<RootSet> roots3;
      if (max_n >= 3) {
        roots3 = multi_start(p, 3, cfg);
        levels.push_back(&roots3);
      }
      bool all_pass = true;
      for (const auto *lvl : levels)
        for (const RootSet &rs : *lvl) {
          CheckReport er = check_eigenstate(p, rs.rapidities, samples);
          worst = std::max(worst, er.max_residual);
          all_pass = all_pass && er.pass;
          ++checked;
        }
      rep.max_residual = worst;
      rep.pass = all_pass && !roots1.empty();
      rep.details = "sets: n1=" + std::to_string(roots1.size()) + " n2=" +
                    std::to_string(roots2.size()) + " checked=" +
                    std::to_string(checked);
    }
    rep.wall_seconds = timer.elapsed();
    out.push_back(rep);
  }
  const bool eigen_ok = out.back().pass;
  if (done()) return out;

  {  // stage: coefficient recovery
    Timer timer;
    CheckReport rep;
    rep.name = "coefficients";
    rep.tolerance = 1e-7;
    if (!eigen_ok) {
      rep.details = "skipped (eigenstates failed)";
    } else {
      double worst = 0.0;
      bool all_pass = true;
      CheckReport g1 = fit_g(p, roots1.front().rapidities[0], samples);
      worst = std::max(worst, g1.max_residual);
      all_pass = all_pass && g1.pass;
      if (!roots2.empty()) {
        CheckReport g2 =
            fit_g_coefficients_n2(p, roots2.front().rapidities, samples);
        worst = std::max(worst, g2.max_residual);
        all_pass = all_pass && g2.pass;
      }
      for (ExchangeRelation rel :
           {ExchangeRelation::B1B1, ExchangeRelation::D1B1,
            ExchangeRelation::D2B1, ExchangeRelation::D3B1}) {
        CheckReport ex =
            fit_exchange_coefficients(p, rel, cx(0.31, -0.12), cx(-0.27, 0.41));
        worst = std::max(worst, ex.max_residual);
        all_pass = all_pass && ex.pass;
      }
      rep.max_residual = worst;
      rep.pass = all_pass;
    }
    rep.wall_seconds = timer.elapsed();
    out.push_back(rep);
  }

  return out;
}

bool suite_passed(const std::vector<CheckReport> &reports) {
  for (const CheckReport &r : reports)
    if (!r.pass) return false;
  return true;
}

}  // namespace bethe19
