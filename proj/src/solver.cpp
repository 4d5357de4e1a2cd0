#include "bethe19/solver.hpp"

#include <algorithm>
#include <random>

namespace bethe19 {

namespace {

constexpr double pi = 3.14159265358979323846;

double u01(std::mt19937_64 &g) { return double(g() >> 11) * 0x1.0p-53; }

// all scalar closed forms are i*pi periodic in each rapidity
cx strip_reduce(cx u) {
  return u - cx(0.0, std::round(u.imag() / pi) * pi);
}

bool canon_less(cx a, cx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

Vec residual_vector(const ModelParams &p, const std::vector<cx> &us) {
  Vec F(us.size());
  for (size_t j = 0; j < us.size(); ++j)
    F(j) = bethe_residual(p, us, static_cast<int>(j));
  return F;
}

bool in_window(cx u, const RootSearchConfig &cfg) {
  const double m = 0.25;  // margin beyond the search rectangle
  return u.real() >= cfg.re_min - m && u.real() <= cfg.re_max + m &&
         u.imag() >= cfg.im_min - m && u.imag() <= cfg.im_max + m;
}

bool same_multiset(const std::vector<cx> &a, const std::vector<cx> &b,
                   double radius) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > radius) return false;
  return true;
}

}  // namespace

double RootSet::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

bool on_guard_locus(const ModelParams &p, cx u, const RootSearchConfig &cfg) {
  // sinh(2u) = 0 (Theta pole, u = 0 included) and sinh(2u+eta) = 0
  if (dist_to_sinh_zero(2.0 * u) / 2.0 < cfg.exclusion_radius) return true;
  if (dist_to_sinh_zero(2.0 * u + p.eta) / 2.0 < cfg.exclusion_radius)
    return true;
  // Theta's boundary-constant pole
  if (p.kind == ModelKind::ZF) {
    if (dist_to_sinh_zero(u + p.eta / 2.0 - p.xi_plus) < cfg.exclusion_radius)
      return true;
  } else {
    if (dist_to_sinh_zero(u + 0.75 * p.eta -
                          cx(0.0, p.epsilon * pi / 4.0)) <
        cfg.exclusion_radius)
      return true;
  }
  // weight poles, amplified by the b^{2L}/f^{2L} powers in Delta_2/Delta_3:
  // keep a wider berth
  if (dist_to_sinh_zero(u + p.eta) < cfg.kinematic_radius) return true;
  if (p.kind == ModelKind::ZF) {
    if (dist_to_sinh_zero(u + p.eta / 2.0) < cfg.kinematic_radius)
      return true;
  } else {
    if (dist_to_cosh_zero(u + 1.5 * p.eta) < cfg.kinematic_radius)
      return true;
  }
  return false;
}

bool pair_on_guard_locus(const ModelParams &p, cx a, cx b,
                         const RootSearchConfig &cfg) {
  const double sep = std::max(cfg.min_separation, cfg.exclusion_radius);
  if (dist_to_sinh_zero(a - b) < sep) return true;          // coincidence
  if (dist_to_sinh_zero(a + b + p.eta) < sep) return true;  // a11/a21 pole
  return false;
}

RootSet solve_system(const ModelParams &p, int n,
                     const std::vector<cx> &guess,
                     const RootSearchConfig &cfg) {
  RootSet out;
  out.rapidities = guess;
  if (static_cast<int>(guess.size()) != n) {
    out.flags.push_back("guess size mismatch");
    return out;
  }
  std::vector<cx> us = guess;
  double fmax = 0.0;
  Vec F;
  auto eval = [&](const std::vector<cx> &pt, Vec &res) {
    try {
      res = residual_vector(p, pt);
    } catch (const std::exception &e) {
      return false;
    }
    return res.allFinite();
  };
  if (!eval(us, F)) {
    out.flags.push_back("residual evaluation failed at guess");
    return out;
  }
  fmax = F.cwiseAbs().maxCoeff();
  int it = 0;
  for (; it < cfg.max_iter && fmax >= cfg.newton_tol; ++it) {
    // numerical Jacobian, central differences
    Mat J(n, n);
    bool jac_ok = true;
    for (int k = 0; k < n && jac_ok; ++k) {
      const double h = 1e-7 * (std::abs(us[k]) + 1.0);
      std::vector<cx> up = us, um = us;
      up[k] += h;
      um[k] -= h;
      Vec Fp, Fm;
      jac_ok = eval(up, Fp) && eval(um, Fm);
      if (jac_ok) J.col(k) = (Fp - Fm) / (2.0 * h);
    }
    if (!jac_ok) {
      out.flags.push_back("jacobian evaluation failed");
      break;
    }
    Eigen::PartialPivLU<Mat> lu(J);
    const auto diag = lu.matrixLU().diagonal();
    const double pmin = diag.cwiseAbs().minCoeff();
    const double pmax = diag.cwiseAbs().maxCoeff();
    out.jacobian_condition = pmax / std::max(pmin, 1e-300);
    if (!(pmin > 1e-14 * pmax)) {
      out.flags.push_back("jacobian singular to tolerance");
      break;
    }
    const Vec du = lu.solve(F);
    double lam = cfg.damping;
    bool accepted = false;
    for (int half = 0; half <= 8; ++half, lam /= 2.0) {
      std::vector<cx> trial = us;
      for (int k = 0; k < n; ++k) trial[k] -= lam * du(k);
      bool collided = false;
      for (int a = 0; a < n && !collided; ++a)
        for (int b = a + 1; b < n; ++b)
          if (std::abs(trial[a] - trial[b]) < cfg.min_separation / 10.0)
            collided = true;
      if (collided) {
        out.flags.push_back("rapidity collision mid-iteration");
        out.iterations = it;
        out.rapidities = us;
        return out;
      }
      Vec Ft;
      if (!eval(trial, Ft)) continue;
      const double ft = Ft.cwiseAbs().maxCoeff();
      if (ft < fmax) {
        us = trial;
        F = Ft;
        fmax = ft;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      out.flags.push_back("backtracking stalled");
      break;
    }
  }
  out.iterations = it;
  // reduce to the fundamental strip (all closed forms are i*pi periodic),
  // sort canonically, and re-evaluate the residuals in final position
  for (cx &u : us) u = strip_reduce(u);
  std::sort(us.begin(), us.end(), canon_less);
  out.rapidities = us;
  if (!eval(us, F)) {
    out.flags.push_back("residual evaluation failed after reduction");
    return out;
  }
  out.residuals.assign(n, 0.0);
  for (int j = 0; j < n; ++j) out.residuals[j] = std::abs(F(j));
  fmax = out.max_residual();
  out.converged = fmax < 10.0 * cfg.newton_tol;
  if (!out.converged && out.flags.empty())
    out.flags.push_back("iteration cap reached");
  if (out.converged) {
    for (cx u : us)
      if (on_guard_locus(p, u, cfg)) {
        out.converged = false;
        out.flags.push_back("root on guard locus");
        break;
      }
    for (int a = 0; a < n && out.converged; ++a)
      for (int b = a + 1; b < n; ++b)
        if (pair_on_guard_locus(p, us[a], us[b], cfg)) {
          out.converged = false;
          out.flags.push_back("root pair on amplitude pole locus");
        }
    for (cx u : us)
      if (out.converged && !in_window(u, cfg)) {
        out.converged = false;
        out.flags.push_back("root outside search window");
        break;
      }
  }
  return out;
}

namespace {

// the image of a solution set under u -> -u-eta is again a solution; polish
// each image and append whatever converges (deterministic, cheap).  `found`
// grows during the loop; the map is an involution, so this terminates.
void close_under_reflection(const ModelParams &p, int n,
                            const RootSearchConfig &cfg,
                            std::vector<RootSet> &found) {
  for (size_t i = 0; i < found.size(); ++i) {
    std::vector<cx> img;
    for (cx u : found[i].rapidities) img.push_back(strip_reduce(-u - p.eta));
    std::sort(img.begin(), img.end(), canon_less);
    bool valid = true;
    for (size_t a = 0; a < img.size() && valid; ++a) {
      if (on_guard_locus(p, img[a], cfg)) valid = false;
      for (size_t b = a + 1; b < img.size() && valid; ++b)
        if (std::abs(img[a] - img[b]) < cfg.min_separation ||
            pair_on_guard_locus(p, img[a], img[b], cfg))
          valid = false;
    }
    if (!valid) continue;
    bool dup = false;
    for (const RootSet &other : found)
      if (same_multiset(other.rapidities, img, 100 * cfg.dedup_radius))
        dup = true;
    if (dup) continue;
    RootSet rs = solve_system(p, n, img, cfg);
    if (!rs.converged || rs.max_residual() >= 1e-10) continue;
    for (const RootSet &other : found)
      if (same_multiset(other.rapidities, rs.rapidities, cfg.dedup_radius))
        dup = true;
    if (!dup) found.push_back(std::move(rs));
  }
}
}  // namespace

std::vector<RootSet> scan_n1(const ModelParams &p,
                             const RootSearchConfig &cfg) {
  const int nr = static_cast<int>((cfg.re_max - cfg.re_min) / cfg.step) + 1;
  const int ni = static_cast<int>((cfg.im_max - cfg.im_min) / cfg.step) + 1;
  Eigen::MatrixXd absF(nr, ni);
  for (int a = 0; a < nr; ++a)
    for (int b = 0; b < ni; ++b) {
      const cx z(cfg.re_min + a * cfg.step, cfg.im_min + b * cfg.step);
      double val = std::numeric_limits<double>::infinity();
      if (!on_guard_locus(p, z, cfg)) {
        try {
          val = std::abs(bethe_residual(p, {z}, 0));
        } catch (const std::exception &) {
        }
      }
      absF(a, b) = val;
    }
  std::vector<RootSet> found;
  for (int a = 0; a < nr; ++a)
    for (int b = 0; b < ni; ++b) {
      if (!std::isfinite(absF(a, b))) continue;
      bool local_min = true;
      for (int da = -1; da <= 1 && local_min; ++da)
        for (int db = -1; db <= 1; ++db) {
          if (da == 0 && db == 0) continue;
          const int na = a + da, nb = b + db;
          if (na < 0 || na >= nr || nb < 0 || nb >= ni) continue;
          if (absF(na, nb) < absF(a, b)) { local_min = false; break; }
        }
      if (!local_min) continue;
      const cx z(cfg.re_min + a * cfg.step, cfg.im_min + b * cfg.step);
      RootSet rs = solve_system(p, 1, {z}, cfg);
      if (!rs.converged) continue;
      bool dup = false;
      for (const RootSet &other : found)
        if (same_multiset(other.rapidities, rs.rapidities, cfg.dedup_radius))
          dup = true;
      if (!dup) found.push_back(std::move(rs));
    }
  close_under_reflection(p, 1, cfg, found);
  std::sort(found.begin(), found.end(),
            [](const RootSet &x, const RootSet &y) {
              return canon_less(x.rapidities[0], y.rapidities[0]);
            });
  return found;
}

std::vector<RootSet> multi_start(const ModelParams &p, int n,
                                 const RootSearchConfig &cfg) {
  if (n < 1) return {};
  if (n == 1) return scan_n1(p, cfg);

  const std::vector<RootSet> roots1 = scan_n1(p, cfg);
  std::vector<cx> base;
  for (const RootSet &r : roots1) base.push_back(r.rapidities[0]);

  std::mt19937_64 rng(cfg.seed + 1000003ULL * static_cast<unsigned>(n));
  auto perturb = [&](cx z, double radius) {
    const double r = radius * (0.5 + u01(rng));
    const double a = 2.0 * pi * u01(rng);
    return z + cx(r * std::cos(a), r * std::sin(a));
  };
  auto rand_point = [&] {
    return cx(cfg.re_min + (cfg.re_max - cfg.re_min) * u01(rng),
              cfg.im_min + (cfg.im_max - cfg.im_min) * u01(rng));
  };

  std::vector<std::vector<cx>> seeds;
  // deterministic stencil around multiset combos of the n = 1 roots
  const cx stencil[4] = {cx(0.1, 0.1), cx(0.1, -0.1), cx(-0.1, 0.1),
                         cx(-0.1, -0.1)};
  std::vector<std::vector<cx>> combos;
  std::vector<int> pick(n, 0);
  const int nb = static_cast<int>(base.size());
  if (nb > 0) {
    while (true) {
      std::vector<cx> c;
      for (int i = 0; i < n; ++i) c.push_back(base[pick[i]]);
      combos.push_back(c);
      int pos = n - 1;
      while (pos >= 0 && pick[pos] == nb - 1) --pos;
      if (pos < 0) break;
      ++pick[pos];
      for (int i = pos + 1; i < n; ++i) pick[i] = pick[pos];
    }
  }
  for (const auto &c : combos) {
    std::vector<int> sidx(n, 0);
    while (true) {
      std::vector<cx> s(n);
      for (int i = 0; i < n; ++i) s[i] = c[i] + stencil[sidx[i]];
      seeds.push_back(s);
      int pos = n - 1;
      while (pos >= 0 && sidx[pos] == 3) --pos;
      if (pos < 0) break;
      ++sidx[pos];
      for (int i = pos + 1; i < n; ++i) sidx[i] = 0;
    }
  }
  // randomized perturbations of the same combos
  for (const auto &c : combos)
    for (int rep = 0; rep < 24; ++rep) {
      std::vector<cx> s(n);
      for (int i = 0; i < n; ++i) s[i] = perturb(c[i], 0.15);
      seeds.push_back(s);
    }
  // combinations of lower-n roots extended by one fresh point
  if (n >= 3) {
    for (const RootSet &r2 : multi_start(p, n - 1, cfg))
      for (int rep = 0; rep < 48; ++rep) {
        std::vector<cx> s = r2.rapidities;
        s.push_back(rep < static_cast<int>(8 * base.size())
                        ? perturb(base[rep % base.size()], 0.2)
                        : rand_point());
        for (cx &z : s) z = perturb(z, 0.03);
        seeds.push_back(s);
      }
  }
  // plain random seeds over the rectangle
  const int extra = n == 2 ? 400 : 700;
  for (int rep = 0; rep < extra; ++rep) {
    std::vector<cx> s(n);
    for (int i = 0; i < n; ++i) s[i] = rand_point();
    seeds.push_back(s);
  }

  std::vector<RootSet> found;
  for (const auto &s : seeds) {
    bool valid = true;
    for (size_t i = 0; i < s.size() && valid; ++i) {
      if (on_guard_locus(p, s[i], cfg)) valid = false;
      for (size_t j = i + 1; j < s.size() && valid; ++j)
        if (std::abs(s[i] - s[j]) < cfg.min_separation) valid = false;
    }
    if (!valid) continue;
    RootSet rs = solve_system(p, n, s, cfg);
    if (!rs.converged || rs.max_residual() >= 1e-10) continue;
    bool dup = false;
    for (const RootSet &other : found)
      if (same_multiset(other.rapidities, rs.rapidities, cfg.dedup_radius))
        dup = true;
    if (!dup) found.push_back(std::move(rs));
  }
  close_under_reflection(p, n, cfg, found);
    std::sort(found.begin(), found.end(),
            [](const RootSet &x, const RootSet &y) {
              for (size_t i = 0; i < x.rapidities.size(); ++i) {
                if (x.rapidities[i] != y.rapidities[i])
                  return canon_less(x.rapidities[i], y.rapidities[i]);
              }
              return false;
            });
  // flag reflection-map duplicates (u -> -u - eta), do not delete them
  for (size_t i = 0; i < found.size(); ++i) {
    std::vector<cx> mapped;
    for (cx u : found[i].rapidities)
      mapped.push_back(strip_reduce(-u - p.eta));
    std::sort(mapped.begin(), mapped.end(), canon_less);
    for (size_t j = 0; j < found.size(); ++j) {
      if (j == i) continue;
      if (same_multiset(mapped, found[j].rapidities, 100 * cfg.dedup_radius))
        found[i].flags.push_back("reflection image of set " +
                                 std::to_string(j));
    }
  }
  return found;
}

}  // namespace bethe19
