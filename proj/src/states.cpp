#include "bethe19/states.hpp"

#include <map>

namespace bethe19 {

using std::cosh;
using std::exp;
using std::sinh;

namespace {
constexpr double pi = 3.14159265358979323846;

void require_separated(const std::vector<cx> &us, double min_sep) {
  for (size_t i = 0; i < us.size(); ++i)
    for (size_t j = i + 1; j < us.size(); ++j)
      if (std::abs(us[i] - us[j]) < min_sep)
        throw CoincidentRapiditiesError(us[i], us[j]);
}

cx pow2L(cx z, int length) {
  cx out = 1.0;
  for (int i = 0; i < 2 * length; ++i) out *= z;
  return out;
}
}  // namespace

DeltaValues delta_functions(const ModelParams &p, cx u) {
  const Mat Km = build_k_minus(p, u).matrix;
  const FValues f = f_functions(p, u);
  const WeightVector w = eval_weights(p, u);
  DeltaValues d;
  d.d1 = Km(0, 0);
  d.d2 = (Km(1, 1) - f.f1 * Km(0, 0)) * pow2L(w.b, p.length);
  d.d3 = (Km(2, 2) - f.f4 * Km(0, 0) - f.f3 * Km(1, 1)) * pow2L(w.f, p.length);
  return d;
}

cx amplitude(const ModelParams &p, AmplitudeName name, cx u, cx v) {
  const cx eta = p.eta;
  const bool zf = p.kind == ModelKind::ZF;
  switch (name) {
    case AmplitudeName::a11:
      return sinh(u + v) * sinh(u - v - eta) /
             (sinh(u - v) * sinh(u + v + eta));
    case AmplitudeName::a21:
      if (zf)
        return sinh(u + v) * sinh(u - v - eta) * sinh(u - v + eta / 2.0) *
               sinh(u + v + 1.5 * eta) /
               (sinh(u - v) * sinh(u - v - eta / 2.0) *
                sinh(u + v + eta / 2.0) * sinh(u + v + eta));
      return sinh(u - v + eta) * sinh(u + v + 2.0 * eta) *
             cosh(u - v - eta / 2.0) * cosh(u + v + eta / 2.0) /
             (sinh(u - v) * sinh(u + v + eta) * cosh(u - v + eta / 2.0) *
              cosh(u + v + 1.5 * eta));
    case AmplitudeName::a31:
      if (zf)
        return sinh(u - v + eta / 2.0) * sinh(u + v + 1.5 * eta) /
               (sinh(u - v - eta / 2.0) * sinh(u + v + eta / 2.0));
      return cosh(u - v + 1.5 * eta) * cosh(u + v + 2.5 * eta) /
             (cosh(u - v + eta / 2.0) * cosh(u + v + 1.5 * eta));
    case AmplitudeName::e01:
      if (zf)
        return sinh(u - v - eta) * sinh(u - v + eta / 2.0) /
               (sinh(u - v - eta / 2.0) * sinh(u - v + eta));
      return cosh(u - v - eta / 2.0) / cosh(u - v + eta / 2.0);
    case AmplitudeName::e04:
      if (zf)
        return sinh(2.0 * v) * sinh(eta) /
               (sinh(u - v - eta / 2.0) * sinh(2.0 * v + eta));
      return exp(eta) * sinh(2.0 * v) * sinh(eta) /
             (cosh(u - v + eta / 2.0) * sinh(2.0 * v + eta));
    case AmplitudeName::e05:
      if (zf) return -sinh(eta) / sinh(u + v + eta / 2.0);
      return -exp(eta) * sinh(eta) / cosh(u + v + 1.5 * eta);
  }
  throw std::logic_error("amplitude: unknown name");
}

cx omega(const ModelParams &p, cx u, cx v) {
  const cx e = amplitude(p, AmplitudeName::e01, u, v);
  if (std::abs(e) < 1e-14) throw PoleProximityError("e01(u,v)", u);
  return 1.0 / e;
}

ScalarTable ScalarTable::build(const ModelParams &p,
                               const std::vector<cx> &us) {
  ScalarTable t;
  t.rapidities = us;
  const int n = static_cast<int>(us.size());
  for (cx u : us) {
    const DeltaValues d = delta_functions(p, u);
    t.delta1.push_back(d.d1);
    t.delta2.push_back(d.d2);
    t.delta3.push_back(d.d3);
    t.theta.push_back(theta_function(p, u));
    t.g.push_back(g_scalar(p, u));
  }
  t.a11 = Mat::Zero(n, n); t.a21 = Mat::Zero(n, n); t.a31 = Mat::Zero(n, n);
  t.e01 = Mat::Zero(n, n); t.e04 = Mat::Zero(n, n); t.e05 = Mat::Zero(n, n);
  t.omega_pair = Mat::Zero(n, n); t.s_pair = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      t.a11(i, j) = amplitude(p, AmplitudeName::a11, us[i], us[j]);
      t.a21(i, j) = amplitude(p, AmplitudeName::a21, us[i], us[j]);
      t.a31(i, j) = amplitude(p, AmplitudeName::a31, us[i], us[j]);
      t.e01(i, j) = amplitude(p, AmplitudeName::e01, us[i], us[j]);
      t.e04(i, j) = amplitude(p, AmplitudeName::e04, us[i], us[j]);
      t.e05(i, j) = amplitude(p, AmplitudeName::e05, us[i], us[j]);
      t.omega_pair(i, j) = omega(p, us[i], us[j]);
      t.s_pair(i, j) = s_function(p, us[i], us[j]);
    }
  return t;
}

cx gamma_coefficient(const ModelParams &p, int i,
                     const std::vector<cx> &us, const ScalarTable &table) {
  const int n = static_cast<int>(us.size());
  if (i < 2 || i > n)
    throw std::invalid_argument("gamma_coefficient: index out of range");
  const int ii = i - 1;  // 0-based position
  cx pre = 1.0;
  for (int j = 1; j < ii; ++j) pre *= table.omega_pair(ii, j);
  cx t1 = table.delta1[ii] * table.e04(0, ii);
  cx t2 = table.delta2[ii] * table.e05(0, ii);
  for (int k = 1; k < n; ++k) {
    if (k == ii) continue;
    t1 *= table.a11(ii, k);
    t2 *= table.a21(ii, k);
  }
  return pre * (t1 + t2);
}

namespace {

// One build memoizes the B1/B2 operators per distinct rapidity value.
struct PsiBuilder {
  const ModelParams &p;
  std::map<std::pair<double, double>, std::pair<Mat, Mat>> bops;

  const std::pair<Mat, Mat> &operators_at(cx u) {
    const auto key = std::make_pair(u.real(), u.imag());
    auto it = bops.find(key);
    if (it == bops.end()) {
      OperatorSet ops = build_double_row(p, u);
      it = bops.emplace(key, std::make_pair(std::move(ops.B1),
                                            std::move(ops.B2))).first;
    }
    return it->second;
  }

  Vec psi(const std::vector<cx> &us) {
    const int n = static_cast<int>(us.size());
    if (n == 0) return pseudovacuum(p.length);
    const auto &[B1, B2] = operators_at(us[0]);
    if (n == 1) return B1 * pseudovacuum(p.length);
    std::vector<cx> rest(us.begin() + 1, us.end());
    Vec out = B1 * psi(rest);
    const ScalarTable table = ScalarTable::build(p, us);
    for (int i = 2; i <= n; ++i) {
      const cx gam = gamma_coefficient(p, i, us, table);
      std::vector<cx> sub;
      for (int k = 1; k < n; ++k)
        if (k != i - 1) sub.push_back(us[k]);
      out -= gam * (B2 * psi(sub));
    }
    return out;
  }
};

}  // namespace

BetheState build_psi(const ModelParams &p, const std::vector<cx> &us,
                     double min_separation) {
  require_separated(us, min_separation);
  PsiBuilder builder{p, {}};
  Vec v = builder.psi(us);
  if (!us.empty() && v.norm() < 1e-250)
    throw ZeroStateError("build_psi: state vanished (n incompatible with L?)");
  return BetheState{std::move(v), us, BetheState::Kind::psi, p};
}

cx g_scalar(const ModelParams &p, cx u) {
  const cx eta = p.eta;
  const DeltaValues d = delta_functions(p, u);
  cx den;
  if (p.kind == ModelKind::ZF)
    den = sinh(u + eta / 2.0 - p.xi_plus);
  else
    den = sinh(u + 0.75 * eta - cx(0.0, p.epsilon * pi / 4.0));
  if (std::abs(den) < 1e-14)
    throw PoleProximityError("g denominator", u);
  return p.beta_plus * sinh(2.0 * u + eta) / den * d.d2;
}

cx s_function(const ModelParams &p, cx u1, cx u2) {
  const cx eta = p.eta;
  if (p.kind == ModelKind::ZF) {
    const cx den = sinh(u1 - u2 - eta / 2.0) * sinh(u1 + u2 + eta / 2.0) *
                   sinh(u1 + u2 + eta / 2.0);
    if (std::abs(den) < 1e-14) throw PoleProximityError("s denominator", u1);
    return sinh(u1 + u2) * sinh(u1 - u2 - eta) * sinh(u1 + u2 + 1.5 * eta) /
           den;
  }
  const cx ie = cx(0.0, p.epsilon * pi / 4.0);
  const cx den = sinh(u1 + u2) * cosh(u1 - u2 + eta / 2.0) *
                 cosh(u1 + u2 + 1.5 * eta) * cosh(u1 + u2 + 1.5 * eta);
  if (std::abs(den) < 1e-14) throw PoleProximityError("s denominator", u1);
  return cosh(u1 + u2 + eta / 2.0) * sinh(u1 + u2 + 2.0 * eta) / den *
         (cosh(u1 + 0.25 * eta - ie) * cosh(u1 + 0.75 * eta + ie) +
          cosh(u2 - 0.25 * eta + ie) * cosh(u2 + 1.25 * eta - ie));
}

cx g_coefficient(const ModelParams &p, const std::vector<int> &removed,
                 const std::vector<cx> &us) {
  const int n = static_cast<int>(us.size());
  std::vector<bool> in_removed(n, false);
  for (int m : removed) in_removed.at(m) = true;
  cx out = 1.0;
  for (int m : removed) {
    const cx um = us[m];
    out *= g_scalar(p, um);
    for (int mp : removed)
      if (mp < m) out *= s_function(p, us[mp], um);
    for (int mpp = 0; mpp < n; ++mpp) {
      if (in_removed[mpp]) continue;
      out *= amplitude(p, AmplitudeName::a21, um, us[mpp]);
      if (m > mpp) out *= omega(p, um, us[mpp]);
    }
  }
  return out;
}

BetheState build_phi(const ModelParams &p, const std::vector<cx> &us,
                     double min_separation) {
  require_separated(us, min_separation);
  const int n = static_cast<int>(us.size());
  PsiBuilder builder{p, {}};
  Vec out = builder.psi(us);
  // nonempty removed-index subsets, lexicographic within each size
  for (int r = 1; r <= n; ++r) {
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    while (true) {
      std::vector<cx> kept;
      for (int i = 0, k = 0; i < n; ++i) {
        if (k < r && idx[k] == i) { ++k; continue; }
        kept.push_back(us[i]);
      }
      out += g_coefficient(p, idx, us) * builder.psi(kept);
      int pos = r - 1;
      while (pos >= 0 && idx[pos] == n - r + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < r; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  if (!us.empty() && out.norm() < 1e-250)
    throw ZeroStateError("build_phi: state vanished");
  return BetheState{std::move(out), us, BetheState::Kind::phi, p};
}

cx lambda_eigenvalue(const ModelParams &p, cx u,
                     const std::vector<cx> &us) {
  for (cx uj : us)
    if (std::abs(u - uj) < 1e-6)
      throw PoleProximityError("sinh(u-u_j)", u);
  const OmegaValues w = omega_weights(p, u);
  const DeltaValues d = delta_functions(p, u);
  cx p1 = 1.0, p2 = 1.0, p3 = 1.0;
  for (cx uj : us) {
    p1 *= amplitude(p, AmplitudeName::a11, u, uj);
    p2 *= amplitude(p, AmplitudeName::a21, u, uj);
    p3 *= amplitude(p, AmplitudeName::a31, u, uj);
  }
  return w.w1 * d.d1 * p1 + w.w2 * d.d2 * p2 + w.w3 * d.d3 * p3;
}

cx theta_function(const ModelParams &p, cx u) {
  const cx eta = p.eta;
  if (p.kind == ModelKind::ZF) {
    const cx den = sinh(2.0 * u) * sinh(u + eta / 2.0 - p.xi_plus);
    if (std::abs(den) < 1e-14)
      throw PoleProximityError("sinh(2u) sinh(u+eta/2-xi+)", u);
    return sinh(2.0 * u + eta) * sinh(u + p.xi_plus + eta / 2.0) / den;
  }
  const cx i34 = cx(0.0, p.epsilon * 3.0 * pi / 4.0);
  const cx i14 = cx(0.0, p.epsilon * pi / 4.0);
  const cx den = sinh(2.0 * u) * sinh(u + 0.75 * eta - i14);
  if (std::abs(den) < 1e-14)
    throw PoleProximityError("sinh(2u) sinh(u+3eta/4-i eps pi/4)", u);
  return -sinh(2.0 * u + eta) * sinh(u + 0.25 * eta - i34) / den;
}

cx bethe_residual(const ModelParams &p, const std::vector<cx> &us, int j) {
  const int n = static_cast<int>(us.size());
  if (j < 0 || j >= n)
    throw std::invalid_argument("bethe_residual: index out of range");
  const cx uj = us[j];
  const DeltaValues d = delta_functions(p, uj);
  if (std::abs(d.d2) < 1e-250)
    throw PoleProximityError("Delta2(u_j)", uj);
  cx prod = 1.0;
  for (int k = 0; k < n; ++k) {
    if (k == j) continue;
    if (std::abs(uj - us[k]) < 1e-12)
      throw CoincidentRapiditiesError(uj, us[k]);
    prod *= amplitude(p, AmplitudeName::a21, uj, us[k]) /
            amplitude(p, AmplitudeName::a11, uj, us[k]);
  }
  return d.d1 / d.d2 + theta_function(p, uj) * prod;
}

cx bethe_residual_log(const ModelParams &p, const std::vector<cx> &us,
                      int j) {
  const cx uj = us[j];
  const DeltaValues d = delta_functions(p, uj);
  cx prod = 1.0;
  for (int k = 0; k < static_cast<int>(us.size()); ++k)
    if (k != j)
      prod *= amplitude(p, AmplitudeName::a21, uj, us[k]) /
              amplitude(p, AmplitudeName::a11, uj, us[k]);
  // solved iff log of the ratio of the two sides vanishes mod 2 pi i
  return std::log(-d.d1 / (d.d2 * theta_function(p, uj) * prod));
}

}  // namespace bethe19
