#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bethe19/solver.hpp"

#include <algorithm>

using namespace bethe19;

namespace {
ModelParams params(ModelKind k, int length) {
  ModelParams p;
  p.kind = k;
  p.length = length;
  return p;
}

bool contains_root(const std::vector<RootSet> &sets,
                   const std::vector<cx> &target, double tol = 1e-6) {
  for (const RootSet &r : sets) {
    if (r.rapidities.size() != target.size()) continue;
    double worst = 0.0;
    for (size_t i = 0; i < target.size(); ++i)
      worst = std::max(worst, std::abs(r.rapidities[i] - target[i]));
    if (worst < tol) return true;
  }
  return false;
}
}  // namespace

TEST_CASE("n = 1 scan finds the known ZF roots at L = 1") {
  const auto sets = scan_n1(params(ModelKind::ZF, 1), RootSearchConfig{});
  CHECK(contains_root(sets, {cx(-0.294185, -0.356038)}, 1e-5));
  CHECK(contains_root(sets, {cx(-0.135815, 0.186038)}, 1e-5));
  for (const RootSet &r : sets) {
    CHECK(r.converged);
    CHECK(r.max_residual() < 1e-11);
    CHECK(std::abs(r.rapidities[0]) > 1e-5);  // u = 0 is never returned
  }
}

TEST_CASE("n = 1 scan finds the known IK roots at L = 2") {
  const auto sets = scan_n1(params(ModelKind::IK, 2), RootSearchConfig{});
  CHECK(contains_root(sets, {cx(-0.19379709, -0.79362678)}, 1e-5));
  CHECK(contains_root(sets, {cx(-0.14670062, -0.29068371)}, 1e-5));
  CHECK(contains_root(sets, {cx(-0.28329938, 0.12068371)}, 1e-5));
}

TEST_CASE("roots are reported in the fundamental strip, canonically sorted") {
  const auto sets = multi_start(params(ModelKind::ZF, 2), 2,
                                RootSearchConfig{});
  REQUIRE(!sets.empty());
  for (const RootSet &r : sets) {
    for (cx u : r.rapidities)
      CHECK(std::abs(u.imag()) <= 1.5707963267948966 + 1e-12);
    for (size_t i = 1; i < r.rapidities.size(); ++i) {
      const cx a = r.rapidities[i - 1], b = r.rapidities[i];
      CHECK((a.real() < b.real() ||
             (a.real() == b.real() && a.imag() <= b.imag())));
    }
  }
}

TEST_CASE("frozen n = 2 sets are found at L = 2 for ZF") {
  const auto sets = multi_start(params(ModelKind::ZF, 2), 2,
                                RootSearchConfig{});
  CHECK(contains_root(
      sets, {cx(-0.382704696949, -0.359494161218),
             cx(-0.144869207592, -0.250951337104)}, 1e-6));
  CHECK(contains_root(sets, {cx(-0.43275307, -0.45551400),
                             cx(-0.24812288, 0.24894583)}, 1e-5));
}

TEST_CASE("guard predicates exclude the structural loci") {
  const ModelParams p = params(ModelKind::ZF, 2);
  const RootSearchConfig cfg;
  CHECK(on_guard_locus(p, cx(0.0, 0.0), cfg));
  CHECK(on_guard_locus(p, -p.eta / 2.0, cfg));
  CHECK(on_guard_locus(p, -p.eta, cfg));                      // weight pole
  CHECK(on_guard_locus(p, -p.eta + cx(0.0, 3.14159265), cfg));  // mod i pi
  CHECK(!on_guard_locus(p, cx(0.3, -0.2), cfg));
  // reflected-pair locus u1 + u2 = -eta
  const cx a(0.1, -0.3);
  CHECK(pair_on_guard_locus(p, a, -p.eta - a, cfg));
  CHECK(pair_on_guard_locus(p, a, a + cx(1e-6, 0), cfg));  // coincidence
  CHECK(!pair_on_guard_locus(p, a, cx(-0.4, 0.25), cfg));
}

TEST_CASE("solve_system converges from a nearby guess and reports residuals") {
  const ModelParams p = params(ModelKind::ZF, 1);
  const RootSearchConfig cfg;
  const RootSet r = solve_system(p, 1, {cx(-0.25, -0.30)}, cfg);
  REQUIRE(r.converged);
  CHECK(r.max_residual() < 1e-11);
  CHECK(r.iterations > 0);
  CHECK(r.jacobian_condition >= 1.0);
  CHECK(std::abs(r.rapidities[0] - cx(-0.294185, -0.356038)) < 1e-5);
}

TEST_CASE("solve_system flags rather than throws on failure") {
  const ModelParams p = params(ModelKind::ZF, 1);
  RootSearchConfig cfg;
  cfg.max_iter = 1;  // starved iteration budget cannot converge from far away
  const RootSet r = solve_system(p, 1, {cx(0.9, 0.9)}, cfg);
  CHECK(!r.converged);
  CHECK(!r.flags.empty());
}

TEST_CASE("converged sets never sit on a guard locus") {
  const RootSearchConfig cfg;
  for (ModelKind k : {ModelKind::ZF, ModelKind::IK}) {
    const ModelParams p = params(k, 2);
    for (const RootSet &r : multi_start(p, 2, cfg)) {
      for (cx u : r.rapidities) CHECK(!on_guard_locus(p, u, cfg));
      for (size_t i = 0; i < r.rapidities.size(); ++i)
        for (size_t j = i + 1; j < r.rapidities.size(); ++j)
          CHECK(!pair_on_guard_locus(p, r.rapidities[i], r.rapidities[j],
                                     cfg));
    }
  }
}

TEST_CASE("root sets are independent of the boundary beta constants") {
  RootSearchConfig cfg;
  ModelParams p = params(ModelKind::ZF, 2);
  ModelParams q = p;
  q.beta_minus = cx(-0.9, 0.31);
  q.beta_plus = cx(1.7, -0.4);
  const auto a = multi_start(p, 2, cfg);
  const auto b = multi_start(q, 2, cfg);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].rapidities.size(); ++j)
      CHECK(std::abs(a[i].rapidities[j] - b[i].rapidities[j]) < 1e-9);
}

TEST_CASE("reseeding leaves the found family unchanged") {
  ModelParams p = params(ModelKind::IK, 2);
  RootSearchConfig c1, c2;
  c1.seed = 1;
  c2.seed = 20240817;
  const auto a = multi_start(p, 2, c1);
  const auto b = multi_start(p, 2, c2);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].rapidities.size(); ++j)
      CHECK(std::abs(a[i].rapidities[j] - b[i].rapidities[j]) < 1e-9);
}

TEST_CASE("reflection images are flagged, not deleted") {
  const auto sets = multi_start(params(ModelKind::ZF, 2), 2,
                                RootSearchConfig{});
  int flagged = 0;
  for (const RootSet &r : sets)
    for (const std::string &f : r.flags)
      if (f.rfind("reflection image", 0) == 0) ++flagged;
  CHECK(flagged >= 2);  // images come in pairs and stay in the list
}

TEST_CASE("empty result is a valid outcome, not an error") {
  // IK at L = 2 admits no generic three-rapidity sets in this window
  ModelParams p = params(ModelKind::IK, 2);
  RootSearchConfig cfg;
  const auto sets = multi_start(p, 3, cfg);
  CHECK(sets.empty());
}
