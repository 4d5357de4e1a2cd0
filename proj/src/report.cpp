#include "bethe19/report.hpp"

#include <cstdio>

namespace bethe19 {

const char *const kToolVersion = "1.0.0";

ordered_json complex_to_json(cx z) {
  return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

cx complex_from_json(const ordered_json &j) {
  return cx(j.at("re").get<double>(), j.at("im").get<double>());
}

ordered_json params_to_json(const ModelParams &p) {
  ordered_json j;
  j["kind"] = kind_name(p.kind);
  j["eta"] = complex_to_json(p.eta);
  j["xi_minus"] = complex_to_json(p.xi_minus);
  j["xi_plus"] = complex_to_json(p.xi_plus);
  j["beta_minus"] = complex_to_json(p.beta_minus);
  j["beta_plus"] = complex_to_json(p.beta_plus);
  j["epsilon"] = p.epsilon;
  j["length"] = p.length;
  if (p.kplus_perturbation) {
    j["kplus_perturbation"] = ordered_json{
        {"row", p.kplus_perturbation->row},
        {"col", p.kplus_perturbation->col},
        {"delta", complex_to_json(p.kplus_perturbation->delta)}};
  }
  if (p.weight_perturbation) {
    j["weight_perturbation"] = ordered_json{
        {"which", std::string(1, p.weight_perturbation->which)},
        {"delta", complex_to_json(p.weight_perturbation->delta)}};
  }
  return j;
}

ModelParams params_from_json(const ordered_json &j) {
  ModelParams p;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zf" || kind == "ZF")
    p.kind = ModelKind::ZF;
  else if (kind == "ik" || kind == "IK")
    p.kind = ModelKind::IK;
  else
    throw std::runtime_error("unknown model kind: " + kind);
  if (j.contains("eta")) p.eta = complex_from_json(j.at("eta"));
  if (j.contains("xi_minus")) p.xi_minus = complex_from_json(j.at("xi_minus"));
  if (j.contains("xi_plus")) p.xi_plus = complex_from_json(j.at("xi_plus"));
  if (j.contains("beta_minus"))
    p.beta_minus = complex_from_json(j.at("beta_minus"));
  if (j.contains("beta_plus"))
    p.beta_plus = complex_from_json(j.at("beta_plus"));
  if (j.contains("epsilon")) p.epsilon = j.at("epsilon").get<int>();
  if (j.contains("length")) p.length = j.at("length").get<int>();
  if (j.contains("kplus_perturbation")) {
    const auto &q = j.at("kplus_perturbation");
    p.kplus_perturbation =
        EntryPerturbation{q.at("row").get<int>(), q.at("col").get<int>(),
                          complex_from_json(q.at("delta"))};
  }
  if (j.contains("weight_perturbation")) {
    const auto &q = j.at("weight_perturbation");
    p.weight_perturbation =
        WeightPerturbation{q.at("which").get<std::string>().at(0),
                           complex_from_json(q.at("delta"))};
  }
  p.validate();
  return p;
}

ordered_json config_to_json(const RootSearchConfig &c) {
  ordered_json j;
  j["re_min"] = c.re_min;
  j["re_max"] = c.re_max;
  j["im_min"] = c.im_min;
  j["im_max"] = c.im_max;
  j["step"] = c.step;
  j["newton_tol"] = c.newton_tol;
  j["max_iter"] = c.max_iter;
  j["damping"] = c.damping;
  j["dedup_radius"] = c.dedup_radius;
  j["exclusion_radius"] = c.exclusion_radius;
  j["kinematic_radius"] = c.kinematic_radius;
  j["min_separation"] = c.min_separation;
  j["seed"] = c.seed;
  return j;
}

RootSearchConfig config_from_json(const ordered_json &j) {
  RootSearchConfig c;
  auto opt = [&](const char *key, auto &field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  opt("re_min", c.re_min);
  opt("re_max", c.re_max);
  opt("im_min", c.im_min);
  opt("im_max", c.im_max);
  opt("step", c.step);
  opt("newton_tol", c.newton_tol);
  opt("max_iter", c.max_iter);
  opt("damping", c.damping);
  opt("dedup_radius", c.dedup_radius);
  opt("exclusion_radius", c.exclusion_radius);
  opt("kinematic_radius", c.kinematic_radius);
  opt("min_separation", c.min_separation);
  opt("seed", c.seed);
  return c;
}

ordered_json root_set_to_json(const RootSet &r) {
  ordered_json j;
  j["rapidities"] = ordered_json::array();
  for (cx u : r.rapidities) j["rapidities"].push_back(complex_to_json(u));
  j["residuals"] = r.residuals;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["jacobian_condition"] = r.jacobian_condition;
  j["flags"] = r.flags;
  return j;
}

RootSet root_set_from_json(const ordered_json &j) {
  RootSet r;
  for (const auto &z : j.at("rapidities"))
    r.rapidities.push_back(complex_from_json(z));
  r.residuals = j.at("residuals").get<std::vector<double>>();
  r.converged = j.at("converged").get<bool>();
  r.iterations = j.at("iterations").get<int>();
  r.jacobian_condition = j.at("jacobian_condition").get<double>();
  r.flags = j.at("flags").get<std::vector<std::string>>();
  return r;
}

ordered_json report_to_json(const CheckReport &r) {
  // wall_seconds deliberately omitted: documents must be reproducible
  ordered_json j;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["max_residual"] = r.max_residual;
  j["tolerance"] = r.tolerance;
  j["details"] = r.details;
  return j;
}

std::string params_fingerprint(const ModelParams &p) {
  const std::string dump = params_to_json(p).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

ordered_json solve_document(const ModelParams &p, const RootSearchConfig &c,
                            int n, const std::vector<RootSet> &sets) {
  ordered_json j;
  j["tool_version"] = kToolVersion;
  j["command"] = "solve";
  j["model"] = params_to_json(p);
  j["params_fingerprint"] = params_fingerprint(p);
  j["config_echo"] = ordered_json{
      {"n", n}, {"conjectural", n > 3}, {"search", config_to_json(c)}};
  j["roots"] = ordered_json::array();
  for (const RootSet &r : sets) j["roots"].push_back(root_set_to_json(r));
  return j;
}

ordered_json check_document(const ModelParams &p, const RootSearchConfig &c,
                            const std::vector<CheckReport> &stages) {
  ordered_json j;
  j["tool_version"] = kToolVersion;
  j["command"] = "check";
  j["model"] = params_to_json(p);
  j["params_fingerprint"] = params_fingerprint(p);
  j["config_echo"] = ordered_json{{"search", config_to_json(c)}};
  j["stages"] = ordered_json::array();
  for (const CheckReport &r : stages) j["stages"].push_back(report_to_json(r));
  return j;
}

ordered_json verify_document(const ModelParams &p,
                             const std::vector<RootSet> &sets,
                             const std::vector<CheckReport> &stages) {
  ordered_json j;
  j["tool_version"] = kToolVersion;
  j["command"] = "verify";
  j["model"] = params_to_json(p);
  j["params_fingerprint"] = params_fingerprint(p);
  j["stages"] = ordered_json::array();
  for (const CheckReport &r : stages) j["stages"].push_back(report_to_json(r));
  j["roots"] = ordered_json::array();
  for (const RootSet &r : sets) j["roots"].push_back(root_set_to_json(r));
  return j;
}

std::string root_sets_to_csv(const std::vector<RootSet> &sets) {
  std::string out =
      "set_index,rapidity_index,re,im,abs_residual,converged\n";
  char buf[160];
  for (size_t s = 0; s < sets.size(); ++s)
    for (size_t k = 0; k < sets[s].rapidities.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g,%.17g,%d\n", s, k,
                    sets[s].rapidities[k].real(), sets[s].rapidities[k].imag(),
                    k < sets[s].residuals.size() ? sets[s].residuals[k] : -1.0,
                    sets[s].converged ? 1 : 0);
      out += buf;
    }
  return out;
}

}  // namespace bethe19
