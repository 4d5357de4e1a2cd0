#pragma once

// Deterministic serialization of parameter sets, solver output and check
// reports.  Key order is fixed and wall-clock fields are excluded, so two
// runs with equal inputs produce byte-identical documents.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bethe19/solver.hpp"
#include "bethe19/verify.hpp"

namespace bethe19 {

using ordered_json = nlohmann::ordered_json;

extern const char *const kToolVersion;

ordered_json complex_to_json(cx z);
cx complex_from_json(const ordered_json &j);

ordered_json params_to_json(const ModelParams &p);
ModelParams params_from_json(const ordered_json &j);

ordered_json config_to_json(const RootSearchConfig &c);
RootSearchConfig config_from_json(const ordered_json &j);

ordered_json root_set_to_json(const RootSet &r);
RootSet root_set_from_json(const ordered_json &j);

ordered_json report_to_json(const CheckReport &r);

// FNV-1a over the canonical parameter dump; ties a roots file to the model
// it was produced from.
std::string params_fingerprint(const ModelParams &p);

// top-level documents emitted by the command-line tool
ordered_json solve_document(const ModelParams &p, const RootSearchConfig &c,
                            int n, const std::vector<RootSet> &sets);
ordered_json check_document(const ModelParams &p, const RootSearchConfig &c,
                            const std::vector<CheckReport> &stages);
ordered_json verify_document(const ModelParams &p,
                             const std::vector<RootSet> &sets,
                             const std::vector<CheckReport> &stages);

// one row per rapidity: set_index,rapidity_index,re,im,abs_residual,converged
std::string root_sets_to_csv(const std::vector<RootSet> &sets);

}  // namespace bethe19
