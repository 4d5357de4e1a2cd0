// command-line front end: check / solve / verify
//
// exit codes: 0 success, 1 a check or verification failed, 2 usage or
// configuration error.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "bethe19/report.hpp"

using namespace bethe19;

namespace {

// parse "re", "imi" or "re+imi" (also "re-imi"); exponent signs respected
bool parse_complex(const std::string &text, cx &out) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) return false;
  const bool has_i = s.back() == 'i' || s.back() == 'I';
  if (!has_i) {
    try {
      size_t pos = 0;
      const double re = std::stod(s, &pos);
      if (pos != s.size()) return false;
      out = cx(re, 0.0);
      return true;
    } catch (...) {
      return false;
    }
  }
  s.pop_back();  // drop the trailing i
  // split at the last +/- that is not leading and not part of an exponent
  size_t split = std::string::npos;
  for (size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  try {
    if (split == std::string::npos) {  // pure imaginary
      double im = 1.0;
      if (!(s.empty() || s == "+")) {
        if (s == "-") {
          im = -1.0;
        } else {
          size_t pos = 0;
          im = std::stod(s, &pos);
          if (pos != s.size()) return false;
        }
      }
      out = cx(0.0, im);
      return true;
    }
    size_t pos = 0;
    const double re = std::stod(s.substr(0, split), &pos);
    if (pos != split) return false;
    std::string imtxt = s.substr(split);
    double im;
    if (imtxt == "+") {
      im = 1.0;
    } else if (imtxt == "-") {
      im = -1.0;
    } else {
      pos = 0;
      im = std::stod(imtxt, &pos);
      if (pos != imtxt.size()) return false;
    }
    out = cx(re, im);
    return true;
  } catch (...) {
    return false;
  }
}

struct RunConfig {
  ModelParams params;
  RootSearchConfig search;
  int n = 1;
  int max_n = 2;
  bool allow_conjectural = false;
  std::string stage;
  std::string json_path;
  std::string csv_path;
  std::string roots_path;
};

void add_model_options(CLI::App *cmd, RunConfig &rc, bool &kind_set) {
  cmd->add_option_function<std::string>(
         "--model",
         [&rc, &kind_set](const std::string &v) {
           if (v == "ZF" || v == "zf")
             rc.params.kind = ModelKind::ZF;
           else if (v == "IK" || v == "ik")
             rc.params.kind = ModelKind::IK;
           else
             throw CLI::ValidationError("--model", "expected ZF or IK");
           kind_set = true;
         },
         "model kind: ZF or IK");
  cmd->add_option("--length,-L", rc.params.length, "number of sites");
  cmd->add_option("--epsilon", rc.params.epsilon, "IK sign, +1 or -1");
  auto cxopt = [&cmd](const std::string &name, cx &field,
                      const std::string &desc) {
    cmd->add_option_function<std::string>(
        name,
        [&field, name](const std::string &v) {
          if (!parse_complex(v, field))
            throw CLI::ValidationError(name, "expected re+imi");
        },
        desc + " (format re+imi)");
  };
  cxopt("--eta", rc.params.eta, "anisotropy");
  cxopt("--xi-minus", rc.params.xi_minus, "left boundary constant");
  cxopt("--xi-plus", rc.params.xi_plus, "right boundary constant");
  cxopt("--beta-minus", rc.params.beta_minus, "left off-diagonal strength");
  cxopt("--beta-plus", rc.params.beta_plus, "right off-diagonal strength");
}

void add_search_options(CLI::App *cmd, RunConfig &rc) {
  cmd->add_option("--grid-step", rc.search.step, "scan grid spacing");
  cmd->add_option("--newton-tol", rc.search.newton_tol, "Newton residual target");
  cmd->add_option("--max-iter", rc.search.max_iter, "Newton iteration cap");
  cmd->add_option("--seed", rc.search.seed,
                  "RNG seed (BETHE19_SEED env is the fallback)");
}

int write_outputs(const RunConfig &rc, const ordered_json &doc,
                  const std::vector<RootSet> *sets) {
  const std::string text = doc.dump(2) + "\n";
  if (rc.json_path.empty() || rc.json_path == "-") {
    std::cout << text;
  } else {
    std::ofstream f(rc.json_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << rc.json_path << "\n";
      return 2;
    }
    f << text;
  }
  if (!rc.csv_path.empty() && sets) {
    std::ofstream f(rc.csv_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << rc.csv_path << "\n";
      return 2;
    }
    f << root_sets_to_csv(*sets);
  }
  return 0;
}

int cmd_check(const RunConfig &rc) {
  static const char *stages[] = {"algebra",    "global",      "vacuum",
                                 "commuting",  "eigenstates", "coefficients"};
  std::string stop;
  if (!rc.stage.empty()) {
    for (const char *s : stages)
      if (rc.stage == s) stop = s;
    if (stop.empty()) {
      std::cerr << "unknown stage: " << rc.stage << "\n";
      return 2;
    }
  }
  const auto reports = full_suite(rc.params, rc.search, rc.max_n, stop);
  const ordered_json doc = check_document(rc.params, rc.search, reports);
  const int werr = write_outputs(rc, doc, nullptr);
  if (werr) return werr;
  bool ok = true;
  for (const CheckReport &r : reports) {
    std::cerr << (r.pass ? "pass" : "FAIL") << "  " << r.name << "  max="
              << r.max_residual << "  tol=" << r.tolerance << "\n";
    if (stop.empty() || r.name.rfind(stop, 0) == 0) ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

int cmd_solve(const RunConfig &rc) {
  if (rc.n < 1) {
    std::cerr << "--n must be >= 1\n";
    return 2;
  }
  if (rc.n > 3 && !rc.allow_conjectural) {
    std::cerr << "n = " << rc.n
              << " uses formulas unverified beyond n = 3; rerun with "
                 "--allow-conjectural to proceed\n";
    return 2;
  }
  std::vector<RootSet> sets;
  try {
    sets = multi_start(rc.params, rc.n, rc.search);
  } catch (const std::exception &e) {
    std::cerr << "solve failed: " << e.what() << "\n";
    return 2;
  }
  const ordered_json doc = solve_document(rc.params, rc.search, rc.n, sets);
  return write_outputs(rc, doc, &sets);
}

int cmd_verify(const RunConfig &rc, bool kind_set) {
  std::ifstream f(rc.roots_path);
  if (!f) {
    std::cerr << "cannot read " << rc.roots_path << "\n";
    return 2;
  }
  ordered_json doc;
  ModelParams p;
  std::vector<RootSet> sets;
  try {
    f >> doc;
    p = params_from_json(doc.at("model"));
    const std::string stored = doc.at("params_fingerprint").get<std::string>();
    if (stored != params_fingerprint(p)) {
      std::cerr << "stale roots file: fingerprint mismatch\n";
      return 1;
    }
    for (const auto &r : doc.at("roots"))
      sets.push_back(root_set_from_json(r));
  } catch (const std::exception &e) {
    std::cerr << "malformed roots file: " << e.what() << "\n";
    return 2;
  }
  if (kind_set && rc.params.kind != p.kind) {
    std::cerr << "model mismatch: roots file is for " << kind_name(p.kind)
              << "\n";
    return 2;
  }
  const std::vector<cx> samples = {cx(0.31, -0.12), cx(-0.27, 0.41),
                                   cx(0.63, 0.29), cx(0.11, 0.57),
                                   cx(-0.73, 0.21)};
  std::vector<CheckReport> stages;
  bool ok = true;
  for (size_t i = 0; i < sets.size(); ++i) {
    CheckReport rep;
    rep.name = "roots of set " + std::to_string(i);
    rep.tolerance = 1e-10;
    double worst = 0.0;
    try {
      for (size_t j = 0; j < sets[i].rapidities.size(); ++j)
        worst = std::max(worst, std::abs(bethe_residual(
                                    p, sets[i].rapidities, (int)j)));
      rep.max_residual = worst;
      rep.pass = worst < rep.tolerance;
    } catch (const std::exception &e) {
      rep.details = e.what();
    }
    stages.push_back(rep);
    CheckReport eig = check_eigenstate(p, sets[i].rapidities, samples);
    eig.name = "eigenstate of set " + std::to_string(i);
    stages.push_back(eig);
    ok = ok && rep.pass && eig.pass;
  }
  const ordered_json out = verify_document(p, sets, stages);
  const int werr = write_outputs(rc, out, &sets);
  if (werr) return werr;
  for (const CheckReport &r : stages)
    std::cerr << (r.pass ? "pass" : "FAIL") << "  " << r.name << "  max="
              << r.max_residual << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"open-boundary 19-vertex Bethe laboratory"};
  app.require_subcommand(1);

  RunConfig rc;
  rc.params.length = 2;
  bool kind_set = false;
  std::string config_path;
  if (const char *env = std::getenv("BETHE19_SEED"))
    rc.search.seed = std::strtoull(env, nullptr, 10);

  app.add_option("--config", config_path,
                 "JSON file with {model:{...}, search:{...}, max_n:...}; "
                 "command-line flags override it")
      ->check(CLI::ExistingFile);

  CLI::App *check = app.add_subcommand("check", "run the verification suite");
  add_model_options(check, rc, kind_set);
  add_search_options(check, rc);
  check->add_option("--max-n", rc.max_n, "largest excitation number checked");
  check->add_option("--stage", rc.stage,
                    "stop after this stage and gate the exit code on it");
  check->add_option("--json", rc.json_path, "write the report here ('-' = stdout)");

  CLI::App *solve = app.add_subcommand("solve", "scan for Bethe roots");
  add_model_options(solve, rc, kind_set);
  add_search_options(solve, rc);
  solve->add_option("--n", rc.n, "number of rapidities");
  solve->add_flag("--allow-conjectural", rc.allow_conjectural,
                  "permit n > 3 (formulas unverified there)");
  solve->add_option("--json", rc.json_path, "write the document here");
  solve->add_option("--csv", rc.csv_path, "also write roots as CSV");

  CLI::App *verify = app.add_subcommand("verify", "re-certify a roots file");
  add_model_options(verify, rc, kind_set);
  verify->add_option("--roots", rc.roots_path, "solve output to re-check")
      ->required()
      ->check(CLI::ExistingFile);
  verify->add_option("--json", rc.json_path, "write the report here");

  // first pass parses --config before the flags that may override it
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!config_path.empty()) {
    try {
      std::ifstream f(config_path);
      ordered_json j;
      f >> j;
      if (j.contains("model")) rc.params = params_from_json(j.at("model"));
      if (j.contains("search")) rc.search = config_from_json(j.at("search"));
      if (j.contains("max_n")) rc.max_n = j.at("max_n").get<int>();
      if (j.contains("n")) rc.n = j.at("n").get<int>();
      // flags win over the file: re-parse
      app.clear();
      app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
      const int code = app.exit(e);
      return code == 0 ? 0 : 2;
    } catch (const std::exception &e) {
      std::cerr << "bad --config file: " << e.what() << "\n";
      return 2;
    }
  }

  try {
    rc.params.validate();
  } catch (const std::exception &e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return 2;
  }

  try {
    if (check->parsed()) return cmd_check(rc);
    if (solve->parsed()) return cmd_solve(rc);
    if (verify->parsed()) return cmd_verify(rc, kind_set);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
