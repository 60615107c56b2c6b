// Copyright 2026 The gct Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "gct/algebra.hpp"
#include "gct/errors.hpp"
#include "gct/model.hpp"
#include "gct/nonlocality.hpp"
#include "gct/rewrite.hpp"
#include "gct/signatures.hpp"
#include "gct/text_format.hpp"

namespace gct::cli {
namespace {

// Bad input the user can fix: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

TheoryFixture load_fixture(const std::string& name) {
  const std::vector<std::string> names = fixture_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw UsageError("unknown theory '" + name + "'");
  }
  return fixture_by_name(name);
}

ObservablePair load_pair(const std::string& name) {
  try {
    return pair_by_name(name);
  } catch (const PreconditionError&) {
    throw UsageError("unknown pair '" + name + "'");
  }
}

// Angles in degrees ("0,90,90"); tokens with "pi" or ':' go through
// Phase::parse ("pi/2", "z4:1"). Group elements with several components
// contain commas, so a list holding a ';' is split on ';' instead.
std::vector<Phase> parse_angles(const std::string& list) {
  std::vector<Phase> out;
  std::stringstream ss(list);
  std::string tok;
  const char sep = list.find(';') != std::string::npos ? ';' : ',';
  while (std::getline(ss, tok, sep)) {
    if (tok.find("pi") != std::string::npos || tok.find(':') != std::string::npos) {
      out.push_back(Phase::parse(tok));
      continue;
    }
    size_t used = 0;
    double deg = 0.0;
    try {
      deg = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw UsageError("bad angle '" + tok + "'");
    out.push_back(Phase::angle(deg * kPi / 180.0));
  }
  return out;
}

struct EvalOptions {
  std::string file;
  std::string theory;
  std::string model;
  uint64_t seed = 0;
};

int run_eval(const EvalOptions& o, std::ostream& out) {
  const ParsedDiagram parsed = parse_diagram(read_file(o.file));
  const std::string theory = o.theory.empty() ? parsed.signature : o.theory;
  if (theory.empty() || theory == "none") throw UsageError("no theory given");
  const TheoryFixture fx = load_fixture(theory);
  fx.signature.check(parsed.diagram);
  const ModelBinding& m =
      o.model.empty() ? fx.models.front() : fx.model(o.model);
  out << serialize_tensor(interpret(parsed.diagram, m, o.seed), 12);
  return kExitOk;
}

struct RewriteOptions {
  std::string file;
  std::string theory;
  std::vector<std::string> rules;
  std::vector<std::string> rule_files;
  std::string pair = "z2";
  std::string strategy = "nf";
};

int run_rewrite(const RewriteOptions& o, std::ostream& out) {
  const ParsedDiagram parsed = parse_diagram(read_file(o.file));
  const std::string theory = o.theory.empty() ? parsed.signature : o.theory;
  std::optional<TheoryFixture> fx;
  if (!theory.empty() && theory != "none") fx = load_fixture(theory);

  std::vector<RewriteRule> rules;
  for (const std::string& name : o.rules) {
    bool found = false;
    if (fx) {
      for (const RewriteRule& r : fx->rules) {
        if (r.name == name) {
          rules.push_back(r);
          found = true;
        }
      }
    }
    if (found) continue;
    const std::vector<std::string> builtins = builtin_rule_names();
    if (std::find(builtins.begin(), builtins.end(), name) == builtins.end()) {
      throw UsageError("unknown rule '" + name + "'");
    }
    const Diagram& d = parsed.diagram;
    System sys;
    if (!d.inputs().empty()) {
      sys = d.inputs().front();
    } else if (!d.outputs().empty()) {
      sys = d.outputs().front();
    } else if (fx && !fx->signature.systems.empty()) {
      sys = fx->signature.systems.front();
    } else {
      throw UsageError("cannot infer the system for builtin rule '" + name + "'");
    }
    rules.push_back(builtin_rule(name, load_pair(o.pair), sys).rule);
  }
  for (const std::string& path : o.rule_files) rules.push_back(parse_rule(read_file(path)));

  Diagram result;
  if (o.strategy == "fuse") {
    result = spider_fuse(parsed.diagram);
  } else {
    int budget = kDefaultStepBudget;
    if (o.strategy.rfind("steps=", 0) == 0) {
      try {
        budget = std::stoi(o.strategy.substr(6));
      } catch (const std::exception&) {
        throw UsageError("bad strategy '" + o.strategy + "'");
      }
      if (budget < 0) throw UsageError("negative step budget");
    } else if (o.strategy != "nf") {
      throw UsageError("unknown strategy '" + o.strategy + "'");
    }
    if (rules.empty()) throw UsageError("no rules given");
    const RewriteResult r = normalize(rules, parsed.diagram, budget);
    for (size_t i = 0; i < r.steps.size(); ++i) {
      out << "# step " << i + 1 << ": " << r.steps[i].rule
          << (r.steps[i].reversed ? " (reversed)" : "") << " at";
      for (int n : r.steps[i].image) out << ' ' << n;
      out << '\n';
    }
    if (r.budget_exhausted) out << "# budget exhausted\n";
    result = r.diagram;
  }
  out << print_diagram(result, theory.empty() ? "none" : theory);
  return kExitOk;
}

struct CheckOptions {
  std::string pair;
  std::string law = "all";
  int k = 0;
};

const std::vector<std::string>& law_names() {
  static const std::vector<std::string> names = {
      "frobenius", "complementarity", "coherence", "strong-complementarity",
      "exponent",  "sharpness",       "all"};
  return names;
}

int run_check(const CheckOptions& o, std::ostream& out) {
  const auto& names = law_names();
  if (std::find(names.begin(), names.end(), o.law) == names.end()) {
    throw UsageError("unknown law '" + o.law + "'");
  }
  const ObservablePair pair = load_pair(o.pair);
  const bool all = o.law == "all";
  std::vector<LawReport> reports;
  if (all || o.law == "frobenius") {
    reports.push_back(check_frobenius(pair.white));
    reports.back().subject = "frobenius white";
    reports.push_back(check_frobenius(pair.gray));
    reports.back().subject = "frobenius gray";
  }
  if (all || o.law == "complementarity") {
    reports.push_back(check_complementarity(pair));
    reports.back().subject = "complementarity";
  }
  if (all || o.law == "coherence") {
    reports.push_back(check_coherence(pair));
    reports.back().subject = "coherence";
  }
  if (all || o.law == "strong-complementarity") {
    reports.push_back(check_strong_complementarity(pair));
    reports.back().subject = "strong-complementarity";
  }
  if (all || o.law == "exponent") {
    reports.push_back(o.k > 0 ? check_exponent_law(pair, o.k) : check_exponent_law(pair));
    reports.back().subject = "exponent";
  }
  if (o.law == "sharpness") {
    reports.push_back(check_sharpness_implies_sc(pair));
    reports.back().subject = "sharpness";
  }
  bool pass = true;
  for (const LawReport& r : reports) {
    out << "[" << r.subject << "]\n" << r.to_string();
    pass = pass && r.all_pass();
  }
  out << (pass ? "all laws hold" : "some laws fail") << '\n';
  return pass ? kExitOk : kExitCheckFailed;
}

struct GhzOptions {
  int parties = 3;
  std::string angles;
  std::string pair = "z2";
};

int run_ghz(const GhzOptions& o, std::ostream& out) {
  const ObservablePair pair = load_pair(o.pair);
  const std::vector<Phase> angles = parse_angles(o.angles);
  if (static_cast<int>(angles.size()) != o.parties) {
    throw UsageError("expected " + std::to_string(o.parties) + " angles, got " +
                     std::to_string(angles.size()));
  }
  const GhzCorrelation c = ghz_correlations(pair, angles);
  out << c.to_string() << '\n';
  if (o.parties == 3) {
    try {
      const MerminReport r = mermin_report(pair);
      out << "[mermin]\n";
      out << "parities:";
      for (size_t i = 0; i < r.parities.size(); ++i) {
        out << ' ' << r.table.settings[i] << '=';
        if (r.parities[i]) {
          out << *r.parities[i];
        } else {
          out << '?';
        }
      }
      out << '\n' << r.lhv.to_string() << '\n';
      out << "contradiction: " << (r.contradiction ? "yes" : "no") << '\n';
      return kExitOk;
    } catch (const PreconditionError& e) {
      out << "[mermin]\nnot applicable: " << e.what() << '\n';
    }
  }
  // Fall back to the one measured setting.
  std::string setting(o.parties, 'M');
  std::map<std::string, int> constraints;
  if (const auto p = c.definite_parity()) constraints[setting] = *p;
  if (o.parties <= 3 && c.outcome_moduli.size() == 1) {
    out << "[lhv]\n" << lhv_search({setting}, constraints, c.outcome_moduli[0]).to_string()
        << '\n';
  }
  return kExitOk;
}

struct SoundnessOptions {
  std::string theory = "boolcirc";
  std::string model;
  int samples = 16;
  uint64_t seed = 1;
};

int run_soundness(const SoundnessOptions& o, std::ostream& out) {
  const TheoryFixture fx = load_fixture(o.theory);
  if (!o.model.empty()) fx.model(o.model);  // rejects unknown names
  bool sound = true;
  for (const ModelBinding& m : fx.models) {
    if (!o.model.empty() && m.name != o.model) continue;
    const SoundnessReport r = check_soundness(fx.rules, m, o.samples, o.seed);
    out << "[model " << m.name << "]\n" << r.to_string();
    sound = sound && r.all_sound();
  }
  return sound ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Typed string diagrams: evaluation, rewriting, law checks"};
  app.require_subcommand(1);

  EvalOptions eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a diagram file in a model");
  eval_cmd->add_option("file", eval.file, "Diagram file")->required();
  eval_cmd->add_option("--theory", eval.theory, "Theory fixture (default: the file's)");
  eval_cmd->add_option("--model", eval.model, "Model name (default: the first)");
  eval_cmd->add_option("--seed", eval.seed, "Contraction order seed");

  RewriteOptions rw;
  CLI::App* rw_cmd = app.add_subcommand("rewrite", "Rewrite a diagram file");
  rw_cmd->add_option("file", rw.file, "Diagram file")->required();
  rw_cmd->add_option("--theory", rw.theory, "Theory fixture (default: the file's)");
  rw_cmd->add_option("--rule", rw.rules, "Fixture or builtin rule name");
  rw_cmd->add_option("--rule-file", rw.rule_files, "Rule file");
  rw_cmd->add_option("--pair", rw.pair, "Observable pair for builtin rules");
  rw_cmd->add_option("--strategy", rw.strategy, "fuse, nf, or steps=N");

  CheckOptions check;
  CLI::App* check_cmd = app.add_subcommand("check", "Check algebraic laws of an observable pair");
  check_cmd->add_option("--pair", check.pair, "Pair name")->required();
  check_cmd->add_option("--law", check.law,
                        "frobenius, complementarity, coherence, "
                        "strong-complementarity, exponent, sharpness, all");
  check_cmd->add_option("--k", check.k, "Exponent for the exponent law");

  GhzOptions ghz;
  CLI::App* ghz_cmd = app.add_subcommand("ghz", "GHZ correlations and hidden-state search");
  ghz_cmd->add_option("--parties", ghz.parties, "Number of systems");
  ghz_cmd->add_option("--angles", ghz.angles, "Comma-separated degrees")->required();
  ghz_cmd->add_option("--pair", ghz.pair, "Pair name");

  SoundnessOptions snd;
  CLI::App* snd_cmd = app.add_subcommand("soundness", "Check fixture rules in their models");
  snd_cmd->add_option("--theory", snd.theory, "Theory fixture");
  snd_cmd->add_option("--model", snd.model, "Only this model");
  snd_cmd->add_option("--samples", snd.samples, "Random closures per rule");
  snd_cmd->add_option("--seed", snd.seed, "Sampling seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval_cmd) return run_eval(eval, out);
    if (*rw_cmd) return run_rewrite(rw, out);
    if (*check_cmd) return run_check(check, out);
    if (*ghz_cmd) return run_ghz(ghz, out);
    if (*snd_cmd) return run_soundness(snd, out);
  } catch (const ParseError& e) {
    err << "error: line " << e.line() << ", column " << e.column() << ": "
        << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GctError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace gct::cli
