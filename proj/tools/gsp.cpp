// Command-line front end: validation, rewriting, confluence checking,
// saturation-based proving and the Turing-machine demo generator.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsp/circuits.hpp"
#include "gsp/errors.hpp"
#include "gsp/io.hpp"
#include "gsp/oracle.hpp"
#include "gsp/superposition.hpp"
#include "gsp/tm.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnsat = 10;
constexpr int kExitSaturated = 20;
constexpr int kExitResourceOut = 30;
constexpr int kExitOracleDisagreement = 40;

struct Options {
  std::string file;
  std::string graph;
  std::string order = "node-count";
  std::string crelation;  // empty: use the problem's directive
  std::size_t fuel = 0;
  std::size_t merges = 0;
  std::size_t literals = 0;
  std::size_t jobs = 1;
  std::uint64_t seed = 0;
  bool oracle = false;
  bool as_json = false;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const Options& opt, const std::string& text, const json& record) {
  if (opt.as_json)
    std::cout << record.dump() << "\n";
  else
    std::cout << text << "\n";
}

std::optional<gsp::ProblemFile> load_problem(const Options& opt, int& exit_code) {
  auto text = read_file(opt.file);
  if (!text) {
    std::cerr << "cannot read " << opt.file << "\n";
    exit_code = kExitUsage;
    return std::nullopt;
  }
  gsp::ParseResult parsed = gsp::parse_problem(*text);
  if (!parsed.problem) {
    for (const std::string& e : parsed.errors) std::cerr << opt.file << ": " << e << "\n";
    exit_code = kExitUsage;
    return std::nullopt;
  }
  return std::move(parsed.problem);
}

const gsp::CRelation& select_crelation(const Options& opt, const gsp::ProblemFile& p) {
  std::string name = opt.crelation.empty() ? p.directives.crelation : opt.crelation;
  return name == "circuits" ? gsp::circuits_crelation() : gsp::CRelation::plain();
}

gsp::SaturationConfig saturation_config(const Options& opt, const gsp::ProblemFile& p) {
  gsp::SaturationConfig config;
  config.max_literals = opt.literals ? opt.literals : p.directives.literals;
  config.merge_budget = opt.merges ? opt.merges : p.directives.merges;
  config.rewrite_fuel = opt.fuel ? opt.fuel : p.directives.fuel;
  config.order = &gsp::GraphOrder::node_count();
  config.crelation = &select_crelation(opt, p);
  return config;
}

int run_validate(const Options& opt) {
  int code = kExitOk;
  auto problem = load_problem(opt, code);
  if (!problem) return code;
  bool all_ok = true;
  for (const auto& [name, g] : problem->graphs) {
    std::vector<std::string> violations = gsp::validate_graph(g);
    if (problem->directives.crelation == "circuits")
      for (const std::string& v : gsp::validate_circuit(g).violations) violations.push_back(v);
    if (violations.empty()) {
      emit(opt, "graph " + name + ": ok", {{"graph", name}, {"ok", true}});
    } else {
      all_ok = false;
      for (const std::string& v : violations)
        emit(opt, "graph " + name + ": " + v, {{"graph", name}, {"ok", false}, {"violation", v}});
    }
  }
  return all_ok ? kExitOk : kExitUsage;
}

int run_rewrite(const Options& opt, bool to_normal_form) {
  int code = kExitOk;
  auto problem = load_problem(opt, code);
  if (!problem) return code;
  const gsp::Graph* g = problem->find_graph(opt.graph);
  if (!g) {
    std::cerr << "unknown graph '" << opt.graph << "'\n";
    return kExitUsage;
  }
  const gsp::CRelation& crel = select_crelation(opt, *problem);
  gsp::RuleSet rules = problem->rule_set();
  if (to_normal_form) {
    std::size_t fuel = opt.fuel ? opt.fuel : problem->directives.fuel;
    gsp::NormalizeResult r = gsp::normalize(*g, rules, crel, fuel);
    std::string status =
        r.status == gsp::NormalizeResult::Status::NormalForm ? "NormalForm" : "FuelExhausted";
    emit(opt, status + " after " + std::to_string(r.steps) + " steps: " + r.graph.to_string(),
         {{"status", status}, {"steps", r.steps}, {"graph", r.graph.to_string()}});
  } else {
    auto successors = gsp::rewrite_step(*g, rules, crel);
    emit(opt, std::to_string(successors.size()) + " successors",
         {{"successors", successors.size()}});
    for (const auto& s : successors)
      emit(opt, s.rule + ": " + s.graph.to_string(),
           {{"rule", s.rule}, {"graph", s.graph.to_string()}});
  }
  return kExitOk;
}

int run_critical_pairs(const Options& opt, bool check_confluence) {
  int code = kExitOk;
  auto problem = load_problem(opt, code);
  if (!problem) return code;
  const gsp::CRelation& crel = select_crelation(opt, *problem);
  gsp::RuleSet rules = problem->rule_set();
  std::size_t merges = opt.merges ? opt.merges : problem->directives.merges;
  std::size_t fuel = opt.fuel ? opt.fuel : problem->directives.fuel;

  if (check_confluence) {
    gsp::ConfluenceResult r = gsp::check_local_confluence(rules, crel, fuel, merges);
    std::string verdict;
    switch (r.verdict) {
      case gsp::ConfluenceResult::Verdict::LocallyConfluent: verdict = "LocallyConfluent"; break;
      case gsp::ConfluenceResult::Verdict::CounterexampleCandidate:
        verdict = "CounterexampleCandidate";
        break;
      case gsp::ConfluenceResult::Verdict::Inconclusive: verdict = "Inconclusive"; break;
    }
    emit(opt, verdict + " (" + std::to_string(r.pair_count) + " critical pairs)",
         {{"verdict", verdict}, {"pairs", r.pair_count}, {"truncated", r.pairs_truncated}});
    if (r.counterexample)
      emit(opt,
           "candidate: " + r.counterexample->rule_left + " / " + r.counterexample->rule_right +
               "  left=" + r.counterexample->left.to_string() +
               "  right=" + r.counterexample->right.to_string(),
           {{"rule_left", r.counterexample->rule_left},
            {"rule_right", r.counterexample->rule_right}});
    return kExitOk;
  }

  gsp::CriticalPairsResult r = gsp::critical_pairs(rules, crel, merges);
  for (const gsp::CriticalPair& p : r.pairs) {
    gsp::JoinResult join = gsp::is_joinable(p, rules, crel, fuel);
    std::string verdict = join.status == gsp::JoinResult::Status::Joinable
                              ? "joinable"
                              : (join.exhaustive ? "not-joinable" : "unknown");
    std::ostringstream line;
    line << p.rule_left << " / " << p.rule_right << " overlap=" << p.overlap.node_count()
         << (p.trivial ? " trivial " : " ") << verdict;
    emit(opt, line.str(),
         {{"rule_left", p.rule_left},
          {"rule_right", p.rule_right},
          {"overlap_nodes", p.overlap.node_count()},
          {"trivial", p.trivial},
          {"verdict", verdict}});
  }
  if (r.truncated)
    emit(opt, "warning: enumeration truncated by the merge budget", {{"truncated", true}});
  return kExitOk;
}

int run_saturate(const Options& opt, bool as_prove) {
  int code = kExitOk;
  auto problem = load_problem(opt, code);
  if (!problem) return code;
  gsp::GraphFormula input;
  for (gsp::GraphLiteral& l : problem->literals()) input.insert(std::move(l));
  gsp::SaturationConfig config = saturation_config(opt, *problem);
  gsp::ProverResult result = gsp::saturate(input, config);

  std::string status = gsp::to_string(result.status);
  emit(opt, status + " (" + result.stats.to_string() + ")",
       {{"status", status},
        {"generated", result.stats.generated},
        {"kept", result.stats.kept},
        {"processed", result.stats.processed}});
  if (result.status == gsp::ProverResult::Status::Unsat) {
    for (const gsp::InferenceRecord& r : result.proof)
      emit(opt, r.to_string(), {{"record", r.to_string()}});
    if (as_prove) emit(opt, "goal proved", {{"proved", true}});
  } else if (as_prove) {
    std::string note = result.status == gsp::ProverResult::Status::Saturated
                           ? "not entailed (saturated under budgets)"
                           : "undecided (resources exhausted)";
    emit(opt, note, {{"proved", false}, {"note", note}});
  }

  if (opt.oracle && result.status == gsp::ProverResult::Status::Unsat) {
    // Confirm the refuted disequations against the bounded-congruence oracle.
    std::vector<gsp::GraphLiteral> axioms;
    std::vector<gsp::GraphLiteral> goals;
    for (const gsp::GraphLiteral& l : input.literals) {
      if (l.kind() == gsp::GraphLiteral::Kind::Eq) axioms.push_back(l);
      if (l.kind() == gsp::GraphLiteral::Kind::Neq && l.is_ground()) goals.push_back(l);
    }
    gsp::UniverseBounds bounds;
    std::set<gsp::Sort> sorts;
    std::set<gsp::Term> labels;
    std::size_t max_roots = 0;
    for (const gsp::GraphLiteral& l : input.literals) {
      for (const gsp::Graph* g : {&l.lhs(), &l.rhs()}) {
        bounds.max_nodes = std::max(bounds.max_nodes, g->node_count());
        bounds.max_edges = std::max(bounds.max_edges, g->edge_count());
        max_roots = std::max(max_roots, g->roots.size());
        for (const gsp::NodeId& n : g->nodes) sorts.insert(n.sort);
        for (const auto& [n, t] : g->labels)
          if (t.is_ground()) labels.insert(t);
      }
    }
    bounds.max_roots = max_roots;
    bounds.sorts.assign(sorts.begin(), sorts.end());
    bounds.labels.assign(labels.begin(), labels.end());
    try {
      gsp::GroundUniverse universe = gsp::enumerate_universe(bounds, *config.crelation);
      for (const gsp::GraphLiteral& goal : goals) {
        gsp::EntailVerdict v =
            gsp::entails_bounded(axioms, goal.negated(), universe, *config.crelation);
        if (v != gsp::EntailVerdict::Yes) {
          emit(opt, "oracle disagreement on " + goal.to_string(), {{"oracle", "disagree"}});
          return kExitOracleDisagreement;
        }
      }
      emit(opt, "oracle confirmed", {{"oracle", "confirmed"}});
    } catch (const gsp::BoundsTooLarge&) {
      emit(opt, "oracle skipped: universe bounds too large", {{"oracle", "skipped"}});
    }
  }

  switch (result.status) {
    case gsp::ProverResult::Status::Unsat: return kExitUnsat;
    case gsp::ProverResult::Status::Saturated: return kExitSaturated;
    case gsp::ProverResult::Status::ResourceOut: return kExitResourceOut;
  }
  return kExitResourceOut;
}

int run_export_dot(const Options& opt) {
  int code = kExitOk;
  auto problem = load_problem(opt, code);
  if (!problem) return code;
  if (!opt.graph.empty()) {
    const gsp::Graph* g = problem->find_graph(opt.graph);
    if (!g) {
      std::cerr << "unknown graph '" << opt.graph << "'\n";
      return kExitUsage;
    }
    std::cout << gsp::export_dot(*g, &*problem);
    return kExitOk;
  }
  for (const auto& [name, g] : problem->graphs) {
    std::cout << "// graph " << name << "\n" << gsp::export_dot(g, &*problem);
  }
  return kExitOk;
}

int run_gen_tm(const Options& opt) {
  auto text = read_file(opt.file);
  if (!text) {
    std::cerr << "cannot read " << opt.file << "\n";
    return kExitUsage;
  }
  try {
    gsp::TuringMachine machine = gsp::parse_machine(*text);
    gsp::ProblemFile problem = gsp::gen_tm(machine);
    std::cout << gsp::serialize_problem(problem);
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph rewriting and superposition proving"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_graph = false) {
    cmd->add_option("file", opt.file, "problem file (.gsp)")->required();
    if (needs_graph) cmd->add_option("--graph", opt.graph, "graph name");
    cmd->add_option("--order", opt.order, "graph reduction order (node-count)")
        ->check(CLI::IsMember({"node-count"}));
    cmd->add_option("--crelation", opt.crelation, "plain or circuits")
        ->check(CLI::IsMember({"plain", "circuits"}));
    cmd->add_option("--fuel", opt.fuel, "rewrite fuel");
    cmd->add_option("--merges", opt.merges, "merge enumeration budget");
    cmd->add_option("--literals", opt.literals, "generated literal cap");
    cmd->add_option("--jobs", opt.jobs, "worker cap (evaluation is deterministic)");
    cmd->add_option("--seed", opt.seed, "seed for randomized strategies (reserved)");
    cmd->add_flag("--json", opt.as_json, "machine-readable output");
  };

  auto* validate = app.add_subcommand("validate", "check every graph in the file");
  add_common(validate);
  auto* rewrite = app.add_subcommand("rewrite", "one rewrite step on --graph");
  add_common(rewrite, true);
  auto* normalize = app.add_subcommand("normalize", "rewrite --graph to normal form");
  add_common(normalize, true);
  auto* cps = app.add_subcommand("critical-pairs", "enumerate critical pairs");
  add_common(cps);
  auto* confluence = app.add_subcommand("confluence", "check local confluence");
  add_common(confluence);
  auto* saturate = app.add_subcommand("saturate", "saturate the asserted literals");
  add_common(saturate);
  saturate->add_flag("--oracle", opt.oracle, "cross-check Unsat against the bounded oracle");
  auto* prove = app.add_subcommand("prove", "refute the asserted disequation");
  add_common(prove);
  prove->add_flag("--oracle", opt.oracle, "cross-check Unsat against the bounded oracle");
  auto* exportdot = app.add_subcommand("export-dot", "DOT export of graphs");
  add_common(exportdot, true);
  auto* gentm = app.add_subcommand("gen-tm", "emit the problem for a Turing machine");
  gentm->add_option("file", opt.file, "machine description file")->required();
  gentm->add_flag("--json", opt.as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) return run_validate(opt);
    if (rewrite->parsed()) return run_rewrite(opt, false);
    if (normalize->parsed()) return run_rewrite(opt, true);
    if (cps->parsed()) return run_critical_pairs(opt, false);
    if (confluence->parsed()) return run_critical_pairs(opt, true);
    if (saturate->parsed()) return run_saturate(opt, false);
    if (prove->parsed()) return run_saturate(opt, true);
    if (exportdot->parsed()) return run_export_dot(opt);
    if (gentm->parsed()) return run_gen_tm(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
