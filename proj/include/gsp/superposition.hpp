// Unit superposition on graph literals: the positive/negative superposition
// and reflection rules, the redundancy criterion, the given-literal
// saturation loop and the refutation wrapper.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gsp/literal.hpp"
#include "gsp/order.hpp"
#include "gsp/rewrite.hpp"

namespace gsp {

struct InferenceRecord {
  enum class Rule { Input, SupPos, SupNeg, Reflection };

  std::size_t id = 0;
  Rule rule = Rule::Input;
  std::vector<std::size_t> premises;
  Substitution unifier;
  NodeRenaming renaming_left;   // applied to the first premise
  NodeRenaming renaming_right;  // applied to the second premise
  GraphLiteral conclusion = GraphLiteral::falsum();

  std::string to_string() const;
};

struct SaturationConfig {
  std::size_t max_literals = 10000;  // cap on generated conclusions
  std::size_t merge_budget = 500;    // per-inference overlap/edge-set cap
  std::size_t rewrite_fuel = 100;    // rewriting fuel reported to callers
  std::size_t demod_budget = 12;     // case-4 rewrite attempts per redundancy query
  const GraphOrder* order = &GraphOrder::node_count();
  const CRelation* crelation = &CRelation::plain();
};

struct SaturationStats {
  std::size_t generated = 0;
  std::size_t kept = 0;
  std::size_t discarded_redundant = 0;
  std::size_t processed = 0;
  bool merge_budget_hit = false;

  std::string to_string() const;
};

struct ProverResult {
  enum class Status { Unsat, Saturated, ResourceOut };

  Status status = Status::ResourceOut;
  std::vector<InferenceRecord> proof;  // Unsat: pruned derivation of falsum
  GraphFormula final_formula;
  SaturationStats stats;
};

std::string to_string(ProverResult::Status s);

// Positive unit superposition: all conclusions obtainable by merging the two
// equations' sides on a nonempty node overlap within the merge budget.
// Premises must already be node- and variable-disjoint.
std::vector<GraphLiteral> infer_sup_pos(const GraphLiteral& eq1, const GraphLiteral& eq2,
                                        const GraphOrder& order, const CRelation& c,
                                        std::size_t merge_budget, bool* budget_hit = nullptr);

// Negative unit superposition: rewrites either side of the disequation with
// the equation under a most general embedding substitution.
std::vector<GraphLiteral> infer_sup_neg(const GraphLiteral& neq, const GraphLiteral& eq,
                                        const GraphOrder& order, const CRelation& c);

// Falsum when a node renaming plus label substitution equates the two sides.
std::optional<GraphLiteral> infer_reflection(const GraphLiteral& neq);

// The four-case redundancy criterion. Cases 2 and 4 apply to ground
// literals; non-ground literals are only checked for subsumption.
bool is_redundant(const GraphLiteral& l, const GraphFormula& s, const GraphOrder& order,
                  std::size_t fuel, const CRelation& c = CRelation::plain());

ProverResult saturate(const GraphFormula& s, const SaturationConfig& config);

// Saturates axioms plus the negated goal; Unsat means the axioms entail it.
ProverResult prove(const std::vector<GraphLiteral>& axioms, const GraphLiteral& goal,
                   const SaturationConfig& config);

// Re-executes a refutation: every non-input record's conclusion must be
// reproducible from its premises by the recorded rule.
bool replay_proof(const std::vector<InferenceRecord>& proof, const SaturationConfig& config);

}  // namespace gsp
