#include "gsp/superposition.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "gsp/errors.hpp"

namespace gsp {

std::string InferenceRecord::to_string() const {
  std::ostringstream out;
  out << id << ". ";
  switch (rule) {
    case Rule::Input: out << "input"; break;
    case Rule::SupPos: out << "sup+"; break;
    case Rule::SupNeg: out << "sup-"; break;
    case Rule::Reflection: out << "refl"; break;
  }
  if (!premises.empty()) {
    out << " [";
    for (std::size_t i = 0; i < premises.size(); ++i) {
      if (i) out << ", ";
      out << premises[i];
    }
    out << ']';
  }
  if (!unifier.empty()) out << ' ' << unifier.to_string();
  out << ' ' << conclusion.to_string();
  return out.str();
}

std::string SaturationStats::to_string() const {
  std::ostringstream out;
  out << "generated=" << generated << " kept=" << kept << " redundant=" << discarded_redundant
      << " processed=" << processed << " merge_budget_hit=" << (merge_budget_hit ? 1 : 0);
  return out.str();
}

std::string to_string(ProverResult::Status s) {
  switch (s) {
    case ProverResult::Status::Unsat: return "Unsat";
    case ProverResult::Status::Saturated: return "Saturated";
    case ProverResult::Status::ResourceOut: return "ResourceOut";
  }
  return "ResourceOut";
}

namespace {

struct OrientedEq {
  const Graph& from;
  const Graph& to;
};

// Both reading directions of an unordered (dis)equation.
std::vector<OrientedEq> orientations(const GraphLiteral& l) {
  return {{l.lhs(), l.rhs()}, {l.rhs(), l.lhs()}};
}

std::uint32_t max_literal_node_id(const GraphLiteral& l) {
  std::uint32_t m = 0;
  for (const NodeId& n : l.all_nodes()) m = std::max(m, n.id);
  return m;
}

}  // namespace

std::vector<GraphLiteral> infer_sup_pos(const GraphLiteral& eq1, const GraphLiteral& eq2,
                                        const GraphOrder& order, const CRelation& c,
                                        std::size_t merge_budget, bool* budget_hit) {
  if (eq1.kind() != GraphLiteral::Kind::Eq || eq2.kind() != GraphLiteral::Kind::Eq)
    throw PreconditionError("infer_sup_pos expects two equations");

  std::vector<GraphLiteral> out;
  std::size_t spent = 0;
  for (const OrientedEq& o1 : orientations(eq1)) {
    for (const OrientedEq& o2 : orientations(eq2)) {
      const Graph& g = o1.from;
      const Graph& h = o2.from;
      enumerate_overlaps(g, h, c.preorder, [&](const std::map<NodeId, NodeId>& phi) -> bool {
        if (phi.empty()) return true;  // the rule demands a nonempty node overlap
        std::map<NodeId, NodeId> mapping = phi;
        for (const NodeId& n : eq2.all_nodes())
          if (!mapping.count(n)) mapping.emplace(n, n);
        NodeRenaming rho = NodeRenaming::make(mapping, c.preorder);
        Graph h_id = apply_renaming(rho, h);
        Graph h_rep = apply_renaming(rho, o2.to);

        std::vector<Edge> candidates;
        for (const NodeId& x : g.roots) {
          if (h_id.has_node(x)) continue;
          for (const NodeId& y : h_id.roots) {
            if (g.has_node(y)) continue;
            candidates.push_back({x, y});
            candidates.push_back({y, x});
          }
        }
        std::sort(candidates.begin(), candidates.end());
        const std::size_t full =
            candidates.size() >= 10 ? SIZE_MAX : (std::size_t{1} << candidates.size());
        std::vector<std::vector<Edge>> subsets = connecting_subsets(candidates, 64);
        if (subsets.size() < full && budget_hit) *budget_hit = true;
        for (const std::vector<Edge>& connecting : subsets) {
          if (++spent > merge_budget) {
            if (budget_hit) *budget_hit = true;
            return false;
          }
          auto merged = e_merge(g, h_id, connecting, c.merge_root_order);
          if (!merged) return true;  // label clash is independent of the edge set
          const Graph& overlap = merged->graph;
          const Substitution& sigma = merged->mgu;

          Graph img1 = apply_label_subst(sigma, g);
          Graph img2 = apply_label_subst(sigma, h_id);
          if (!c.sub(img1, overlap) || !c.sub(img2, overlap)) continue;
          Graph rep1 = apply_label_subst(sigma, o1.to);
          Graph rep2 = apply_label_subst(sigma, h_rep);
          // The subgraph checks above cover the replace preconditions; the
          // replacements only need root similarity and the node condition.
          auto substitutable_here = [&](const Graph& rep, const Graph& img) {
            if (!root_similar(img, rep, c.preorder)) return false;
            for (const NodeId& n : rep.nodes)
              if (overlap.has_node(n) && !img.has_node(n)) return false;
            return true;
          };
          if (!substitutable_here(rep1, img1) || !substitutable_here(rep2, img2)) continue;
          Graph left = detail::replace_subgraph_unchecked(overlap, img1, rep1);
          Graph right = detail::replace_subgraph_unchecked(overlap, img2, rep2);
          if (order.greater(left, overlap) || order.greater(right, overlap)) continue;
          if (isomorphic(left, right)) continue;  // every instance is reflexive
          GraphLiteral conclusion = GraphLiteral::eq(std::move(left), std::move(right), c.preorder);
          if (std::none_of(out.begin(), out.end(),
                           [&](const GraphLiteral& l) { return l == conclusion; }))
            out.push_back(std::move(conclusion));
        }
        return true;
      });
      if (spent > merge_budget) return out;
    }
  }
  return out;
}

std::vector<GraphLiteral> infer_sup_neg(const GraphLiteral& neq, const GraphLiteral& eq,
                                        const GraphOrder& order, const CRelation& c) {
  if (neq.kind() != GraphLiteral::Kind::Neq || eq.kind() != GraphLiteral::Kind::Eq)
    throw PreconditionError("infer_sup_neg expects a disequation and an equation");

  std::vector<GraphLiteral> out;
  for (const OrientedEq& on : orientations(neq)) {
    const Graph& target = on.from;
    const Graph& other = on.to;
    for (const OrientedEq& oe : orientations(eq)) {
      const Graph& pattern = oe.from;
      const Graph& replacement = oe.to;
      for (const Embedding& emb :
           enumerate_embeddings(pattern, target, EmbedMode::Unify, c.preorder)) {
        const Substitution& sigma = emb.subst;
        Graph host = apply_label_subst(sigma, target);
        Graph image = apply_label_subst(sigma, apply_renaming(emb.renaming, pattern));
        if (!c.sub(image, host)) continue;
        Graph inst_pattern = apply_label_subst(sigma, pattern);
        Graph inst_replacement = apply_label_subst(sigma, replacement);
        if (order.greater(apply_label_subst(sigma, other), host)) continue;
        if (order.greater(inst_replacement, inst_pattern)) continue;

        NodeRenaming full = emb.renaming;
        std::uint32_t next =
            std::max({max_literal_node_id(neq), max_literal_node_id(eq), host.max_node_id()}) + 1;
        for (const NodeId& n : replacement.nodes)
          if (!full.defined_on(n)) full.extend(n, NodeId{next++, n.sort});
        Graph rep_image = apply_label_subst(sigma, apply_renaming(full, replacement));
        if (!is_substitutable(rep_image, image, host, c.preorder)) continue;
        Graph rewritten = replace_subgraph(host, image, rep_image);
        GraphLiteral conclusion =
            GraphLiteral::neq(std::move(rewritten), apply_label_subst(sigma, other), c.preorder);
        if (std::none_of(out.begin(), out.end(),
                         [&](const GraphLiteral& l) { return l == conclusion; }))
          out.push_back(std::move(conclusion));
      }
    }
  }
  return out;
}

std::optional<GraphLiteral> infer_reflection(const GraphLiteral& neq) {
  if (neq.kind() != GraphLiteral::Kind::Neq) return std::nullopt;
  if (unify_graphs(neq.lhs(), neq.rhs())) return GraphLiteral::falsum();
  return std::nullopt;
}

namespace {

// Case 3: some literal of s has an instance isomorphic to l. The
// substitution is shared across both components, in either orientation.
bool subsumed_by(const GraphLiteral& l, const GraphFormula& s) {
  const bool l_ground = l.is_ground();
  const std::uint64_t l_key = l_ground ? literal_key(l) : 0;
  for (std::size_t i = 0; i < s.literals.size(); ++i) {
    const GraphLiteral& candidate = s.literals[i];
    if (candidate.kind() != l.kind() || candidate.is_falsum()) continue;
    if (l_ground && candidate.is_ground()) {
      // Ground instances are the literals themselves: subsumption is
      // componentwise isomorphism, pre-filtered by the cached keys.
      if (i < s.keys.size() && s.keys[i] == l_key && literal_isomorphic(candidate, l))
        return true;
      continue;
    }
    for (const OrientedEq& o : orientations(candidate)) {
      for (const GraphUnifier& first : match_graph_all(o.from, l.lhs())) {
        if (match_graph(o.to, l.rhs(), first.subst)) return true;
      }
    }
  }
  return false;
}

// Case 4: a strictly decreasing demodulation step into a redundant literal.
// Fuel is a shared budget of rewrite attempts across the whole query.
bool demodulates_to_redundant(const GraphLiteral& l, const GraphFormula& s,
                              const GraphOrder& order, std::size_t& fuel, const CRelation& c);

bool redundant_impl(const GraphLiteral& l, const GraphFormula& s, const GraphOrder& order,
                    std::size_t fuel_budget, const CRelation& c) {
  if (s.contains_falsum()) return true;
  if (l.is_falsum()) return false;
  const bool ground = l.is_ground();
  if (ground && l.kind() == GraphLiteral::Kind::Eq && isomorphic(l.lhs(), l.rhs())) return true;
  if (subsumed_by(l, s)) return true;
  std::size_t fuel = fuel_budget;
  if (ground && fuel > 0 && demodulates_to_redundant(l, s, order, fuel, c)) return true;
  return false;
}

// The strictly decreasing oriented instances usable for demodulation,
// computed once per redundancy query.
std::vector<OrientedEq> demodulation_rules(const GraphFormula& s, const GraphOrder& order) {
  std::vector<OrientedEq> out;
  for (const GraphLiteral& eq : s.literals) {
    if (eq.kind() != GraphLiteral::Kind::Eq) continue;
    for (const OrientedEq& o : orientations(eq)) {
      // Closure under substitutions: an orientation that is not strictly
      // decreasing at the pattern level has no strictly decreasing instance.
      OrderVerdict pattern_verdict = order.compare(o.from, o.to);
      if (pattern_verdict == OrderVerdict::StrictlyLess ||
          pattern_verdict == OrderVerdict::Equivalent)
        continue;
      // Ground rule instances need the replacement's variables covered.
      std::set<std::string> from_vars = o.from.variables();
      bool covered = true;
      for (const std::string& v : o.to.variables())
        if (!from_vars.count(v)) covered = false;
      if (!covered) continue;
      out.push_back(o);
    }
  }
  return out;
}

bool demodulates_impl(const GraphLiteral& l, const std::vector<OrientedEq>& rules,
                      const GraphFormula& s, const GraphOrder& order, std::size_t& fuel,
                      const CRelation& c);

bool rewritten_redundant(const GraphLiteral& l, const std::vector<OrientedEq>& rules,
                         const GraphFormula& s, const GraphOrder& order, std::size_t& fuel,
                         const CRelation& c) {
  if (s.contains_falsum()) return true;
  if (l.is_falsum()) return false;
  if (l.kind() == GraphLiteral::Kind::Eq && isomorphic(l.lhs(), l.rhs())) return true;
  if (subsumed_by(l, s)) return true;
  return fuel > 0 && demodulates_impl(l, rules, s, order, fuel, c);
}

bool demodulates_to_redundant(const GraphLiteral& l, const GraphFormula& s,
                              const GraphOrder& order, std::size_t& fuel, const CRelation& c) {
  return demodulates_impl(l, demodulation_rules(s, order), s, order, fuel, c);
}

bool demodulates_impl(const GraphLiteral& l, const std::vector<OrientedEq>& rules,
                      const GraphFormula& s, const GraphOrder& order, std::size_t& fuel,
                      const CRelation& c) {
  for (const OrientedEq& o : rules) {
    {
      for (bool left_side : {true, false}) {
        const Graph& host = left_side ? l.lhs() : l.rhs();
        const Graph& rest = left_side ? l.rhs() : l.lhs();
        if (o.from.node_count() > host.node_count()) continue;
        if (!c.in_class(host)) continue;
        // A handful of occurrences per rule and side is enough: redundancy
        // is an under-approximation and any decreasing rewrite will do.
        for (const Embedding& emb :
             enumerate_embeddings(o.from, host, EmbedMode::Match, c.preorder, 4)) {
          Graph image = apply_label_subst(emb.subst, apply_renaming(emb.renaming, o.from));
          if (!c.sub(image, host)) continue;
          NodeRenaming full = emb.renaming;
          std::uint32_t next_id = std::max(host.max_node_id(),
                                           std::max(o.from.max_node_id(), o.to.max_node_id())) +
                                  1;
          for (const NodeId& n : o.to.nodes)
            if (!full.defined_on(n)) full.extend(n, NodeId{next_id++, n.sort});
          Graph rep = apply_label_subst(emb.subst, apply_renaming(full, o.to));
          if (!order.greater(image, rep)) continue;
          if (!root_similar(image, rep, c.preorder)) continue;
          if (fuel == 0) return false;
          --fuel;
          Graph rewritten = detail::replace_subgraph_unchecked(host, image, rep);
          GraphLiteral next = l.kind() == GraphLiteral::Kind::Eq
                                  ? GraphLiteral::eq(rewritten, rest, c.preorder)
                                  : GraphLiteral::neq(rewritten, rest, c.preorder);
          if (rewritten_redundant(next, rules, s, order, fuel, c)) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

bool is_redundant(const GraphLiteral& l, const GraphFormula& s, const GraphOrder& order,
                  std::size_t fuel, const CRelation& c) {
  return redundant_impl(l, s, order, fuel, c);
}

namespace {

// Renames `l` so its nodes and variables avoid `other`.
GraphLiteral rename_apart(const GraphLiteral& l, const GraphLiteral& other,
                          NodeRenaming* renaming_out = nullptr) {
  if (l.is_falsum()) return l;
  NodeRenaming nu = fresh_node_renaming(l.all_nodes(), other.all_nodes());
  Substitution rho = fresh_variable_renaming(l.variables(), other.variables());
  if (renaming_out) *renaming_out = nu;
  return l.map(nu).substitute(rho);
}

struct Prover {
  // Every fifth selection takes the oldest literal, the rest the lightest;
  // the age component keeps the strategy fair.
  static constexpr std::size_t kAgePeriod = 5;

  SaturationConfig config;
  SaturationStats stats;
  std::vector<InferenceRecord> records;
  std::deque<std::size_t> age_queue;                   // unprocessed, oldest first
  std::set<std::pair<std::size_t, std::size_t>> by_weight;  // (weight, id)
  std::vector<std::size_t> processed;     // record ids
  std::optional<std::size_t> falsum_record;
  GraphFormula seen_formula;       // every kept literal
  GraphFormula processed_formula;  // literals already selected
  std::vector<std::uint64_t> keys;  // literal_key per record
  std::size_t selections = 0;

  static std::size_t weight(const GraphLiteral& l) {
    return l.is_falsum() ? 0 : l.lhs().node_count() + l.rhs().node_count();
  }

  void push_unprocessed(std::size_t id) {
    age_queue.push_back(id);
    by_weight.emplace(weight(records[id].conclusion), id);
  }

  std::optional<std::size_t> pop_unprocessed() {
    while (!age_queue.empty() &&
           !by_weight.count({weight(records[age_queue.front()].conclusion), age_queue.front()}))
      age_queue.pop_front();
    if (by_weight.empty()) return std::nullopt;
    std::size_t id;
    if (++selections % kAgePeriod == 0 && !age_queue.empty()) {
      id = age_queue.front();
      age_queue.pop_front();
    } else {
      id = by_weight.begin()->second;
    }
    by_weight.erase({weight(records[id].conclusion), id});
    return id;
  }

  bool known(const GraphLiteral& l) const {
    const std::uint64_t key = literal_key(l);
    for (std::size_t i = 0; i < records.size(); ++i)
      if (keys[i] == key && literal_isomorphic(records[i].conclusion, l)) return true;
    return false;
  }

  // Returns false when the literal cap is reached.
  bool emit(InferenceRecord::Rule rule, std::vector<std::size_t> premises,
            Substitution unifier, GraphLiteral conclusion) {
    ++stats.generated;
    if (stats.generated > config.max_literals) return false;
    if (conclusion.is_falsum()) {
      InferenceRecord record{records.size(), rule, std::move(premises), std::move(unifier),
                             {},             {},   std::move(conclusion)};
      falsum_record = record.id;
      keys.push_back(0);
      records.push_back(std::move(record));
      return true;
    }
    if (known(conclusion)) {
      ++stats.discarded_redundant;
      return true;
    }
    if (is_redundant(conclusion, seen_formula, *config.order, config.demod_budget,
                     *config.crelation)) {
      ++stats.discarded_redundant;
      return true;
    }
    InferenceRecord record{records.size(), rule, std::move(premises), std::move(unifier),
                           {},             {},   std::move(conclusion)};
    ++stats.kept;
    keys.push_back(literal_key(record.conclusion));
    seen_formula.append(record.conclusion);
    records.push_back(std::move(record));
    push_unprocessed(records.back().id);
    return true;
  }

  bool infer_with(std::size_t given_id, std::size_t partner_id) {
    const GraphLiteral& given = records[given_id].conclusion;
    const GraphLiteral partner =
        rename_apart(records[partner_id].conclusion, given);
    const GraphOrder& order = *config.order;
    const CRelation& c = *config.crelation;

    const bool given_eq = given.kind() == GraphLiteral::Kind::Eq;
    const bool partner_eq = partner.kind() == GraphLiteral::Kind::Eq;
    if (given_eq && partner_eq) {
      bool hit = false;
      for (GraphLiteral& l :
           infer_sup_pos(given, partner, order, c, config.merge_budget, &hit))
        if (!emit(InferenceRecord::Rule::SupPos, {given_id, partner_id}, {}, std::move(l)))
          return false;
      stats.merge_budget_hit |= hit;
    } else if (!given_eq && partner_eq && !given.is_falsum()) {
      for (GraphLiteral& l : infer_sup_neg(given, partner, order, c))
        if (!emit(InferenceRecord::Rule::SupNeg, {given_id, partner_id}, {}, std::move(l)))
          return false;
    } else if (given_eq && !partner_eq && !partner.is_falsum()) {
      for (GraphLiteral& l : infer_sup_neg(partner, given, order, c))
        if (!emit(InferenceRecord::Rule::SupNeg, {partner_id, given_id}, {}, std::move(l)))
          return false;
    }
    return true;
  }

  ProverResult run(const GraphFormula& input) {
    for (const GraphLiteral& l : input.literals) {
      InferenceRecord record{records.size(), InferenceRecord::Rule::Input, {}, {}, {}, {}, l};
      if (l.is_falsum()) falsum_record = record.id;
      keys.push_back(literal_key(l));
      seen_formula.append(l);
      records.push_back(std::move(record));
      push_unprocessed(records.back().id);
    }

    bool resource_out = false;
    while (!falsum_record) {
      std::optional<std::size_t> next = pop_unprocessed();
      if (!next) break;
      std::size_t given_id = *next;
      const GraphLiteral given = records[given_id].conclusion;
      if (is_redundant(given, processed_formula, *config.order, config.demod_budget,
                       *config.crelation)) {
        ++stats.discarded_redundant;
        continue;
      }
      processed.push_back(given_id);
      processed_formula.append(given);
      ++stats.processed;

      if (given.kind() == GraphLiteral::Kind::Neq) {
        if (auto falsum = infer_reflection(given)) {
          if (!emit(InferenceRecord::Rule::Reflection, {given_id}, {}, std::move(*falsum))) {
            resource_out = true;
            break;
          }
        }
      }
      if (falsum_record) break;

      bool ok = true;
      for (std::size_t partner_id : processed) {
        ok = infer_with(given_id, partner_id);
        if (!ok || falsum_record) break;
      }
      if (!ok) {
        resource_out = true;
        break;
      }
    }

    ProverResult result;
    result.stats = stats;
    for (std::size_t id : processed) result.final_formula.insert(records[id].conclusion);
    if (falsum_record) {
      result.status = ProverResult::Status::Unsat;
      result.final_formula.insert(GraphLiteral::falsum());
      // Prune to the records the refutation actually uses.
      std::set<std::size_t> needed;
      std::deque<std::size_t> work{*falsum_record};
      while (!work.empty()) {
        std::size_t id = work.front();
        work.pop_front();
        if (!needed.insert(id).second) continue;
        for (std::size_t p : records[id].premises) work.push_back(p);
      }
      for (std::size_t id : needed) result.proof.push_back(records[id]);
      std::sort(result.proof.begin(), result.proof.end(),
                [](const InferenceRecord& a, const InferenceRecord& b) { return a.id < b.id; });
    } else if (resource_out || stats.generated > config.max_literals) {
      result.status = ProverResult::Status::ResourceOut;
    } else {
      result.status = ProverResult::Status::Saturated;
    }
    return result;
  }
};

}  // namespace

ProverResult saturate(const GraphFormula& s, const SaturationConfig& config) {
  Prover prover{config};
  return prover.run(s);
}

ProverResult prove(const std::vector<GraphLiteral>& axioms, const GraphLiteral& goal,
                   const SaturationConfig& config) {
  if (goal.kind() != GraphLiteral::Kind::Eq)
    throw PreconditionError("prove expects an equation goal");
  GraphFormula input;
  for (const GraphLiteral& a : axioms) input.insert(a);
  input.insert(goal.negated());
  return saturate(input, config);
}

bool replay_proof(const std::vector<InferenceRecord>& proof, const SaturationConfig& config) {
  std::map<std::size_t, GraphLiteral> by_id;
  for (const InferenceRecord& r : proof) {
    bool ok = false;
    switch (r.rule) {
      case InferenceRecord::Rule::Input:
        ok = true;
        break;
      case InferenceRecord::Rule::Reflection: {
        auto it = by_id.find(r.premises.at(0));
        ok = it != by_id.end() && infer_reflection(it->second).has_value() &&
             r.conclusion.is_falsum();
        break;
      }
      case InferenceRecord::Rule::SupPos:
      case InferenceRecord::Rule::SupNeg: {
        auto a = by_id.find(r.premises.at(0));
        auto b = by_id.find(r.premises.at(1));
        if (a == by_id.end() || b == by_id.end()) break;
        GraphLiteral second = rename_apart(b->second, a->second);
        std::vector<GraphLiteral> conclusions =
            r.rule == InferenceRecord::Rule::SupPos
                ? infer_sup_pos(a->second, second, *config.order, *config.crelation,
                                config.merge_budget)
                : infer_sup_neg(a->second, second, *config.order, *config.crelation);
        ok = std::any_of(conclusions.begin(), conclusions.end(), [&](const GraphLiteral& l) {
          return literal_isomorphic(l, r.conclusion);
        });
        break;
      }
    }
    if (!ok) return false;
    by_id.emplace(r.id, r.conclusion);
  }
  return std::any_of(proof.begin(), proof.end(),
                     [](const InferenceRecord& r) { return r.conclusion.is_falsum(); });
}

}  // namespace gsp
