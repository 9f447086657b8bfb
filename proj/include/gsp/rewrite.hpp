// Subgraph testing, substitutability, replacement, merges, rule matching,
// rewriting, critical pairs and local-confluence checking.
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gsp/graph.hpp"

namespace gsp {

// The subgraph relation works on shared node identities; a witness is just
// the checked pair.
struct SubgraphWitness {
  Graph subject;
  Graph host;
};

// h is a subgraph of g: node and edge inclusion, edge-induced closure on
// shared nodes, frontier edges touching only roots of h, roots of g inside h
// being roots of h, and label restriction.
bool is_subgraph(const Graph& h, const Graph& g);

// h2 may replace h1 inside g: root-similar and sharing with g only nodes of
// h1. Throws PreconditionError unless h1 is a subgraph of g.
bool is_substitutable(const Graph& h2, const Graph& h1, const Graph& g,
                      const NodePreorder& preorder = NodePreorder::sort_equality());

// The replacement g[h -> h2]. Throws PreconditionError unless h is a
// subgraph of g and h2 is substitutable for h in g.
Graph replace_subgraph(const Graph& g, const Graph& h, const Graph& h2);

// The root correspondence used by replace_subgraph: roots of h onto roots of
// h2 positionwise, identity on the rest of g.
NodeRenaming replacement_mapping(const Graph& g, const Graph& h, const Graph& h2);

namespace detail {
// replace_subgraph without the precondition checks, for callers that have
// already established them.
Graph replace_subgraph_unchecked(const Graph& g, const Graph& h, const Graph& h2);
}  // namespace detail

enum class MergeRootOrder {
  FirstThenSecond,  // g1 roots then g2 roots, filtered
  FromThenInto,     // from-sort roots first (stable); keeps circuit merges in class
};

struct MergeResult {
  Graph graph;
  Substitution mgu;
};

// The E-merge of label-compatible graphs. Throws EdgeShapeError when an edge
// of `connecting` does not join a root of g1 outside g2 with a root of g2
// outside g1; returns nullopt when the shared labels admit no mgu.
std::optional<MergeResult> e_merge(const Graph& g1, const Graph& g2,
                                   const std::vector<Edge>& connecting,
                                   MergeRootOrder root_order = MergeRootOrder::FirstThenSecond);

// Which subgraphs may be rewritten: a class of graphs closed under
// isomorphism together with a restricted subgraph relation and a merge
// policy for overlapping subgraphs of a common host.
struct CRelation {
  std::string name;
  NodePreorder preorder = NodePreorder::sort_equality();
  std::function<bool(const Graph&)> in_class;
  std::function<bool(const Graph& sub, const Graph& host)> sub;
  std::function<std::optional<Graph>(const Graph& h1, const Graph& h2, const Graph& host)>
      choose_merge;
  MergeRootOrder merge_root_order = MergeRootOrder::FirstThenSecond;

  // Unrestricted instance: every graph is in the class and sub is the full
  // subgraph relation; merges take the host's frontier edges.
  static const CRelation& plain();
};

struct RewriteRule {
  std::string name;
  Graph lhs;
  Graph rhs;

  // Throws PreconditionError unless the sides are root-similar.
  static RewriteRule make(std::string name, Graph lhs, Graph rhs,
                          const NodePreorder& preorder = NodePreorder::sort_equality());
};

using RuleSet = std::vector<RewriteRule>;

// One way a rule fires on a host: the node renaming into the host (fresh ids
// for nodes only on the right-hand side), the label substitution, and the
// instantiated left-hand image inside the host.
struct MatchResult {
  NodeRenaming renaming;
  Substitution label_subst;
  Graph image;
};

// Complete enumeration of rule matches on g under the given relation.
// Throws PreconditionError unless g is in the relation's class.
std::vector<MatchResult> match_rule(const RewriteRule& rule, const Graph& g, const CRelation& c);

struct RewriteSuccessor {
  Graph graph;
  std::string rule;
  MatchResult match;
};

std::vector<RewriteSuccessor> rewrite_step(const Graph& g, const RuleSet& rules,
                                           const CRelation& c);

struct NormalizeResult {
  enum class Status { NormalForm, FuelExhausted };
  Status status;
  Graph graph;
  std::size_t steps = 0;
};

// Deterministic leftmost rewriting until no rule applies or fuel runs out.
NormalizeResult normalize(const Graph& g, const RuleSet& rules, const CRelation& c,
                          std::size_t fuel);

struct CriticalPair {
  Graph left;
  Graph right;
  Graph overlap;  // the merged graph both sides rewrite
  std::string rule_left;
  std::string rule_right;
  bool trivial = false;  // the renamed left-hand sides share no node
};

struct CriticalPairsResult {
  std::vector<CriticalPair> pairs;
  bool truncated = false;      // merge budget cut the enumeration short
  std::size_t enumerated = 0;  // overlap/edge-set combinations examined
};

CriticalPairsResult critical_pairs(const RuleSet& rules, const CRelation& c,
                                   std::size_t merge_budget);

struct JoinResult {
  enum class Status { Joinable, Unknown };
  Status status = Status::Unknown;
  std::optional<Graph> witness;
  // Both reachable sets were fully explored; an Unknown result with this flag
  // set means the pair is genuinely not joinable.
  bool exhaustive = false;
  std::size_t explored = 0;
};

JoinResult is_joinable(const CriticalPair& p, const RuleSet& rules, const CRelation& c,
                       std::size_t fuel);

struct ConfluenceResult {
  enum class Verdict { LocallyConfluent, CounterexampleCandidate, Inconclusive };
  Verdict verdict;
  std::optional<CriticalPair> counterexample;
  std::vector<CriticalPair> unknown;
  std::size_t pair_count = 0;
  bool pairs_truncated = false;
};

ConfluenceResult check_local_confluence(const RuleSet& rules, const CRelation& c,
                                        std::size_t fuel, std::size_t merge_budget = 200);

// Connecting-edge subsets ordered by size (empty set first), capped.
std::vector<std::vector<Edge>> connecting_subsets(const std::vector<Edge>& candidates,
                                                  std::size_t cap);

// Enumerates the sort-compatible partial injective identifications of h's
// nodes with g's nodes usable as merge overlaps: jointly labeled pairs must
// unify pairwise and edges must agree on the identified nodes. Assignments
// are tried before omissions, so larger overlaps arrive first and the empty
// identification last. The callback returns false to stop the enumeration.
void enumerate_overlaps(const Graph& g, const Graph& h, const NodePreorder& preorder,
                        const std::function<bool(const std::map<NodeId, NodeId>&)>& emit);

// Shared machinery: enumerates injective node maps mu of `pattern` into
// `host` for which sigma(mu(pattern)) is a plain subgraph of (sigma applied
// to) the host. Match instantiates only pattern variables; Unify also
// instantiates host labels, as negative superposition requires.
enum class EmbedMode { Match, Unify };

struct Embedding {
  NodeRenaming renaming;  // pattern nodes -> host nodes
  Substitution subst;
};

std::vector<Embedding> enumerate_embeddings(const Graph& pattern, const Graph& host,
                                            EmbedMode mode,
                                            const NodePreorder& preorder =
                                                NodePreorder::sort_equality(),
                                            std::size_t max_results = SIZE_MAX);

}  // namespace gsp
