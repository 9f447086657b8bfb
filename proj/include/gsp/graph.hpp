// Rooted labeled graph model: node sorts, the node preorder, graphs, node
// renamings and isomorphism. Graphs are immutable values once built; every
// operation returns a fresh value.
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gsp/term.hpp"

namespace gsp {

struct Sort {
  enum class Kind : std::uint8_t { Custom, Into, From, Gate };

  Kind kind = Kind::Custom;
  std::uint32_t entries = 0;  // Gate only
  std::uint32_t outputs = 0;  // Gate only
  std::string name;           // Custom only

  static Sort custom(std::string n) { return Sort{Kind::Custom, 0, 0, std::move(n)}; }
  static Sort into() { return Sort{Kind::Into, 0, 0, {}}; }
  static Sort from() { return Sort{Kind::From, 0, 0, {}}; }
  static Sort gate(std::uint32_t n, std::uint32_t m) { return Sort{Kind::Gate, n, m, {}}; }

  bool is_gate() const { return kind == Kind::Gate; }
  auto operator<=>(const Sort&) const = default;
  std::string to_string() const;
};

struct NodeId {
  std::uint32_t id = 0;
  Sort sort;

  auto operator<=>(const NodeId&) const = default;
  std::string to_string() const;
};

using Edge = std::pair<NodeId, NodeId>;

// The pre-order on the global node set. The engine default makes two nodes
// equivalent exactly when their sorts are equal; other instantiations can be
// supplied wherever a preorder parameter is accepted.
struct NodePreorder {
  std::function<bool(const NodeId&, const NodeId&)> leq;

  bool equivalent(const NodeId& a, const NodeId& b) const { return leq(a, b) && leq(b, a); }
  static const NodePreorder& sort_equality();
};

struct Graph {
  std::vector<NodeId> nodes;      // sorted, unique
  std::vector<NodeId> roots;      // repetition-free sequence; order significant
  std::vector<Edge> edges;        // sorted, unique
  std::map<NodeId, Term> labels;  // exactly the inner nodes

  bool has_node(const NodeId& n) const;
  bool has_edge(const NodeId& a, const NodeId& b) const;
  bool is_root(const NodeId& n) const;
  bool is_inner(const NodeId& n) const { return has_node(n) && !is_root(n); }
  std::vector<NodeId> inner_nodes() const;
  const Term* label(const NodeId& n) const;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t edge_count() const { return edges.size(); }
  std::size_t in_degree(const NodeId& n) const;
  std::size_t out_degree(const NodeId& n) const;

  std::set<std::string> variables() const;
  bool is_ground() const;
  std::uint32_t max_node_id() const;

  // Sorts and dedups the node and edge sets; root order is preserved.
  void normalize();
  static Graph make(std::vector<NodeId> nodes, std::vector<NodeId> roots,
                    std::vector<Edge> edges, std::map<NodeId, Term> labels);

  bool operator==(const Graph&) const = default;
  std::string to_string() const;
};

// Partial injective node mapping preserving sorts and the preorder
// equivalence; extended as the identity on terms.
class NodeRenaming {
 public:
  NodeRenaming() = default;

  // Throws DomainError if the mapping is not injective or not
  // sort/equivalence preserving.
  static NodeRenaming make(std::map<NodeId, NodeId> mapping,
                           const NodePreorder& preorder = NodePreorder::sort_equality());
  static NodeRenaming identity(const std::vector<NodeId>& nodes);

  const std::map<NodeId, NodeId>& mapping() const { return map_; }
  bool defined_on(const NodeId& n) const { return map_.count(n) != 0; }
  NodeId operator()(const NodeId& n) const;  // throws DomainError when unmapped
  std::optional<NodeId> preimage(const NodeId& n) const;

  NodeRenaming inverse() const;
  // (a.compose(b))(n) == a(b(n)); defined where both stages are.
  NodeRenaming compose(const NodeRenaming& inner) const;
  // Extends this renaming; conflicting or injectivity-breaking entries throw.
  void extend(const NodeId& from, const NodeId& to);

  bool operator==(const NodeRenaming&) const = default;
  std::string to_string() const;

 private:
  std::map<NodeId, NodeId> map_;
};

// Diagnostics instead of exceptions: every violated graph invariant is
// reported, an empty list means the value is a graph.
std::vector<std::string> validate_graph(const Graph& g);

// Componentwise image of g under m; requires dom(m) to cover N(g).
Graph apply_renaming(const NodeRenaming& m, const Graph& g);

// Relabels inner nodes with s(label); nodes, roots and edges are untouched.
Graph apply_label_subst(const Substitution& s, const Graph& g);

bool root_similar(const Graph& g, const Graph& h,
                  const NodePreorder& preorder = NodePreorder::sort_equality());

// Complete backtracking search for a renaming mu with g == mu(h).
std::optional<NodeRenaming> find_isomorphism(const Graph& g, const Graph& h);
bool isomorphic(const Graph& g, const Graph& h);

// Searches for mu (h's nodes onto g's nodes, structure preserved, labels
// ignored) together with a substitution sigma such that
// sigma(g) == sigma(mu(h)). This is the witness shape used by Reflection.
struct GraphUnifier {
  NodeRenaming renaming;
  Substitution subst;
};
std::optional<GraphUnifier> unify_graphs(const Graph& g, const Graph& h);

// Searches for mu and sigma acting on h's variables only with
// g == sigma(mu(h)); g's labels are left untouched. Used for subsumption.
std::optional<GraphUnifier> match_graph(const Graph& h, const Graph& g,
                                        const Substitution& seed = {});
// All matchers of h onto g extending `seed`, for callers that must thread one
// substitution through several component graphs.
std::vector<GraphUnifier> match_graph_all(const Graph& h, const Graph& g,
                                          const Substitution& seed = {});

// Renames the node ids in `ids` that collide with `reserved` to fresh ids
// above both sets; non-colliding ids map to themselves.
NodeRenaming fresh_node_renaming(const std::vector<NodeId>& ids,
                                 const std::vector<NodeId>& reserved);

// Order- and renaming-insensitive fingerprint; equal for isomorphic graphs,
// collisions resolved by find_isomorphism.
std::uint64_t iso_invariant_key(const Graph& g);

}  // namespace gsp
