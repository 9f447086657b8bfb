// Graph literals: equations and disequations between root-similar graphs,
// plus falsum. Equations are unordered; a canonical orientation is applied
// for storage only.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gsp/graph.hpp"

namespace gsp {

class GraphLiteral {
 public:
  enum class Kind { Eq, Neq, Falsum };

  // Both factories throw PreconditionError unless the sides are root-similar.
  static GraphLiteral eq(Graph lhs, Graph rhs,
                         const NodePreorder& preorder = NodePreorder::sort_equality());
  static GraphLiteral neq(Graph lhs, Graph rhs,
                          const NodePreorder& preorder = NodePreorder::sort_equality());
  static GraphLiteral falsum();

  Kind kind() const { return kind_; }
  bool is_falsum() const { return kind_ == Kind::Falsum; }
  const Graph& lhs() const { return lhs_; }
  const Graph& rhs() const { return rhs_; }

  GraphLiteral negated() const;  // Eq <-> Neq
  bool is_ground() const;
  std::set<std::string> variables() const;
  std::vector<NodeId> all_nodes() const;

  GraphLiteral map(const NodeRenaming& mu) const;
  GraphLiteral substitute(const Substitution& sigma) const;

  bool operator==(const GraphLiteral&) const = default;
  std::string to_string() const;

 private:
  GraphLiteral() = default;
  Kind kind_ = Kind::Falsum;
  Graph lhs_;
  Graph rhs_;
};

// Componentwise isomorphism (falsum only equals falsum).
bool literal_isomorphic(const GraphLiteral& a, const GraphLiteral& b);

// Renaming- and orientation-insensitive fingerprint used for indexing.
std::uint64_t literal_key(const GraphLiteral& l);

// A closed-world set of literals with ground-instance semantics.
struct GraphFormula {
  std::vector<GraphLiteral> literals;
  std::vector<std::uint64_t> keys;  // parallel literal_key cache

  // Appends unless an isomorphic duplicate is present; returns whether added.
  bool insert(GraphLiteral l);
  // Appends unconditionally, maintaining the key cache.
  void append(GraphLiteral l);
  bool contains_falsum() const;
};

}  // namespace gsp
