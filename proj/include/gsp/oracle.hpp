// Test-support brute-force semantics: bounded universes of ground graphs and
// an under-approximate congruence closure. Yes answers are sound; Unknown is
// never a refutation.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gsp/literal.hpp"
#include "gsp/rewrite.hpp"

namespace gsp {

struct UniverseBounds {
  std::size_t max_nodes = 3;
  std::size_t max_edges = 3;
  std::size_t max_roots = 2;
  std::vector<Sort> sorts;
  std::vector<Term> labels;  // ground label alphabet
};

struct GroundUniverse {
  UniverseBounds bounds;
  std::vector<Graph> graphs;        // isomorphism-class representatives
  std::vector<std::uint64_t> keys;  // cached iso-invariant fingerprints

  // Index of the representative isomorphic to g, if any.
  std::optional<std::size_t> find(const Graph& g) const;
};

// Exhaustive enumeration up to isomorphism within the bounds, filtered by
// class membership. Throws BoundsTooLarge when the candidate count exceeds
// the hard cap.
GroundUniverse enumerate_universe(const UniverseBounds& bounds,
                                  const CRelation& c = CRelation::plain());

class CongruenceApprox {
 public:
  explicit CongruenceApprox(std::size_t size);

  std::size_t find(std::size_t i) const;
  bool merge(std::size_t a, std::size_t b);  // returns whether anything changed
  bool same(std::size_t a, std::size_t b) const { return find(a) == find(b); }
  std::size_t class_count() const;

 private:
  mutable std::vector<std::size_t> parent_;
};

// Least fixpoint of: merge ground equation instances (variables instantiated
// over the universe's label alphabet) and merge replacement contexts whose
// results stay inside the universe.
CongruenceApprox congruence_closure_bounded(const std::vector<GraphLiteral>& equations,
                                            const GroundUniverse& u,
                                            const CRelation& c = CRelation::plain());

enum class EntailVerdict { Yes, Unknown };

// Sound entailment check for ground literals with operands inside the
// universe. Disequations are always Unknown (no countermodel construction).
EntailVerdict entails_bounded(const std::vector<GraphLiteral>& equations, const GraphLiteral& l,
                              const GroundUniverse& u, const CRelation& c = CRelation::plain());

}  // namespace gsp
