// The CIRCUITS class: validation against the eight class constraints, the
// subcircuit relation packaged as a C-relation, parallel and sequential
// composition, and the id/swap/elementary-gate primitives.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsp/graph.hpp"
#include "gsp/rewrite.hpp"

namespace gsp {

// Sequential composition with mismatched output/input counts.
struct ArityMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Circuit {
  Graph graph;
  std::vector<NodeId> inputs;   // from-sort root prefix, no incoming edges
  std::vector<NodeId> outputs;  // into-sort root suffix, no outgoing edges
};

struct CircuitValidation {
  std::optional<Circuit> circuit;
  std::vector<std::string> violations;
};

// Checks the eight class constraints; on success computes the input/output
// split of the root sequence.
CircuitValidation validate_circuit(const Graph& g);
bool is_circuit(const Graph& g);

// Target of an input root's unique outgoing edge / source of an output
// root's unique incoming edge.
NodeId wire_target(const Graph& g, const NodeId& input);
NodeId wire_source(const Graph& g, const NodeId& output);

struct CircuitPrimitive {
  enum class Kind { IdGraph, SwapGraph, ElementaryGate };

  Kind kind = Kind::IdGraph;
  std::size_t wires = 1;  // IdGraph only
  Term gate_label = Term::apply("f");
  std::size_t entries = 0;  // ElementaryGate only
  std::size_t outputs = 0;

  static CircuitPrimitive id_graph(std::size_t wires);
  static CircuitPrimitive swap_graph();
  static CircuitPrimitive elementary_gate(Term label, std::size_t entries, std::size_t outputs);
};

// Builds the primitive with node ids starting at first_id.
Circuit build_primitive(const CircuitPrimitive& p, std::uint32_t first_id = 0);

// Componentwise union with roots Rf1.Rf2.Ri1.Ri2. The second operand is
// renamed off the first when their node sets overlap.
Circuit parallel_compose(const Circuit& g1, const Circuit& g2);

// Wires g1's outputs to g2's inputs positionwise; the interface roots
// disappear. Throws ArityMismatch when the counts differ.
Circuit sequential_compose(const Circuit& g1, const Circuit& g2);

// h is a subcircuit of g: plain subgraph and both in the class.
bool is_subcircuit(const Graph& h, const Graph& g);

// The subcircuit C-relation: class membership, the subcircuit relation, and
// host-frontier merges ordered from-roots-first so merges stay in class.
const CRelation& circuits_crelation();

}  // namespace gsp
