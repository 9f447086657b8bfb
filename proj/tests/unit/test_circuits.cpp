#include <doctest.h>

#include "../support/fixtures.hpp"
#include "../support/generators.hpp"
#include "gsp/circuits.hpp"
#include "gsp/errors.hpp"

using namespace gsp;
using namespace gsp::testing;

TEST_CASE("the worked gate graph validates with the right interface") {
  CircuitValidation v = validate_circuit(gate_f());
  REQUIRE(v.circuit);
  CHECK(v.circuit->inputs == std::vector<NodeId>{NodeId{1, Sort::from()}});
  CHECK(v.circuit->outputs ==
        std::vector<NodeId>{NodeId{5, Sort::into()}, NodeId{7, Sort::into()}});
}

TEST_CASE("the empty graph is a circuit") {
  CircuitValidation v = validate_circuit(Graph{});
  REQUIRE(v.circuit);
  CHECK(v.circuit->inputs.empty());
  CHECK(v.circuit->outputs.empty());
}

TEST_CASE("a port with two outgoing edges is rejected") {
  Graph g = gate_f();
  g.edges.push_back({NodeId{2, Sort::into()}, NodeId{5, Sort::into()}});
  g.normalize();
  CHECK(!validate_circuit(g).circuit.has_value());
}

TEST_CASE("a gate missing a numbered port is rejected") {
  Graph g = gate_f();
  // Relabel the second output port to 1: ports are no longer 1..m.
  g.labels.at(NodeId{6, Sort::from()}) = Term::apply("1");
  CHECK(!validate_circuit(g).circuit.has_value());
}

TEST_CASE("root sequences must be inputs then outputs") {
  Graph g = gate_f();
  std::swap(g.roots[0], g.roots[1]);
  CHECK(!validate_circuit(g).circuit.has_value());
}

TEST_CASE("primitives have the defined shapes") {
  Circuit wire = build_primitive(CircuitPrimitive::id_graph(1), 0);
  CHECK(wire.graph.node_count() == 2);
  CHECK(wire.graph.edge_count() == 1);
  CHECK(wire.graph.roots.size() == 2);
  CHECK(wire.graph.labels.empty());

  Circuit swap = build_primitive(CircuitPrimitive::swap_graph(), 0);
  CHECK(swap.graph.node_count() == 4);
  CHECK(swap.graph.roots.size() == 4);
  CHECK(swap.graph.has_edge(swap.graph.roots[0], swap.graph.roots[3]));
  CHECK(swap.graph.has_edge(swap.graph.roots[1], swap.graph.roots[2]));

  Circuit f = build_primitive(CircuitPrimitive::elementary_gate(Term::apply("f"), 1, 2), 30);
  CHECK(isomorphic(f.graph, gate_f()));

  // Degenerate gates are allowed, down to the one-node circuit.
  Circuit sink = build_primitive(CircuitPrimitive::elementary_gate(Term::apply("h"), 1, 0), 50);
  CHECK(isomorphic(sink.graph, gate_h()));
  Circuit lone = build_primitive(CircuitPrimitive::elementary_gate(Term::apply("k"), 0, 0), 60);
  CHECK(lone.graph.node_count() == 1);
}

TEST_CASE("the figure composition reproduces the composite exactly") {
  CircuitValidation f = validate_circuit(gate_f());
  CircuitValidation g = validate_circuit(gate_g());
  CircuitValidation h = validate_circuit(gate_h());
  REQUIRE((f.circuit && g.circuit && h.circuit));

  Circuit parallel = parallel_compose(*g.circuit, *h.circuit);
  Circuit composite = sequential_compose(*f.circuit, parallel);
  CHECK(composite.graph == composed_fgh());
  CHECK(validate_circuit(composite.graph).circuit.has_value());
}

TEST_CASE("parallel composition has the empty circuit as neutral element") {
  Circuit empty = *validate_circuit(Graph{}).circuit;
  Circuit f = build_primitive(CircuitPrimitive::elementary_gate(Term::apply("f"), 2, 1), 0);
  CHECK(parallel_compose(f, empty).graph == f.graph);
  CHECK(parallel_compose(empty, f).graph == f.graph);
}

TEST_CASE("parallel composition is associative on disjoint operands") {
  Gen gen(83);
  for (int i = 0; i < 50; ++i) {
    std::uint32_t next = 0;
    Circuit a = gen.primitive(next);
    Circuit b = gen.primitive(next);
    Circuit c = gen.primitive(next);
    CHECK(parallel_compose(parallel_compose(a, b), c).graph ==
          parallel_compose(a, parallel_compose(b, c)).graph);
  }
}

TEST_CASE("sequential composition is associative on disjoint triples") {
  Gen gen(89);
  for (int i = 0; i < 50; ++i) {
    std::uint32_t next = 0;
    std::size_t w1 = 1 + gen.below(2), w2 = 1 + gen.below(2), w3 = 1 + gen.below(2),
                w4 = 1 + gen.below(2);
    Circuit a = build_primitive(CircuitPrimitive::elementary_gate(Term::apply("f"), w1, w2), next);
    next += static_cast<std::uint32_t>(a.graph.node_count());
    Circuit b = build_primitive(CircuitPrimitive::elementary_gate(Term::apply("g"), w2, w3), next);
    next += static_cast<std::uint32_t>(b.graph.node_count());
    Circuit c = build_primitive(CircuitPrimitive::elementary_gate(Term::apply("h"), w3, w4), next);
    next += static_cast<std::uint32_t>(c.graph.node_count());
    CHECK(sequential_compose(sequential_compose(a, b), c).graph ==
          sequential_compose(a, sequential_compose(b, c)).graph);
  }
}

TEST_CASE("sequential composition rejects arity mismatches") {
  Circuit two_out = build_primitive(CircuitPrimitive::elementary_gate(Term::apply("f"), 1, 2), 0);
  Circuit two_in = build_primitive(CircuitPrimitive::elementary_gate(Term::apply("g"), 1, 1), 20);
  CHECK_THROWS_AS(sequential_compose(two_out, two_in), ArityMismatch);
}

TEST_CASE("interchange law holds as an exact equality") {
  Gen gen(97);
  for (int i = 0; i < 50; ++i) {
    std::uint32_t next = 0;
    std::size_t a_out = gen.below(3), c_out = gen.below(3);
    Circuit a = build_primitive(CircuitPrimitive::elementary_gate(Term::apply("f"), 1, a_out), next);
    next += static_cast<std::uint32_t>(a.graph.node_count());
    Circuit b = build_primitive(CircuitPrimitive::elementary_gate(Term::apply("g"), a_out, 1), next);
    next += static_cast<std::uint32_t>(b.graph.node_count());
    Circuit c = build_primitive(CircuitPrimitive::elementary_gate(Term::apply("h"), 1, c_out), next);
    next += static_cast<std::uint32_t>(c.graph.node_count());
    Circuit d = build_primitive(CircuitPrimitive::elementary_gate(Term::apply("k"), c_out, 2), next);
    next += static_cast<std::uint32_t>(d.graph.node_count());

    Graph lhs = sequential_compose(parallel_compose(a, c), parallel_compose(b, d)).graph;
    Graph rhs = parallel_compose(sequential_compose(a, b), sequential_compose(c, d)).graph;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("identity wires are neutral for sequential composition up to iso") {
  Gen gen(101);
  for (int i = 0; i < 40; ++i) {
    std::uint32_t next = 0;
    Circuit g = gen.circuit(next, 2);
    Circuit pre = build_primitive(CircuitPrimitive::id_graph(g.inputs.size()), next + 100);
    Circuit post = build_primitive(CircuitPrimitive::id_graph(g.outputs.size()), next + 300);
    CHECK(isomorphic(sequential_compose(pre, g).graph, g.graph));
    CHECK(isomorphic(sequential_compose(g, post).graph, g.graph));
  }
}

TEST_CASE("subcircuit slices of the composite") {
  Graph host = composed_fgh();
  CHECK(is_subcircuit(host, host));

  // The f-gate slice with its ports and the frontier roots around it.
  Graph slice;
  NodeId a1{1, Sort::from()}, a2{2, Sort::into()}, a3{3, Sort::gate(1, 2)};
  NodeId a4{4, Sort::from()}, a6{6, Sort::from()};
  NodeId b2{12, Sort::into()}, v2{22, Sort::into()};
  slice.nodes = {a1, a2, a3, a4, a6, b2, v2};
  slice.roots = {a1, b2, v2};
  slice.edges = {{a1, a2}, {a2, a3}, {a3, a4}, {a3, a6}, {a4, b2}, {a6, v2}};
  slice.labels.emplace(a2, port(1));
  slice.labels.emplace(a3, Term::apply("f"));
  slice.labels.emplace(a4, port(1));
  slice.labels.emplace(a6, port(2));
  slice.normalize();
  CHECK(is_subcircuit(slice, host));

  // A gate node without its ports fails the class constraints.
  Graph bare;
  bare.nodes = {a3};
  bare.labels.emplace(a3, Term::apply("f"));
  CHECK(is_subgraph(bare, host) == false);  // ports are adjacent: closure fails
  CHECK(!is_subcircuit(bare, host));
}

TEST_CASE("circuit merges of subcircuits stay in class") {
  Graph host = composed_fgh();
  // Left slice (gate f) and right slice (gates g and h) overlap on the
  // wire nodes; their merge is the whole composite.
  Graph left;
  {
    NodeId a1{1, Sort::from()}, a2{2, Sort::into()}, a3{3, Sort::gate(1, 2)};
    NodeId a4{4, Sort::from()}, a6{6, Sort::from()};
    NodeId b2{12, Sort::into()}, v2{22, Sort::into()};
    left.nodes = {a1, a2, a3, a4, a6, b2, v2};
    left.roots = {a1, b2, v2};
    left.edges = {{a1, a2}, {a2, a3}, {a3, a4}, {a3, a6}, {a4, b2}, {a6, v2}};
    left.labels.emplace(a2, port(1));
    left.labels.emplace(a3, Term::apply("f"));
    left.labels.emplace(a4, port(1));
    left.labels.emplace(a6, port(2));
    left.normalize();
  }
  Graph right;
  {
    NodeId a4{4, Sort::from()}, a6{6, Sort::from()};
    NodeId b2{12, Sort::into()}, b3{13, Sort::gate(1, 1)}, b4{14, Sort::from()},
        b5{15, Sort::into()};
    NodeId v2{22, Sort::into()}, v3{23, Sort::gate(1, 0)};
    right.nodes = {a4, a6, b2, b3, b4, b5, v2, v3};
    right.roots = {a4, a6, b5};
    right.edges = {{a4, b2}, {a6, v2}, {b2, b3}, {b3, b4}, {b4, b5}, {v2, v3}};
    right.labels.emplace(b2, port(1));
    right.labels.emplace(b3, Term::apply("g"));
    right.labels.emplace(b4, port(1));
    right.labels.emplace(v2, port(1));
    right.labels.emplace(v3, Term::apply("h"));
    right.normalize();
  }
  REQUIRE(is_subcircuit(left, host));
  REQUIRE(is_subcircuit(right, host));

  auto merged = circuits_crelation().choose_merge(left, right, host);
  REQUIRE(merged);
  CHECK(is_circuit(*merged));
  CHECK(is_subcircuit(*merged, host));
  CHECK(merged->node_count() == host.node_count());
}

TEST_CASE("closure under replacement: swapping a gate keeps the class") {
  Graph host = composed_fgh();
  // Replace the g-gate slice by a fresh same-interface gate.
  Graph sub;
  NodeId a4{4, Sort::from()};
  NodeId b2{12, Sort::into()}, b3{13, Sort::gate(1, 1)}, b4{14, Sort::from()},
      b5{15, Sort::into()};
  sub.nodes = {a4, b2, b3, b4, b5};
  sub.roots = {a4, b5};
  sub.edges = {{a4, b2}, {b2, b3}, {b3, b4}, {b4, b5}};
  sub.labels.emplace(b2, port(1));
  sub.labels.emplace(b3, Term::apply("g"));
  sub.labels.emplace(b4, port(1));
  sub.normalize();
  REQUIRE(is_subcircuit(sub, host));

  Circuit fresh = build_primitive(CircuitPrimitive::elementary_gate(Term::apply("g2"), 1, 1), 100);
  // Rename so the replacement's roots line up with sub's root sorts.
  REQUIRE(root_similar(sub, fresh.graph));
  REQUIRE(is_substitutable(fresh.graph, sub, host));
  Graph replaced = replace_subgraph(host, sub, fresh.graph);
  CHECK(is_circuit(replaced));
  CHECK(is_subcircuit(fresh.graph, replaced));
}
