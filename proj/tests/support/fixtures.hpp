// Frozen graphs from the worked examples: the four-node chain with its
// two-root subgraph and replacement, the three circuit operands and their
// composite, and small Turing machines.
#pragma once

#include "gsp/circuits.hpp"
#include "gsp/graph.hpp"
#include "gsp/tm.hpp"

namespace gsp::testing {

inline const Sort& plain_sort() {
  static const Sort s = Sort::custom("n");
  return s;
}

inline NodeId pn(std::uint32_t id) { return NodeId{id, plain_sort()}; }

// Chain a1 -> a2 -> a3 -> a4 labeled a, f(x), f(b), b; no roots.
inline Graph chain_host() {
  Graph g;
  g.nodes = {pn(1), pn(2), pn(3), pn(4)};
  g.edges = {{pn(1), pn(2)}, {pn(2), pn(3)}, {pn(3), pn(4)}};
  g.labels.emplace(pn(1), Term::apply("a"));
  g.labels.emplace(pn(2), Term::apply("f", {Term::variable("x")}));
  g.labels.emplace(pn(3), Term::apply("f", {Term::apply("b")}));
  g.labels.emplace(pn(4), Term::apply("b"));
  g.normalize();
  return g;
}

// The middle two nodes as a rooted subgraph.
inline Graph chain_mid() {
  Graph g;
  g.nodes = {pn(2), pn(3)};
  g.roots = {pn(2), pn(3)};
  g.edges = {{pn(2), pn(3)}};
  g.normalize();
  return g;
}

// The four-node diamond replacement with roots b1, b2 and labels c, d.
inline Graph diamond() {
  Graph g;
  g.nodes = {pn(11), pn(12), pn(13), pn(14)};
  g.roots = {pn(11), pn(12)};
  g.edges = {{pn(11), pn(13)}, {pn(11), pn(14)}, {pn(12), pn(13)}, {pn(12), pn(14)}};
  g.labels.emplace(pn(13), Term::apply("c"));
  g.labels.emplace(pn(14), Term::apply("d"));
  g.normalize();
  return g;
}

// The replacement result: a1 and a4 wired through the diamond, the diamond
// roots inheriting the labels of the replaced inner nodes.
inline Graph chain_replaced() {
  Graph g;
  g.nodes = {pn(1), pn(4), pn(11), pn(12), pn(13), pn(14)};
  g.edges = {{pn(1), pn(11)},  {pn(12), pn(4)},  {pn(11), pn(13)},
             {pn(11), pn(14)}, {pn(12), pn(13)}, {pn(12), pn(14)}};
  g.labels.emplace(pn(1), Term::apply("a"));
  g.labels.emplace(pn(4), Term::apply("b"));
  g.labels.emplace(pn(11), Term::apply("f", {Term::variable("x")}));
  g.labels.emplace(pn(12), Term::apply("f", {Term::apply("b")}));
  g.labels.emplace(pn(13), Term::apply("c"));
  g.labels.emplace(pn(14), Term::apply("d"));
  g.normalize();
  return g;
}

inline Term port(std::uint32_t k) { return Term::apply(std::to_string(k)); }

// One-entry two-output gate f: input root a1, ports a2/a4/a6, outputs a5, a7.
inline Graph gate_f() {
  Graph g;
  NodeId a1{1, Sort::from()}, a2{2, Sort::into()}, a3{3, Sort::gate(1, 2)};
  NodeId a4{4, Sort::from()}, a5{5, Sort::into()}, a6{6, Sort::from()}, a7{7, Sort::into()};
  g.nodes = {a1, a2, a3, a4, a5, a6, a7};
  g.roots = {a1, a5, a7};
  g.edges = {{a1, a2}, {a2, a3}, {a3, a4}, {a3, a6}, {a4, a5}, {a6, a7}};
  g.labels.emplace(a2, port(1));
  g.labels.emplace(a3, Term::apply("f"));
  g.labels.emplace(a4, port(1));
  g.labels.emplace(a6, port(2));
  g.normalize();
  return g;
}

// One-entry one-output gate g on nodes b1..b5.
inline Graph gate_g() {
  Graph g;
  NodeId b1{11, Sort::from()}, b2{12, Sort::into()}, b3{13, Sort::gate(1, 1)};
  NodeId b4{14, Sort::from()}, b5{15, Sort::into()};
  g.nodes = {b1, b2, b3, b4, b5};
  g.roots = {b1, b5};
  g.edges = {{b1, b2}, {b2, b3}, {b3, b4}, {b4, b5}};
  g.labels.emplace(b2, port(1));
  g.labels.emplace(b3, Term::apply("g"));
  g.labels.emplace(b4, port(1));
  g.normalize();
  return g;
}

// One-entry zero-output gate h on nodes v1..v3.
inline Graph gate_h() {
  Graph g;
  NodeId v1{21, Sort::from()}, v2{22, Sort::into()}, v3{23, Sort::gate(1, 0)};
  g.nodes = {v1, v2, v3};
  g.roots = {v1};
  g.edges = {{v1, v2}, {v2, v3}};
  g.labels.emplace(v2, port(1));
  g.labels.emplace(v3, Term::apply("h"));
  g.normalize();
  return g;
}

// The composite: gate f feeding gates g and h; roots a1 and b5.
inline Graph composed_fgh() {
  Graph g;
  NodeId a1{1, Sort::from()}, a2{2, Sort::into()}, a3{3, Sort::gate(1, 2)};
  NodeId a4{4, Sort::from()}, a6{6, Sort::from()};
  NodeId b2{12, Sort::into()}, b3{13, Sort::gate(1, 1)}, b4{14, Sort::from()},
      b5{15, Sort::into()};
  NodeId v2{22, Sort::into()}, v3{23, Sort::gate(1, 0)};
  g.nodes = {a1, a2, a3, a4, a6, b2, b3, b4, b5, v2, v3};
  g.roots = {a1, b5};
  g.edges = {{a1, a2}, {a2, a3}, {a3, a4}, {a3, a6}, {a4, b2},
             {a6, v2}, {b2, b3}, {b3, b4}, {b4, b5}, {v2, v3}};
  g.labels.emplace(a2, port(1));
  g.labels.emplace(a3, Term::apply("f"));
  g.labels.emplace(a4, port(1));
  g.labels.emplace(a6, port(2));
  g.labels.emplace(b2, port(1));
  g.labels.emplace(b3, Term::apply("g"));
  g.labels.emplace(b4, port(1));
  g.labels.emplace(v2, port(1));
  g.labels.emplace(v3, Term::apply("h"));
  g.normalize();
  return g;
}

// One left-moving transition that halts after clearing the tape.
inline TuringMachine halting_machine() {
  TuringMachine m;
  m.states = {"q0", "qf"};
  m.alphabet = {"b"};
  m.blank = "b";
  m.initial = "q0";
  m.final_state = "qf";
  m.transitions = {{"q0", "b", "qf", "b", false}};
  return m;
}

// Two states bouncing right and left forever.
inline TuringMachine looping_machine() {
  TuringMachine m;
  m.states = {"q0", "q1", "qf"};
  m.alphabet = {"b"};
  m.blank = "b";
  m.initial = "q0";
  m.final_state = "qf";
  m.transitions = {{"q0", "b", "q1", "b", true}, {"q1", "b", "q0", "b", false}};
  return m;
}

}  // namespace gsp::testing
