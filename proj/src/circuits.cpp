#include "gsp/circuits.hpp"

#include <algorithm>
#include <map>

#include "gsp/errors.hpp"

namespace gsp {

namespace {

// Port labels are positive integer literals.
std::optional<std::uint32_t> port_number(const Term& t) {
  if (t.is_variable() || !t.args().empty()) return std::nullopt;
  const std::string& s = t.head();
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  unsigned long value = std::stoul(s);
  if (value == 0) return std::nullopt;
  return static_cast<std::uint32_t>(value);
}

std::string node_name(const NodeId& n) { return "n" + std::to_string(n.id); }

}  // namespace

CircuitValidation validate_circuit(const Graph& g) {
  CircuitValidation out;
  auto flag = [&](const std::string& msg) { out.violations.push_back(msg); };

  for (const std::string& msg : validate_graph(g)) flag(msg);

  for (const NodeId& n : g.nodes) {
    if (n.sort.kind == Sort::Kind::Custom)
      flag("node " + node_name(n) + " has a sort outside the class");
    if (n.sort.kind != Sort::Kind::Gate) {
      if (const Term* t = g.label(n); t && !port_number(*t))
        flag("port " + node_name(n) + " is not labeled with a positive integer");
    }
  }

  // Gate adjacency: exactly the declared entry and output ports, numbered
  // 1..n and 1..m.
  for (const NodeId& n : g.nodes) {
    if (!n.sort.is_gate()) continue;
    std::vector<std::uint32_t> in_ports, out_ports;
    for (const Edge& e : g.edges) {
      if (e.second == n) {
        if (e.first.sort.kind != Sort::Kind::Into) {
          flag("edge into gate " + node_name(n) + " from a non-entry node");
          continue;
        }
        const Term* t = g.label(e.first);
        auto num = t ? port_number(*t) : std::nullopt;
        if (!num) {
          flag("entry port of gate " + node_name(n) + " is unnumbered");
          continue;
        }
        in_ports.push_back(*num);
      }
      if (e.first == n) {
        if (e.second.sort.kind != Sort::Kind::From) {
          flag("edge out of gate " + node_name(n) + " to a non-output node");
          continue;
        }
        const Term* t = g.label(e.second);
        auto num = t ? port_number(*t) : std::nullopt;
        if (!num) {
          flag("output port of gate " + node_name(n) + " is unnumbered");
          continue;
        }
        out_ports.push_back(*num);
      }
    }
    std::sort(in_ports.begin(), in_ports.end());
    std::sort(out_ports.begin(), out_ports.end());
    auto consecutive = [](const std::vector<std::uint32_t>& v, std::uint32_t count) {
      if (v.size() != count) return false;
      for (std::uint32_t i = 0; i < count; ++i)
        if (v[i] != i + 1) return false;
      return true;
    };
    if (!consecutive(in_ports, n.sort.entries))
      flag("gate " + node_name(n) + " does not have entry ports 1.." +
           std::to_string(n.sort.entries));
    if (!consecutive(out_ports, n.sort.outputs))
      flag("gate " + node_name(n) + " does not have output ports 1.." +
           std::to_string(n.sort.outputs));
  }

  // Port degrees.
  for (const NodeId& n : g.nodes) {
    std::size_t din = g.in_degree(n), dout = g.out_degree(n);
    if (n.sort.kind == Sort::Kind::Into) {
      if (din != 1) flag("entry node " + node_name(n) + " needs exactly one incoming edge");
      if (dout > 1) flag("entry node " + node_name(n) + " has more than one outgoing edge");
    } else if (n.sort.kind == Sort::Kind::From) {
      if (dout != 1) flag("output node " + node_name(n) + " needs exactly one outgoing edge");
      if (din > 1) flag("output node " + node_name(n) + " has more than one incoming edge");
    }
  }

  // Numbered ports point at gates with enough positions.
  for (const auto& [n, t] : g.labels) {
    auto num = port_number(t);
    if (!num) continue;
    if (n.sort.kind == Sort::Kind::Into) {
      bool found = false;
      for (const Edge& e : g.edges) {
        if (e.first != n) continue;
        found = true;
        if (!e.second.sort.is_gate() || *num > e.second.sort.entries)
          flag("entry port " + node_name(n) + " exceeds its gate's entry count");
      }
      if (!found) flag("numbered entry port " + node_name(n) + " has no outgoing edge");
    } else if (n.sort.kind == Sort::Kind::From) {
      bool found = false;
      for (const Edge& e : g.edges) {
        if (e.second != n) continue;
        found = true;
        if (!e.first.sort.is_gate() || *num > e.first.sort.outputs)
          flag("output port " + node_name(n) + " exceeds its gate's output count");
      }
      if (!found) flag("numbered output port " + node_name(n) + " has no incoming edge");
    }
  }

  // Remaining edges are wires from output nodes to entry nodes.
  for (const Edge& e : g.edges) {
    if (e.first.sort.is_gate() || e.second.sort.is_gate()) continue;
    if (!(e.first.sort.kind == Sort::Kind::From && e.second.sort.kind == Sort::Kind::Into))
      flag("edge " + node_name(e.first) + "->" + node_name(e.second) +
           " is not an output-to-entry wire");
  }

  // Root shape Rf . Ri.
  std::size_t split = 0;
  while (split < g.roots.size() && g.roots[split].sort.kind == Sort::Kind::From) ++split;
  for (std::size_t i = 0; i < g.roots.size(); ++i) {
    const NodeId& r = g.roots[i];
    if (i < split) {
      if (g.in_degree(r) != 0)
        flag("input root " + node_name(r) + " has an incoming edge");
    } else {
      if (r.sort.kind != Sort::Kind::Into)
        flag("root sequence is not input roots followed by output roots");
      else if (g.out_degree(r) != 0)
        flag("output root " + node_name(r) + " has an outgoing edge");
    }
  }

  if (!out.violations.empty()) return out;
  Circuit c;
  c.graph = g;
  c.inputs.assign(g.roots.begin(), g.roots.begin() + split);
  c.outputs.assign(g.roots.begin() + split, g.roots.end());
  out.circuit = std::move(c);
  return out;
}

bool is_circuit(const Graph& g) { return validate_circuit(g).violations.empty(); }

NodeId wire_target(const Graph& g, const NodeId& input) {
  for (const Edge& e : g.edges)
    if (e.first == input) return e.second;
  throw PreconditionError("input root without outgoing edge");
}

NodeId wire_source(const Graph& g, const NodeId& output) {
  for (const Edge& e : g.edges)
    if (e.second == output) return e.first;
  throw PreconditionError("output root without incoming edge");
}

CircuitPrimitive CircuitPrimitive::id_graph(std::size_t wires) {
  CircuitPrimitive p;
  p.kind = Kind::IdGraph;
  p.wires = wires;
  return p;
}

CircuitPrimitive CircuitPrimitive::swap_graph() {
  CircuitPrimitive p;
  p.kind = Kind::SwapGraph;
  return p;
}

CircuitPrimitive CircuitPrimitive::elementary_gate(Term label, std::size_t entries,
                                                   std::size_t outputs) {
  CircuitPrimitive p;
  p.kind = Kind::ElementaryGate;
  p.gate_label = std::move(label);
  p.entries = entries;
  p.outputs = outputs;
  return p;
}

Circuit build_primitive(const CircuitPrimitive& p, std::uint32_t first_id) {
  Graph g;
  std::uint32_t next = first_id;
  auto add = [&](Sort sort) {
    NodeId n{next++, std::move(sort)};
    g.nodes.push_back(n);
    return n;
  };
  switch (p.kind) {
    case CircuitPrimitive::Kind::IdGraph: {
      std::vector<NodeId> froms, intos;
      for (std::size_t i = 0; i < p.wires; ++i) {
        NodeId a = add(Sort::from());
        NodeId b = add(Sort::into());
        g.edges.push_back({a, b});
        froms.push_back(a);
        intos.push_back(b);
      }
      g.roots = froms;
      g.roots.insert(g.roots.end(), intos.begin(), intos.end());
      break;
    }
    case CircuitPrimitive::Kind::SwapGraph: {
      NodeId a1 = add(Sort::from());
      NodeId a2 = add(Sort::from());
      NodeId a3 = add(Sort::into());
      NodeId a4 = add(Sort::into());
      g.edges = {{a1, a4}, {a2, a3}};
      g.roots = {a1, a2, a3, a4};
      break;
    }
    case CircuitPrimitive::Kind::ElementaryGate: {
      NodeId gate = add(Sort::gate(static_cast<std::uint32_t>(p.entries),
                                   static_cast<std::uint32_t>(p.outputs)));
      g.labels.emplace(gate, p.gate_label);
      std::vector<NodeId> in_roots, out_roots;
      for (std::size_t i = 0; i < p.entries; ++i) {
        NodeId root = add(Sort::from());
        NodeId port = add(Sort::into());
        g.labels.emplace(port, Term::apply(std::to_string(i + 1)));
        g.edges.push_back({root, port});
        g.edges.push_back({port, gate});
        in_roots.push_back(root);
      }
      for (std::size_t j = 0; j < p.outputs; ++j) {
        NodeId port = add(Sort::from());
        NodeId root = add(Sort::into());
        g.labels.emplace(port, Term::apply(std::to_string(j + 1)));
        g.edges.push_back({gate, port});
        g.edges.push_back({port, root});
        out_roots.push_back(root);
      }
      g.roots = in_roots;
      g.roots.insert(g.roots.end(), out_roots.begin(), out_roots.end());
      break;
    }
  }
  g.normalize();
  CircuitValidation v = validate_circuit(g);
  if (!v.circuit) throw PreconditionError("primitive construction left the class: " +
                                          (v.violations.empty() ? "" : v.violations.front()));
  return std::move(*v.circuit);
}

namespace {

Circuit rename_off(const Circuit& c, const Graph& reserved) {
  NodeRenaming nu = fresh_node_renaming(c.graph.nodes, reserved.nodes);
  Circuit out;
  out.graph = apply_renaming(nu, c.graph);
  for (const NodeId& n : c.inputs) out.inputs.push_back(nu(n));
  for (const NodeId& n : c.outputs) out.outputs.push_back(nu(n));
  return out;
}

bool disjoint(const Graph& a, const Graph& b) {
  return std::none_of(a.nodes.begin(), a.nodes.end(),
                      [&](const NodeId& n) { return b.has_node(n); });
}

}  // namespace

Circuit parallel_compose(const Circuit& g1, const Circuit& g2) {
  const Circuit& second = disjoint(g1.graph, g2.graph) ? g2 : rename_off(g2, g1.graph);
  Graph g;
  g.nodes = g1.graph.nodes;
  g.nodes.insert(g.nodes.end(), second.graph.nodes.begin(), second.graph.nodes.end());
  g.edges = g1.graph.edges;
  g.edges.insert(g.edges.end(), second.graph.edges.begin(), second.graph.edges.end());
  g.labels = g1.graph.labels;
  g.labels.insert(second.graph.labels.begin(), second.graph.labels.end());
  g.roots = g1.inputs;
  g.roots.insert(g.roots.end(), second.inputs.begin(), second.inputs.end());
  g.roots.insert(g.roots.end(), g1.outputs.begin(), g1.outputs.end());
  g.roots.insert(g.roots.end(), second.outputs.begin(), second.outputs.end());
  g.normalize();

  Circuit out;
  out.graph = std::move(g);
  out.inputs = g1.inputs;
  out.inputs.insert(out.inputs.end(), second.inputs.begin(), second.inputs.end());
  out.outputs = g1.outputs;
  out.outputs.insert(out.outputs.end(), second.outputs.begin(), second.outputs.end());
  return out;
}

Circuit sequential_compose(const Circuit& g1, const Circuit& g2) {
  if (g1.outputs.size() != g2.inputs.size())
    throw ArityMismatch("sequential composition needs matching output/input counts");
  const Circuit& second = disjoint(g1.graph, g2.graph) ? g2 : rename_off(g2, g1.graph);

  // The interface mapping: g1's output roots land on g2's wire targets and
  // g2's input roots land on g1's wire sources; the roots themselves vanish.
  std::map<NodeId, NodeId> upsilon;
  for (std::size_t i = 0; i < g1.outputs.size(); ++i) {
    upsilon[g1.outputs[i]] = wire_target(second.graph, second.inputs[i]);
    upsilon[second.inputs[i]] = wire_source(g1.graph, g1.outputs[i]);
  }
  auto remap = [&](const NodeId& n) {
    auto it = upsilon.find(n);
    return it == upsilon.end() ? n : it->second;
  };

  Graph g;
  for (const NodeId& n : g1.graph.nodes) g.nodes.push_back(remap(n));
  for (const NodeId& n : second.graph.nodes) g.nodes.push_back(remap(n));
  for (const Edge& e : g1.graph.edges) g.edges.push_back({remap(e.first), remap(e.second)});
  for (const Edge& e : second.graph.edges) g.edges.push_back({remap(e.first), remap(e.second)});
  g.roots = g1.inputs;
  g.roots.insert(g.roots.end(), second.outputs.begin(), second.outputs.end());
  g.labels = g1.graph.labels;
  g.labels.insert(second.graph.labels.begin(), second.graph.labels.end());
  g.normalize();

  Circuit out;
  out.graph = std::move(g);
  out.inputs = g1.inputs;
  out.outputs = second.outputs;
  return out;
}

bool is_subcircuit(const Graph& h, const Graph& g) {
  return is_subgraph(h, g) && is_circuit(h) && is_circuit(g);
}

const CRelation& circuits_crelation() {
  static const CRelation instance{
      "circuits",
      NodePreorder::sort_equality(),
      [](const Graph& g) { return is_circuit(g); },
      [](const Graph& sub, const Graph& host) { return is_subcircuit(sub, host); },
      [](const Graph& h1, const Graph& h2, const Graph& host) -> std::optional<Graph> {
        std::vector<Edge> connecting;
        for (const Edge& e : host.edges) {
          auto ext = [&](const Graph& a, const Graph& b, const NodeId& n) {
            return a.is_root(n) && !b.has_node(n);
          };
          if ((ext(h1, h2, e.first) && ext(h2, h1, e.second)) ||
              (ext(h2, h1, e.first) && ext(h1, h2, e.second)))
            connecting.push_back(e);
        }
        auto merged = e_merge(h1, h2, connecting, MergeRootOrder::FromThenInto);
        if (!merged) return std::nullopt;
        return merged->graph;
      },
      MergeRootOrder::FromThenInto};
  return instance;
}

}  // namespace gsp
