// Deterministic textual formats: the .gsp problem format, canonical
// serialization and DOT export.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gsp/graph.hpp"
#include "gsp/literal.hpp"
#include "gsp/rewrite.hpp"

namespace gsp {

struct CircuitExpr {
  enum class Kind { Name, Id, Swap, Gate, Par, Seq };

  Kind kind = Kind::Name;
  std::string name;              // Name
  std::size_t wires = 0;         // Id
  Term gate_label = Term::apply("f");
  std::size_t entries = 0;       // Gate
  std::size_t outputs = 0;
  std::shared_ptr<CircuitExpr> left, right;  // Par / Seq

  std::string to_string() const;
};

struct Directives {
  std::string order = "node-count";
  std::string crelation = "plain";
  std::size_t merges = 500;
  std::size_t fuel = 100;
  std::size_t literals = 10000;
};

struct RuleDecl {
  std::string name;
  std::string lhs;
  std::string rhs;
};

struct AssertDecl {
  bool equal = true;
  std::string lhs;
  std::string rhs;
};

struct ProblemFile {
  std::vector<std::string> sorts;  // custom sort names, kept sorted
  std::vector<std::string> vars;   // kept sorted
  std::map<std::string, Graph> graphs;            // explicit graph declarations
  std::map<std::string, CircuitExpr> circuits;    // circuit definitions
  std::map<std::string, Graph> circuit_graphs;    // their desugared values
  std::vector<RuleDecl> rules;
  std::vector<AssertDecl> asserts;
  Directives directives;

  // File-scoped node naming: one name per node id, shared across graphs.
  std::map<std::string, NodeId> node_by_name;
  std::map<std::uint32_t, std::string> name_of_node;

  const Graph* find_graph(const std::string& name) const;
  RuleSet rule_set() const;                  // resolved rules
  std::vector<GraphLiteral> literals() const;  // resolved asserts

  // Registers a programmatically built graph, inventing node names.
  void add_graph(const std::string& name, const Graph& g);
};

struct ParseResult {
  std::optional<ProblemFile> problem;
  std::vector<std::string> errors;  // "line N: message"
};

ParseResult parse_problem(const std::string& text);

// Canonical form: directives, sorted sort and vars clauses, graphs by name
// with nodes in id order, circuits and rules by name, asserts in input
// order. parse(serialize(p)) reproduces p's canonical form byte for byte.
std::string serialize_problem(const ProblemFile& p);

// One DOT digraph; roots double-circled, gate nodes drawn as boxes,
// deterministic node order. Names come from the problem when given.
std::string export_dot(const Graph& g, const ProblemFile* names = nullptr);

// Term concrete syntax (variables per the problem's vars clause).
std::string term_to_text(const Term& t);

}  // namespace gsp
