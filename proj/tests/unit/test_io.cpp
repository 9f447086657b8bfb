#include <doctest.h>

#include <fstream>
#include <sstream>

#include "../support/fixtures.hpp"
#include "gsp/io.hpp"
#include "gsp/rewrite.hpp"

using namespace gsp;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string fixture(const std::string& name) {
  return slurp(std::string(GSP_FIXTURE_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("the chain fixture loads with the expected relations") {
  ParseResult r = parse_problem(fixture("example_chain.gsp"));
  REQUIRE(r.problem);
  const Graph* g = r.problem->find_graph("G");
  const Graph* h = r.problem->find_graph("H");
  const Graph* hp = r.problem->find_graph("Hp");
  const Graph* expected = r.problem->find_graph("R");
  REQUIRE((g && h && hp && expected));
  CHECK(is_subgraph(*h, *g));
  CHECK(is_substitutable(*hp, *h, *g));
  CHECK(replace_subgraph(*g, *h, *hp) == *expected);
}

TEST_CASE("an empty file parses to an empty problem") {
  ParseResult r = parse_problem("");
  REQUIRE(r.problem);
  CHECK(r.problem->graphs.empty());
  CHECK(r.problem->asserts.empty());
}

TEST_CASE("parse errors carry line numbers") {
  ParseResult r = parse_problem("graph G {\n  node a :: n;\n}\n");
  CHECK(!r.problem);
  REQUIRE(!r.errors.empty());
  CHECK(r.errors.front().find("line 2") != std::string::npos);
}

TEST_CASE("rules with mismatched root sorts are rejected") {
  std::string text =
      "sort n;\nsort m;\n"
      "graph A { node a : n; roots [a]; }\n"
      "graph B { node b : m; roots [b]; }\n"
      "rule R1 : A -> B;\n";
  ParseResult r = parse_problem(text);
  CHECK(!r.problem);
  bool mentioned = false;
  for (const std::string& e : r.errors)
    mentioned |= e.find("root-similar") != std::string::npos;
  CHECK(mentioned);
}

TEST_CASE("undeclared sorts and arity clashes are reported") {
  ParseResult r1 = parse_problem("graph A { node a : nowhere; roots [a]; }\n");
  CHECK(!r1.problem);
  ParseResult r2 = parse_problem(
      "sort n;\nvars x;\n"
      "graph A { node a : n label f(x); node b : n label f(x, x); roots []; }\n");
  CHECK(!r2.problem);
}

TEST_CASE("labeled roots are a load-time violation") {
  ParseResult r = parse_problem("sort n;\ngraph A { node a : n label c; roots [a]; }\n");
  CHECK(!r.problem);
}

TEST_CASE("round trip is the identity after one canonicalization") {
  for (const std::string& name : {"example_chain.gsp", "circuit_compose.gsp"}) {
    ParseResult first = parse_problem(fixture(name));
    REQUIRE(first.problem);
    std::string canonical = serialize_problem(*first.problem);
    ParseResult second = parse_problem(canonical);
    REQUIRE(second.problem);
    CHECK(serialize_problem(*second.problem) == canonical);
  }
}

TEST_CASE("the circuit fixture composes to the declared composite") {
  ParseResult r = parse_problem(fixture("circuit_compose.gsp"));
  REQUIRE(r.problem);
  const Graph* composed = r.problem->find_graph("comp");
  const Graph* expected = r.problem->find_graph("F4");
  REQUIRE((composed && expected));
  CHECK(*composed == *expected);
}

TEST_CASE("asserts become literals with the declared polarity") {
  std::string text =
      "sort n;\n"
      "graph A { node a : n label c; roots []; }\n"
      "graph B { node b : n label d; roots []; }\n"
      "assert eq A B;\nassert neq A B;\n";
  ParseResult r = parse_problem(text);
  REQUIRE(r.problem);
  auto literals = r.problem->literals();
  REQUIRE(literals.size() == 2);
  CHECK(literals[0].kind() == GraphLiteral::Kind::Eq);
  CHECK(literals[1].kind() == GraphLiteral::Kind::Neq);
}

TEST_CASE("DOT export is deterministic with double-circled roots") {
  ParseResult r = parse_problem(fixture("example_chain.gsp"));
  REQUIRE(r.problem);
  const Graph* h = r.problem->find_graph("H");
  std::string dot = export_dot(*h, &*r.problem);
  CHECK(dot == export_dot(*h, &*r.problem));
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(dot.find("\"a2\" -> \"a3\"") != std::string::npos);

  std::string empty_dot = export_dot(Graph{});
  CHECK(empty_dot == "digraph G {\n}\n");

  // Gate nodes are drawn as boxes; inner nodes carry name:sort:label.
  ParseResult c = parse_problem(fixture("circuit_compose.gsp"));
  REQUIRE(c.problem);
  std::string gate_dot = export_dot(*c.problem->find_graph("G3"), &*c.problem);
  CHECK(gate_dot.find("shape=box") != std::string::npos);
  CHECK(gate_dot.find("a3:gate(1,2):f") != std::string::npos);
}
