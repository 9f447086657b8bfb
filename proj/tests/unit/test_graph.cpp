#include <doctest.h>

#include "../support/fixtures.hpp"
#include "../support/generators.hpp"
#include "gsp/errors.hpp"
#include "gsp/graph.hpp"

using namespace gsp;
using namespace gsp::testing;

TEST_CASE("the worked four-node chain validates") {
  CHECK(validate_graph(chain_host()).empty());
  CHECK(validate_graph(chain_mid()).empty());
  CHECK(validate_graph(diamond()).empty());
}

TEST_CASE("a labeled root is a violation") {
  Graph g = chain_mid();
  g.labels.emplace(pn(2), Term::apply("a"));
  auto violations = validate_graph(g);
  REQUIRE(!violations.empty());
  CHECK(violations.front().find("carries a label") != std::string::npos);
}

TEST_CASE("an edge to an absent node is a violation") {
  Graph g = chain_mid();
  g.edges.push_back({pn(2), pn(99)});
  g.normalize();
  CHECK(!validate_graph(g).empty());
}

TEST_CASE("an unlabeled inner node is a violation") {
  Graph g = chain_mid();
  g.roots.pop_back();
  CHECK(!validate_graph(g).empty());
}

TEST_CASE("identity renaming preserves the graph") {
  Graph g = chain_host();
  CHECK(apply_renaming(NodeRenaming::identity(g.nodes), g) == g);
}

TEST_CASE("renaming maps every component and validates") {
  Graph g = diamond();
  std::map<NodeId, NodeId> m;
  for (const NodeId& n : g.nodes) m.emplace(n, pn(n.id + 100));
  NodeRenaming mu = NodeRenaming::make(m);
  Graph renamed = apply_renaming(mu, g);
  CHECK(validate_graph(renamed).empty());
  CHECK(renamed.node_count() == g.node_count());
  CHECK(renamed.roots.size() == 2);
  CHECK(renamed.roots[0].id == 111);
  // Field-by-field against the manual mapping.
  for (const Edge& e : g.edges) CHECK(renamed.has_edge(mu(e.first), mu(e.second)));
  for (const auto& [n, t] : g.labels) CHECK(*renamed.label(mu(n)) == t);
}

TEST_CASE("sort-breaking renamings are rejected at construction") {
  std::map<NodeId, NodeId> bad{{pn(1), NodeId{2, Sort::custom("other")}}};
  CHECK_THROWS_AS(NodeRenaming::make(bad), DomainError);
  std::map<NodeId, NodeId> collide{{pn(1), pn(3)}, {pn(2), pn(3)}};
  CHECK_THROWS_AS(NodeRenaming::make(collide), DomainError);
}

TEST_CASE("renaming a graph with an unmapped node fails") {
  Graph g = chain_mid();
  NodeRenaming partial = NodeRenaming::make({{pn(2), pn(2)}});
  CHECK_THROWS_AS(apply_renaming(partial, g), DomainError);
}

TEST_CASE("label substitution touches only labels") {
  Graph g = chain_host();
  Substitution s = Substitution::singleton("x", Term::apply("b"));
  Graph out = apply_label_subst(s, g);
  CHECK(out.nodes == g.nodes);
  CHECK(out.roots == g.roots);
  CHECK(out.edges == g.edges);
  CHECK(*out.label(pn(2)) == Term::apply("f", {Term::apply("b")}));
  CHECK(apply_label_subst(Substitution{}, g) == g);

  Graph ground = diamond();
  CHECK(apply_label_subst(s, ground) == ground);
}

TEST_CASE("isomorphism: identity, renamed copies, node-count mismatch") {
  Graph g = chain_host();
  auto self = find_isomorphism(g, g);
  REQUIRE(self);
  for (const NodeId& n : g.nodes) CHECK((*self)(n) == n);

  Graph d = diamond();
  std::map<NodeId, NodeId> m;
  for (const NodeId& n : d.nodes) m.emplace(n, pn(n.id + 50));
  NodeRenaming mu = NodeRenaming::make(m);
  Graph copy = apply_renaming(mu, d);
  auto found = find_isomorphism(d, copy);
  REQUIRE(found);
  // Round-trip: applying the found renaming to the copy gives d back.
  CHECK(apply_renaming(*found, copy) == d);

  CHECK(!find_isomorphism(chain_host(), chain_mid()));
}

TEST_CASE("isomorphism distinguishes labels and root order") {
  Graph a = chain_mid();
  Graph b = chain_mid();
  std::reverse(b.roots.begin(), b.roots.end());
  CHECK(!isomorphic(a, b));  // root sequences pair positionwise
}

TEST_CASE("isomorphism is an equivalence on random graphs") {
  Gen gen(23);
  for (int i = 0; i < 120; ++i) {
    Graph g = gen.graph(6);
    Graph h = gen.graph(6);
    Graph k = gen.graph(6);
    CHECK(isomorphic(g, g));
    if (isomorphic(g, h)) CHECK(isomorphic(h, g));
    if (isomorphic(g, h) && isomorphic(h, k)) CHECK(isomorphic(g, k));
    // Renamed copies are always isomorphic.
    NodeRenaming nu = fresh_node_renaming(g.nodes, g.nodes);
    CHECK(isomorphic(apply_renaming(nu, g), g));
  }
}

TEST_CASE("renaming composition matches composed application") {
  Gen gen(29);
  for (int i = 0; i < 100; ++i) {
    Graph g = gen.graph(6);
    NodeRenaming first = fresh_node_renaming(g.nodes, g.nodes);
    Graph mid = apply_renaming(first, g);
    NodeRenaming second = fresh_node_renaming(mid.nodes, mid.nodes);
    CHECK(apply_renaming(second, apply_renaming(first, g)) ==
          apply_renaming(second.compose(first), g));
  }
}

TEST_CASE("label substitution commutes with renaming") {
  Gen gen(31);
  for (int i = 0; i < 100; ++i) {
    Graph g = gen.graph(6);
    NodeRenaming nu = fresh_node_renaming(g.nodes, g.nodes);
    Substitution s = Substitution::singleton("x", gen.term(1, false));
    CHECK(apply_label_subst(s, apply_renaming(nu, g)) ==
          apply_renaming(nu, apply_label_subst(s, g)));
  }
}

TEST_CASE("unify_graphs finds a renaming plus substitution witness") {
  // Same shape, labels x vs f(b): unifiable.
  Graph a;
  a.nodes = {pn(1)};
  a.labels.emplace(pn(1), Term::variable("x"));
  Graph b;
  b.nodes = {pn(2)};
  b.labels.emplace(pn(2), Term::apply("f", {Term::apply("b")}));
  auto witness = unify_graphs(a, b);
  REQUIRE(witness);
  CHECK(*witness->subst.lookup("x") == Term::apply("f", {Term::apply("b")}));

  Graph c;  // different shape
  c.nodes = {pn(3), pn(4)};
  c.roots = {pn(3), pn(4)};
  CHECK(!unify_graphs(a, c));
}

TEST_CASE("a custom preorder can refuse root pairings") {
  NodePreorder ids_close{[](const NodeId& a, const NodeId& b) {
    return a.sort == b.sort && a.id / 100 <= b.id / 100;
  }};
  CHECK(root_similar(chain_mid(), chain_mid(), ids_close));
  Graph far =
      apply_renaming(NodeRenaming::make({{pn(2), pn(202)}, {pn(3), pn(303)}}), chain_mid());
  CHECK(root_similar(chain_mid(), far));            // default: sorts only
  CHECK(!root_similar(chain_mid(), far, ids_close));  // 0/100 vs 2/100 classes
}
