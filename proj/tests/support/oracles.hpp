// Independent brute-force oracles for the engine's search procedures. These
// deliberately re-derive results from the definitions with no shared code
// beyond the basic graph accessors.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "gsp/graph.hpp"
#include "gsp/rewrite.hpp"
#include "gsp/term.hpp"

namespace gsp::testing {

// Checks the six subgraph conditions directly from the definition text.
inline bool subgraph_by_definition(const Graph& h, const Graph& g) {
  for (const NodeId& n : h.nodes)
    if (!g.has_node(n)) return false;
  for (const Edge& e : h.edges)
    if (!g.has_edge(e.first, e.second)) return false;
  for (const Edge& e : g.edges) {
    bool a = h.has_node(e.first), b = h.has_node(e.second);
    if (a && b && !h.has_edge(e.first, e.second)) return false;
    if (a && !b && !h.is_root(e.first)) return false;
    if (b && !a && !h.is_root(e.second)) return false;
  }
  for (const NodeId& r : g.roots)
    if (h.has_node(r) && !h.is_root(r)) return false;
  for (const NodeId& n : h.nodes) {
    if (h.is_root(n)) {
      if (h.label(n)) return false;
    } else {
      const Term* mine = h.label(n);
      const Term* host = g.label(n);
      if (!mine || !host || !(*mine == *host)) return false;
    }
  }
  return true;
}

// Enumerates every injective node map from the rule's left side into the
// host, then filters by the subgraph definition and one-sided label
// matching. Returns the instantiated images.
inline std::vector<Graph> brute_force_match_images(const Graph& lhs, const Graph& host) {
  std::vector<Graph> images;
  std::vector<NodeId> pattern_nodes = lhs.nodes;
  std::vector<NodeId> host_nodes = host.nodes;
  std::vector<std::size_t> choice(pattern_nodes.size(), 0);

  std::function<void(std::size_t, std::map<NodeId, NodeId>&)> step =
      [&](std::size_t i, std::map<NodeId, NodeId>& mu) {
        if (i == pattern_nodes.size()) {
          // Build the candidate image with matched labels.
          Substitution sigma;
          Graph image;
          for (const NodeId& n : pattern_nodes) image.nodes.push_back(mu.at(n));
          for (const NodeId& r : lhs.roots) image.roots.push_back(mu.at(r));
          for (const Edge& e : lhs.edges) image.edges.push_back({mu.at(e.first), mu.at(e.second)});
          image.normalize();
          for (const NodeId& n : pattern_nodes) {
            if (lhs.is_root(n)) continue;
            const Term* pat = lhs.label(n);
            const Term* sub = host.label(mu.at(n));
            if (!sub || !match_term(sigma(*pat), *sub, sigma)) return;
          }
          for (const NodeId& n : pattern_nodes)
            if (!lhs.is_root(n)) image.labels.emplace(mu.at(n), *host.label(mu.at(n)));
          if (subgraph_by_definition(image, host)) images.push_back(std::move(image));
          return;
        }
        for (const NodeId& candidate : host_nodes) {
          if (candidate.sort != pattern_nodes[i].sort) continue;
          bool taken = false;
          for (const auto& [k, v] : mu) taken |= (v == candidate);
          if (taken) continue;
          mu.emplace(pattern_nodes[i], candidate);
          step(i + 1, mu);
          mu.erase(pattern_nodes[i]);
        }
      };
  std::map<NodeId, NodeId> mu;
  step(0, mu);
  return images;
}

}  // namespace gsp::testing
