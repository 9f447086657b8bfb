#include "gsp/rewrite.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gsp/errors.hpp"

namespace gsp {

bool is_subgraph(const Graph& h, const Graph& g) {
  // 1. node inclusion
  for (const NodeId& n : h.nodes)
    if (!g.has_node(n)) return false;
  // 2. edge inclusion
  for (const Edge& e : h.edges)
    if (!g.has_edge(e.first, e.second)) return false;
  // 3. edges of g between shared nodes belong to h
  for (const Edge& e : g.edges) {
    if (h.has_node(e.first) && h.has_node(e.second) && !h.has_edge(e.first, e.second))
      return false;
  }
  // 4. frontier edges attach at roots of h
  for (const Edge& e : g.edges) {
    if (h.has_node(e.first) && !h.has_node(e.second) && !h.is_root(e.first)) return false;
    if (h.has_node(e.second) && !h.has_node(e.first) && !h.is_root(e.second)) return false;
  }
  // 5. roots of g inside h are roots of h
  for (const NodeId& r : g.roots)
    if (h.has_node(r) && !h.is_root(r)) return false;
  // 6. labels are the restriction of g's labels to h's inner nodes
  for (const auto& [n, t] : h.labels) {
    const Term* gt = g.label(n);
    if (!gt || !(*gt == t)) return false;
  }
  for (const NodeId& n : h.nodes)
    if (!h.is_root(n) && h.labels.find(n) == h.labels.end()) return false;
  return true;
}

bool is_substitutable(const Graph& h2, const Graph& h1, const Graph& g,
                      const NodePreorder& preorder) {
  if (!is_subgraph(h1, g))
    throw PreconditionError("is_substitutable: first graph is not a subgraph of the host");
  if (!root_similar(h1, h2, preorder)) return false;
  for (const NodeId& n : h2.nodes)
    if (g.has_node(n) && !h1.has_node(n)) return false;
  return true;
}

NodeRenaming replacement_mapping(const Graph& g, const Graph& h, const Graph& h2) {
  std::map<NodeId, NodeId> mapping;
  for (std::size_t i = 0; i < h.roots.size(); ++i) mapping.emplace(h.roots[i], h2.roots[i]);
  for (const NodeId& n : g.nodes)
    if (!h.has_node(n)) mapping.emplace(n, n);
  return NodeRenaming::make(mapping);
}

Graph replace_subgraph(const Graph& g, const Graph& h, const Graph& h2) {
  if (!is_subgraph(h, g))
    throw PreconditionError("replace_subgraph: not a subgraph of the host");
  if (!is_substitutable(h2, h, g))
    throw PreconditionError("replace_subgraph: replacement is not substitutable");
  return detail::replace_subgraph_unchecked(g, h, h2);
}

Graph detail::replace_subgraph_unchecked(const Graph& g, const Graph& h, const Graph& h2) {
  const NodeRenaming mu = replacement_mapping(g, h, h2);
  Graph out;
  for (const NodeId& n : g.nodes)
    if (!h.has_node(n)) out.nodes.push_back(n);
  out.nodes.insert(out.nodes.end(), h2.nodes.begin(), h2.nodes.end());
  for (const NodeId& r : g.roots) out.roots.push_back(mu(r));
  for (const Edge& e : g.edges)
    if (!h.has_edge(e.first, e.second)) out.edges.push_back({mu(e.first), mu(e.second)});
  out.edges.insert(out.edges.end(), h2.edges.begin(), h2.edges.end());
  out.normalize();

  // Labels: kept host labels, the replacement's labels, and host labels
  // carried over to replacement roots whose preimage was inner in the host.
  std::set<NodeId> out_roots(out.roots.begin(), out.roots.end());
  for (const NodeId& n : out.nodes) {
    if (out_roots.count(n)) continue;
    if (!h2.has_node(n)) {
      out.labels.emplace(n, g.labels.at(n));
    } else if (const Term* t = h2.label(n)) {
      out.labels.emplace(n, *t);
    } else if (auto pre = mu.preimage(n); pre && g.is_inner(*pre) && h.is_root(*pre)) {
      out.labels.emplace(n, g.labels.at(*pre));
    }
  }
  return out;
}

namespace {

std::vector<NodeId> merged_roots(const Graph& g1, const Graph& g2, MergeRootOrder order) {
  std::set<NodeId> inner;
  for (const NodeId& n : g1.nodes)
    if (!g1.is_root(n)) inner.insert(n);
  for (const NodeId& n : g2.nodes)
    if (!g2.is_root(n)) inner.insert(n);
  std::vector<NodeId> roots;
  std::set<NodeId> seen;
  auto take = [&](const std::vector<NodeId>& seq) {
    for (const NodeId& n : seq)
      if (!inner.count(n) && seen.insert(n).second) roots.push_back(n);
  };
  take(g1.roots);
  take(g2.roots);
  if (order == MergeRootOrder::FromThenInto)
    std::stable_partition(roots.begin(), roots.end(),
                          [](const NodeId& n) { return n.sort.kind == Sort::Kind::From; });
  return roots;
}

}  // namespace

std::optional<MergeResult> e_merge(const Graph& g1, const Graph& g2,
                                   const std::vector<Edge>& connecting, MergeRootOrder order) {
  for (const Edge& e : connecting) {
    auto external_root = [](const Graph& owner, const Graph& other, const NodeId& n) {
      return owner.is_root(n) && !other.has_node(n);
    };
    bool fwd = external_root(g1, g2, e.first) && external_root(g2, g1, e.second);
    bool bwd = external_root(g2, g1, e.first) && external_root(g1, g2, e.second);
    if (!fwd && !bwd)
      throw EdgeShapeError("e_merge: connecting edge does not join external roots");
  }

  std::vector<std::pair<Term, Term>> pairs;
  for (const NodeId& n : g1.nodes) {
    if (!g2.has_node(n)) continue;
    const Term* t1 = g1.label(n);
    const Term* t2 = g2.label(n);
    if (t1 && t2) pairs.emplace_back(*t1, *t2);
  }
  auto sigma = unify(pairs);
  if (!sigma) return std::nullopt;

  Graph out;
  out.nodes = g1.nodes;
  out.nodes.insert(out.nodes.end(), g2.nodes.begin(), g2.nodes.end());
  out.roots = merged_roots(g1, g2, order);
  out.edges = g1.edges;
  out.edges.insert(out.edges.end(), g2.edges.begin(), g2.edges.end());
  out.edges.insert(out.edges.end(), connecting.begin(), connecting.end());
  out.normalize();
  for (const NodeId& n : out.nodes) {
    const Term* t = g1.label(n);
    if (!t) t = g2.label(n);
    if (t) out.labels.emplace(n, (*sigma)(*t));
  }
  return MergeResult{std::move(out), std::move(*sigma)};
}

const CRelation& CRelation::plain() {
  static const CRelation instance{
      "plain",
      NodePreorder::sort_equality(),
      [](const Graph&) { return true; },
      [](const Graph& sub, const Graph& host) { return is_subgraph(sub, host); },
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
        auto merged = e_merge(h1, h2, connecting);
        if (!merged) return std::nullopt;
        return merged->graph;
      },
      MergeRootOrder::FirstThenSecond};
  return instance;
}

RewriteRule RewriteRule::make(std::string name, Graph lhs, Graph rhs,
                              const NodePreorder& preorder) {
  if (!root_similar(lhs, rhs, preorder))
    throw PreconditionError("rewrite rule sides are not root-similar: " + name);
  return RewriteRule{std::move(name), std::move(lhs), std::move(rhs)};
}

namespace {

// Backtracking enumeration of subgraph embeddings; see enumerate_embeddings.
struct EmbeddingSearch {
  const Graph& pattern;
  const Graph& host;
  EmbedMode mode;
  const NodePreorder& preorder;
  std::size_t max_results;

  std::vector<NodeId> order;
  std::map<NodeId, NodeId> assignment;
  std::set<NodeId> used;
  Substitution sigma;
  std::vector<Embedding> results;

  bool label_ok(const NodeId& pn, const NodeId& hn, Substitution& sig) const {
    const Term* pl = pattern.label(pn);
    if (!pl) return true;  // pattern roots carry no constraint
    const Term* hl = host.label(hn);
    if (!hl) return false;
    if (mode == EmbedMode::Match) return match_term(sig(*pl), *hl, sig);
    auto mgu = unify({{sig(*pl), sig(*hl)}});
    if (!mgu) return false;
    sig = mgu->compose(sig);
    return true;
  }

  bool edges_ok(const NodeId& pn, const NodeId& hn) const {
    for (const auto& [pb, hb] : assignment) {
      if (pattern.has_edge(pn, pb) != host.has_edge(hn, hb)) return false;
      if (pattern.has_edge(pb, pn) != host.has_edge(hb, hn)) return false;
    }
    return pattern.has_edge(pn, pn) == host.has_edge(hn, hn);
  }

  bool admissible(const NodeId& pn, const NodeId& hn) const {
    if (used.count(hn)) return false;
    if (pn.sort != hn.sort || !preorder.equivalent(pn, hn)) return false;
    // Host roots may only be met by pattern roots (condition 5); inner
    // pattern nodes must have every incident host edge inside the image
    // (condition 4), so their degrees must agree exactly.
    bool proot = pattern.is_root(pn);
    if (host.is_root(hn) && !proot) return false;
    std::size_t pin = pattern.in_degree(pn), pout = pattern.out_degree(pn);
    std::size_t hin = host.in_degree(hn), hout = host.out_degree(hn);
    if (proot) return hin >= pin && hout >= pout;
    return hin == pin && hout == pout;
  }

  bool assign(std::size_t index) {
    if (index == order.size()) {
      results.push_back(Embedding{NodeRenaming::make(assignment), sigma});
      return results.size() >= max_results;
    }
    const NodeId pn = order[index];
    for (const NodeId& hn : host.nodes) {
      if (!admissible(pn, hn) || !edges_ok(pn, hn)) continue;
      Substitution saved = sigma;
      if (!label_ok(pn, hn, sigma)) {
        sigma = saved;
        continue;
      }
      assignment.emplace(pn, hn);
      used.insert(hn);
      if (assign(index + 1)) return true;
      assignment.erase(pn);
      used.erase(hn);
      sigma = saved;
    }
    return false;
  }

  void run() {
    if (pattern.nodes.size() > host.nodes.size()) return;
    // Most-constrained-first: fewer admissible host nodes means earlier
    // failure; roots go last since they carry no label constraint.
    std::vector<std::pair<std::size_t, NodeId>> ranked;
    for (const NodeId& n : pattern.nodes) {
      std::size_t candidates = 0;
      for (const NodeId& hn : host.nodes)
        if (admissible(n, hn)) ++candidates;
      if (candidates == 0) return;
      ranked.push_back({candidates + (pattern.is_root(n) ? host.nodes.size() : 0), n});
    }
    std::sort(ranked.begin(), ranked.end());
    for (const auto& [rank, n] : ranked) order.push_back(n);
    assign(0);
  }
};

}  // namespace

std::vector<Embedding> enumerate_embeddings(const Graph& pattern, const Graph& host,
                                            EmbedMode mode, const NodePreorder& preorder,
                                            std::size_t max_results) {
  EmbeddingSearch search{pattern, host, mode, preorder, max_results};
  search.run();
  return std::move(search.results);
}

std::vector<MatchResult> match_rule(const RewriteRule& rule, const Graph& g, const CRelation& c) {
  if (!c.in_class(g)) throw PreconditionError("match_rule: host is not in the relation's class");

  std::vector<MatchResult> out;
  for (const Embedding& emb : enumerate_embeddings(rule.lhs, g, EmbedMode::Match, c.preorder)) {
    Graph image = apply_label_subst(emb.subst, apply_renaming(emb.renaming, rule.lhs));
    if (!c.sub(image, g)) continue;

    // Nodes appearing only on the right-hand side go to fresh ids off the
    // host, which keeps the substitutability condition automatic.
    NodeRenaming full = emb.renaming;
    std::uint32_t next = std::max({g.max_node_id(), rule.lhs.max_node_id(),
                                   rule.rhs.max_node_id()}) +
                         1;
    for (const NodeId& n : rule.rhs.nodes)
      if (!full.defined_on(n)) full.extend(n, NodeId{next++, n.sort});

    Graph rhs_image = apply_label_subst(emb.subst, apply_renaming(full, rule.rhs));
    if (!is_substitutable(rhs_image, image, g, c.preorder)) continue;
    out.push_back(MatchResult{std::move(full), emb.subst, std::move(image)});
  }
  return out;
}

std::vector<RewriteSuccessor> rewrite_step(const Graph& g, const RuleSet& rules,
                                           const CRelation& c) {
  std::vector<RewriteSuccessor> out;
  std::vector<const RewriteRule*> ordered;
  for (const RewriteRule& r : rules) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const RewriteRule* a, const RewriteRule* b) { return a->name < b->name; });
  for (const RewriteRule* rule : ordered) {
    for (MatchResult& m : match_rule(*rule, g, c)) {
      Graph rhs_image = apply_label_subst(m.label_subst, apply_renaming(m.renaming, rule->rhs));
      Graph succ = replace_subgraph(g, m.image, rhs_image);
      out.push_back(RewriteSuccessor{std::move(succ), rule->name, std::move(m)});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const RewriteSuccessor& a, const RewriteSuccessor& b) {
    if (a.rule != b.rule) return a.rule < b.rule;
    if (a.match.image.nodes != b.match.image.nodes)
      return a.match.image.nodes < b.match.image.nodes;
    return a.graph.to_string() < b.graph.to_string();
  });
  return out;
}

NormalizeResult normalize(const Graph& g, const RuleSet& rules, const CRelation& c,
                          std::size_t fuel) {
  Graph current = g;
  std::size_t steps = 0;
  while (true) {
    auto successors = rewrite_step(current, rules, c);
    if (successors.empty())
      return NormalizeResult{NormalizeResult::Status::NormalForm, std::move(current), steps};
    if (steps >= fuel)
      return NormalizeResult{NormalizeResult::Status::FuelExhausted, std::move(current), steps};
    current = std::move(successors.front().graph);
    ++steps;
  }
}

namespace {

// Renames a rule so both sides use nodes and variables disjoint from
// everything in `reserved_nodes` / `reserved_vars`.
RewriteRule rename_rule_apart(const RewriteRule& rule, std::vector<NodeId>& reserved_nodes,
                              std::set<std::string>& reserved_vars) {
  std::vector<NodeId> own = rule.lhs.nodes;
  own.insert(own.end(), rule.rhs.nodes.begin(), rule.rhs.nodes.end());
  std::sort(own.begin(), own.end());
  own.erase(std::unique(own.begin(), own.end()), own.end());
  NodeRenaming nu = fresh_node_renaming(own, reserved_nodes);

  std::set<std::string> vars = rule.lhs.variables();
  auto rhs_vars = rule.rhs.variables();
  vars.insert(rhs_vars.begin(), rhs_vars.end());
  Substitution rho = fresh_variable_renaming(vars, reserved_vars);

  Graph lhs = apply_label_subst(rho, apply_renaming(nu, rule.lhs));
  Graph rhs = apply_label_subst(rho, apply_renaming(nu, rule.rhs));
  for (const NodeId& n : lhs.nodes) reserved_nodes.push_back(n);
  for (const NodeId& n : rhs.nodes) reserved_nodes.push_back(n);
  for (const std::string& v : vars) reserved_vars.insert(rho.lookup(v) ? rho.lookup(v)->head() : v);
  return RewriteRule{rule.name, std::move(lhs), std::move(rhs)};
}

}  // namespace


// Connecting-edge subsets in increasing size, capped; the empty set comes
// first so every overlap is tried bare before decorated variants.
std::vector<std::vector<Edge>> connecting_subsets(const std::vector<Edge>& candidates,
                                                  std::size_t cap) {
  std::vector<std::vector<Edge>> out{{}};
  for (std::size_t size = 1; size <= candidates.size() && out.size() < cap; ++size) {
    std::vector<bool> take(candidates.size(), false);
    std::fill(take.end() - static_cast<std::ptrdiff_t>(size), take.end(), true);
    do {
      std::vector<Edge> subset;
      for (std::size_t i = 0; i < candidates.size(); ++i)
        if (take[i]) subset.push_back(candidates[i]);
      out.push_back(std::move(subset));
    } while (out.size() < cap && std::next_permutation(take.begin(), take.end()));
  }
  return out;
}

void enumerate_overlaps(const Graph& g, const Graph& h, const NodePreorder& preorder,
                        const std::function<bool(const std::map<NodeId, NodeId>&)>& emit) {
  std::map<NodeId, NodeId> current;
  std::set<NodeId> used;
  bool stopped = false;

  // An identified pair only ever survives the merge conditions when shared
  // labels unify and edges agree on the overlap, so prune on both.
  auto admissible = [&](const NodeId& x, const NodeId& y) {
    if (x.sort != y.sort || !preorder.equivalent(x, y)) return false;
    const Term* lx = h.label(x);
    const Term* ly = g.label(y);
    if (lx && ly && !unify({{*lx, *ly}})) return false;
    for (const auto& [xb, yb] : current) {
      if (h.has_edge(x, xb) != g.has_edge(y, yb)) return false;
      if (h.has_edge(xb, x) != g.has_edge(yb, y)) return false;
    }
    return h.has_edge(x, x) == g.has_edge(y, y);
  };

  // Frontier conditions on the finished identification: an identified node
  // with an edge into the unidentified part of one graph must be a root of
  // the other, or neither side embeds into the merge.
  auto frontier_ok = [&]() {
    for (const auto& [x, y] : current) {
      if (!g.is_root(y)) {
        for (const Edge& e : h.edges) {
          if (e.first == x && !current.count(e.second)) return false;
          if (e.second == x && !current.count(e.first)) return false;
        }
      }
      if (!h.is_root(x)) {
        for (const Edge& e : g.edges) {
          if ((e.first == y && !used.count(e.second)) ||
              (e.second == y && !used.count(e.first)))
            return false;
        }
      }
    }
    return true;
  };

  std::function<void(std::size_t)> step = [&](std::size_t index) {
    if (stopped) return;
    if (index == h.nodes.size()) {
      if (frontier_ok() && !emit(current)) stopped = true;
      return;
    }
    const NodeId x = h.nodes[index];
    for (const NodeId& y : g.nodes) {
      if (stopped) return;
      if (used.count(y) || !admissible(x, y)) continue;
      current.emplace(x, y);
      used.insert(y);
      step(index + 1);
      current.erase(x);
      used.erase(y);
    }
    if (!stopped) step(index + 1);  // leave x unidentified
  };
  step(0);
}

CriticalPairsResult critical_pairs(const RuleSet& rules, const CRelation& c,
                                   std::size_t merge_budget) {
  CriticalPairsResult result;
  std::vector<NodeId> reserved_nodes;
  std::set<std::string> reserved_vars;
  std::vector<RewriteRule> prepared;
  for (const RewriteRule& r : rules)
    prepared.push_back(rename_rule_apart(r, reserved_nodes, reserved_vars));

  auto consider = [&](const RewriteRule& a, const RewriteRule& b) {
    enumerate_overlaps(
        a.lhs, b.lhs, c.preorder, [&](const std::map<NodeId, NodeId>& phi) -> bool {
          if (result.truncated) return false;
          std::map<NodeId, NodeId> mapping = phi;
          for (const NodeId& n : b.lhs.nodes)
            if (!mapping.count(n)) mapping.emplace(n, n);
          for (const NodeId& n : b.rhs.nodes)
            if (!mapping.count(n)) mapping.emplace(n, n);
          NodeRenaming rho = NodeRenaming::make(mapping, c.preorder);
          Graph lhs2 = apply_renaming(rho, b.lhs);
          Graph rhs2 = apply_renaming(rho, b.rhs);

          // Connecting-edge candidates between mutually external roots.
          std::vector<Edge> candidates;
          for (const NodeId& x : a.lhs.roots) {
            if (lhs2.has_node(x)) continue;
            for (const NodeId& y : lhs2.roots) {
              if (a.lhs.has_node(y)) continue;
              candidates.push_back({x, y});
              candidates.push_back({y, x});
            }
          }
          std::sort(candidates.begin(), candidates.end());

          const std::size_t full = candidates.size() >= 10
                                       ? SIZE_MAX
                                       : (std::size_t{1} << candidates.size());
          std::vector<std::vector<Edge>> subsets = connecting_subsets(candidates, 64);
          if (subsets.size() < full) result.truncated = true;
          for (const std::vector<Edge>& connecting : subsets) {
            if (++result.enumerated > merge_budget) {
              result.truncated = true;
              return false;
            }
            auto merged = e_merge(a.lhs, lhs2, connecting, c.merge_root_order);
            if (!merged) return true;  // label clash is independent of the edge set
            const Graph& overlap = merged->graph;
            const Substitution& sigma = merged->mgu;

            Graph img1 = apply_label_subst(sigma, a.lhs);
            Graph img2 = apply_label_subst(sigma, lhs2);
            if (!c.sub(img1, overlap) || !c.sub(img2, overlap)) continue;
            Graph out1 = apply_label_subst(sigma, a.rhs);
            Graph out2 = apply_label_subst(sigma, rhs2);
            if (!is_substitutable(out1, img1, overlap, c.preorder) ||
                !is_substitutable(out2, img2, overlap, c.preorder))
              continue;
            CriticalPair pair{replace_subgraph(overlap, img1, out1),
                              replace_subgraph(overlap, img2, out2),
                              overlap,
                              a.name,
                              b.name,
                              phi.empty()};
            bool duplicate = std::any_of(
                result.pairs.begin(), result.pairs.end(), [&](const CriticalPair& p) {
                  return p.left == pair.left && p.right == pair.right && p.overlap == pair.overlap;
                });
            if (!duplicate) result.pairs.push_back(std::move(pair));
          }
          return true;
        });
  };

  for (std::size_t i = 0; i < prepared.size() && !result.truncated; ++i) {
    for (std::size_t j = i; j < prepared.size() && !result.truncated; ++j) {
      if (i == j) {
        RewriteRule copy = rename_rule_apart(prepared[i], reserved_nodes, reserved_vars);
        consider(prepared[i], copy);
      } else {
        consider(prepared[i], prepared[j]);
      }
    }
  }
  return result;
}

namespace {

constexpr std::size_t kJoinFrontierCap = 512;

struct ReachableSet {
  std::vector<Graph> graphs;
  bool closed = false;

  bool contains(const Graph& g) const {
    return std::any_of(graphs.begin(), graphs.end(),
                       [&](const Graph& h) { return isomorphic(g, h); });
  }
};

ReachableSet explore(const Graph& start, const RuleSet& rules, const CRelation& c,
                     std::size_t fuel) {
  ReachableSet set;
  set.graphs.push_back(start);
  std::vector<Graph> frontier{start};
  for (std::size_t depth = 0; depth < fuel && !frontier.empty(); ++depth) {
    std::vector<Graph> next;
    for (const Graph& g : frontier) {
      for (RewriteSuccessor& succ : rewrite_step(g, rules, c)) {
        if (set.contains(succ.graph)) continue;
        set.graphs.push_back(succ.graph);
        next.push_back(std::move(succ.graph));
        if (set.graphs.size() > kJoinFrontierCap) return set;  // not closed
      }
    }
    frontier = std::move(next);
  }
  set.closed = frontier.empty();
  return set;
}

}  // namespace

JoinResult is_joinable(const CriticalPair& p, const RuleSet& rules, const CRelation& c,
                       std::size_t fuel) {
  JoinResult result;
  ReachableSet left = explore(p.left, rules, c, fuel);
  ReachableSet right = explore(p.right, rules, c, fuel);
  result.explored = left.graphs.size() + right.graphs.size();
  result.exhaustive = left.closed && right.closed;
  for (const Graph& g : left.graphs) {
    if (right.contains(g)) {
      result.status = JoinResult::Status::Joinable;
      result.witness = g;
      return result;
    }
  }
  result.status = JoinResult::Status::Unknown;
  return result;
}

ConfluenceResult check_local_confluence(const RuleSet& rules, const CRelation& c, std::size_t fuel,
                                        std::size_t merge_budget) {
  ConfluenceResult out;
  CriticalPairsResult cps = critical_pairs(rules, c, merge_budget);
  out.pair_count = cps.pairs.size();
  out.pairs_truncated = cps.truncated;
  for (const CriticalPair& p : cps.pairs) {
    if (p.trivial) continue;  // always joinable
    JoinResult join = is_joinable(p, rules, c, fuel);
    if (join.status == JoinResult::Status::Joinable) continue;
    if (join.exhaustive) {
      out.verdict = ConfluenceResult::Verdict::CounterexampleCandidate;
      out.counterexample = p;
      return out;
    }
    out.unknown.push_back(p);
  }
  out.verdict = (!out.unknown.empty() || cps.truncated)
                    ? ConfluenceResult::Verdict::Inconclusive
                    : ConfluenceResult::Verdict::LocallyConfluent;
  return out;
}

}  // namespace gsp
