#include "gsp/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "gsp/errors.hpp"

namespace gsp {

namespace {

constexpr double kHardCandidateCap = 500000.0;

double count_subsets_upto(std::size_t universe, std::size_t cap) {
  double total = 0.0, binom = 1.0;
  for (std::size_t k = 0; k <= std::min(universe, cap); ++k) {
    total += binom;
    binom = binom * double(universe - k) / double(k + 1);
  }
  return total;
}

double count_root_sequences(std::size_t n, std::size_t cap) {
  double total = 0.0, perms = 1.0;
  for (std::size_t k = 0; k <= std::min(n, cap); ++k) {
    total += perms;
    perms *= double(n - k);
  }
  return total;
}

double estimate_candidates(const UniverseBounds& b) {
  double total = 0.0;
  for (std::size_t n = 0; n <= b.max_nodes; ++n) {
    double sort_assignments = 1.0;  // combinations with repetition
    for (std::size_t i = 1; i <= n; ++i)
      sort_assignments *= double(b.sorts.size() + i - 1) / double(i);
    double edges = count_subsets_upto(n * n, b.max_edges);
    double roots = count_root_sequences(n, b.max_roots);
    double labelings = 1.0;
    for (std::size_t i = 0; i < n; ++i) labelings *= double(std::max<std::size_t>(b.labels.size(), 1));
    total += sort_assignments * edges * roots * labelings;
  }
  return total;
}

void for_each_subset(std::size_t universe, std::size_t max_size,
                     const std::function<void(const std::vector<std::size_t>&)>& emit) {
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> step = [&](std::size_t next) {
    emit(chosen);
    if (chosen.size() == max_size) return;
    for (std::size_t i = next; i < universe; ++i) {
      chosen.push_back(i);
      step(i + 1);
      chosen.pop_back();
    }
  };
  step(0);
}

void for_each_root_sequence(const std::vector<NodeId>& nodes, std::size_t max_roots,
                            const std::function<void(const std::vector<NodeId>&)>& emit) {
  std::vector<NodeId> seq;
  std::vector<bool> used(nodes.size(), false);
  std::function<void()> step = [&]() {
    emit(seq);
    if (seq.size() == max_roots) return;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      seq.push_back(nodes[i]);
      step();
      seq.pop_back();
      used[i] = false;
    }
  };
  step();
}

}  // namespace

std::optional<std::size_t> GroundUniverse::find(const Graph& g) const {
  const std::uint64_t key = iso_invariant_key(g);
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (keys[i] != key) continue;
    if (isomorphic(graphs[i], g)) return i;
  }
  return std::nullopt;
}

GroundUniverse enumerate_universe(const UniverseBounds& bounds, const CRelation& c) {
  for (const Term& t : bounds.labels)
    if (!t.is_ground()) throw PreconditionError("universe label alphabet must be ground");
  if (estimate_candidates(bounds) > kHardCandidateCap)
    throw BoundsTooLarge("universe bounds exceed the enumeration cap");

  GroundUniverse u;
  u.bounds = bounds;
  std::multimap<std::uint64_t, std::size_t> index;

  auto consider = [&](const Graph& g) {
    if (!validate_graph(g).empty()) return;
    if (!c.in_class(g)) return;
    const std::uint64_t key = iso_invariant_key(g);
    auto [lo, hi] = index.equal_range(key);
    for (auto it = lo; it != hi; ++it)
      if (isomorphic(u.graphs[it->second], g)) return;
    index.emplace(key, u.graphs.size());
    u.graphs.push_back(g);
    u.keys.push_back(key);
  };

  for (std::size_t n = 0; n <= bounds.max_nodes; ++n) {
    // Non-decreasing sort index sequences avoid some renaming duplicates.
    std::vector<std::size_t> sort_of(n, 0);
    std::function<void(std::size_t, std::size_t)> assign_sorts = [&](std::size_t i,
                                                                     std::size_t min_sort) {
      if (i == n) {
        std::vector<NodeId> nodes;
        for (std::size_t k = 0; k < n; ++k)
          nodes.push_back(NodeId{static_cast<std::uint32_t>(k), bounds.sorts[sort_of[k]]});
        std::vector<Edge> pairs;
        for (const NodeId& a : nodes)
          for (const NodeId& b : nodes) pairs.push_back({a, b});

        for_each_subset(pairs.size(), bounds.max_edges, [&](const std::vector<std::size_t>& es) {
          std::vector<Edge> edges;
          for (std::size_t e : es) edges.push_back(pairs[e]);
          for_each_root_sequence(nodes, bounds.max_roots, [&](const std::vector<NodeId>& roots) {
            std::vector<NodeId> inner;
            for (const NodeId& node : nodes)
              if (std::find(roots.begin(), roots.end(), node) == roots.end())
                inner.push_back(node);
            if (!inner.empty() && bounds.labels.empty()) return;
            std::vector<std::size_t> pick(inner.size(), 0);
            std::function<void(std::size_t)> label_step = [&](std::size_t j) {
              if (j == inner.size()) {
                std::map<NodeId, Term> labels;
                for (std::size_t k = 0; k < inner.size(); ++k)
                  labels.emplace(inner[k], bounds.labels[pick[k]]);
                consider(Graph::make(nodes, roots, edges, std::move(labels)));
                return;
              }
              for (std::size_t v = 0; v < bounds.labels.size(); ++v) {
                pick[j] = v;
                label_step(j + 1);
              }
            };
            label_step(0);
          });
        });
        return;
      }
      for (std::size_t s = min_sort; s < bounds.sorts.size(); ++s) {
        sort_of[i] = s;
        assign_sorts(i + 1, s);
      }
    };
    if (bounds.sorts.empty()) {
      if (n == 0) consider(Graph{});
    } else {
      assign_sorts(0, 0);
    }
  }
  return u;
}

CongruenceApprox::CongruenceApprox(std::size_t size) : parent_(size) {
  for (std::size_t i = 0; i < size; ++i) parent_[i] = i;
}

std::size_t CongruenceApprox::find(std::size_t i) const {
  while (parent_[i] != i) {
    parent_[i] = parent_[parent_[i]];
    i = parent_[i];
  }
  return i;
}

bool CongruenceApprox::merge(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (a > b) std::swap(a, b);
  parent_[b] = a;
  return true;
}

std::size_t CongruenceApprox::class_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < parent_.size(); ++i)
    if (find(i) == i) ++count;
  return count;
}

namespace {

// All plain subgraphs of g: induced edges, roots covering the frontier and
// g's own roots, in every order.
void for_each_subgraph(const Graph& g, const std::function<void(const Graph&)>& emit) {
  const std::size_t n = g.nodes.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<NodeId> chosen;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) chosen.push_back(g.nodes[i]);
    auto in_chosen = [&](const NodeId& x) {
      return std::find(chosen.begin(), chosen.end(), x) != chosen.end();
    };
    std::vector<Edge> edges;
    for (const Edge& e : g.edges)
      if (in_chosen(e.first) && in_chosen(e.second)) edges.push_back(e);

    std::vector<NodeId> forced, optional;
    for (const NodeId& x : chosen) {
      bool must = g.is_root(x);
      for (const Edge& e : g.edges) {
        if (e.first == x && !in_chosen(e.second)) must = true;
        if (e.second == x && !in_chosen(e.first)) must = true;
      }
      (must ? forced : optional).push_back(x);
    }
    for (std::size_t omask = 0; omask < (std::size_t{1} << optional.size()); ++omask) {
      std::vector<NodeId> root_set = forced;
      for (std::size_t i = 0; i < optional.size(); ++i)
        if (omask & (std::size_t{1} << i)) root_set.push_back(optional[i]);
      std::sort(root_set.begin(), root_set.end());
      do {
        std::map<NodeId, Term> labels;
        bool ok = true;
        for (const NodeId& x : chosen) {
          if (std::find(root_set.begin(), root_set.end(), x) != root_set.end()) continue;
          const Term* t = g.label(x);
          if (!t) {
            ok = false;
            break;
          }
          labels.emplace(x, *t);
        }
        if (ok) emit(Graph::make(chosen, root_set, edges, std::move(labels)));
      } while (std::next_permutation(root_set.begin(), root_set.end()));
    }
  }
}

}  // namespace

CongruenceApprox congruence_closure_bounded(const std::vector<GraphLiteral>& equations,
                                            const GroundUniverse& u, const CRelation& c) {
  for (const GraphLiteral& l : equations)
    if (l.kind() != GraphLiteral::Kind::Eq)
      throw PreconditionError("congruence_closure_bounded expects equations");

  CongruenceApprox uf(u.graphs.size());
  std::multimap<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < u.graphs.size(); ++i) index.emplace(u.keys[i], i);
  auto locate = [&](const Graph& g) -> std::optional<std::size_t> {
    const std::uint64_t key = iso_invariant_key(g);
    auto [lo, hi] = index.equal_range(key);
    for (auto it = lo; it != hi; ++it)
      if (isomorphic(u.graphs[it->second], g)) return it->second;
    return std::nullopt;
  };

  // Ground instances of the equations over the universe's label alphabet.
  for (const GraphLiteral& eq : equations) {
    const std::set<std::string> var_set = eq.variables();
    std::vector<std::string> vars(var_set.begin(), var_set.end());
    std::vector<std::size_t> pick(vars.size(), 0);
    std::function<void(std::size_t)> instantiate = [&](std::size_t i) {
      if (i == vars.size()) {
        Substitution sigma;
        for (std::size_t k = 0; k < vars.size(); ++k)
          sigma.bind(vars[k], u.bounds.labels[pick[k]]);
        auto a = locate(apply_label_subst(sigma, eq.lhs()));
        auto b = locate(apply_label_subst(sigma, eq.rhs()));
        if (a && b) uf.merge(*a, *b);
        return;
      }
      for (std::size_t v = 0; v < u.bounds.labels.size(); ++v) {
        pick[i] = v;
        instantiate(i + 1);
      }
    };
    if (vars.empty() || !u.bounds.labels.empty()) instantiate(0);
  }

  // Context closure, merge-driven: each subgraph occurrence is paired with
  // the members of its class; a class union schedules exactly the newly
  // possible (occurrence, mate) pairs.
  struct Occurrence {
    std::size_t host;
    Graph sub;
    std::size_t sub_rep;
  };
  std::vector<Occurrence> occurrences;
  for (std::size_t gi = 0; gi < u.graphs.size(); ++gi) {
    const Graph& host = u.graphs[gi];
    for_each_subgraph(host, [&](const Graph& sub) {
      if (!c.sub(sub, host)) return;
      auto rep = locate(sub);
      if (!rep) return;
      occurrences.push_back(Occurrence{gi, sub, *rep});
    });
  }

  std::vector<std::vector<std::size_t>> members(u.graphs.size());
  std::vector<std::vector<std::size_t>> occs(u.graphs.size());
  for (std::size_t i = 0; i < u.graphs.size(); ++i) members[uf.find(i)].push_back(i);
  for (std::size_t k = 0; k < occurrences.size(); ++k)
    occs[uf.find(occurrences[k].sub_rep)].push_back(k);

  std::vector<std::pair<std::size_t, std::size_t>> pending;  // (occurrence, mate)
  auto schedule = [&](const std::vector<std::size_t>& occ_ids,
                      const std::vector<std::size_t>& mates) {
    for (std::size_t k : occ_ids)
      for (std::size_t m : mates)
        if (m != occurrences[k].sub_rep) pending.push_back({k, m});
  };

  // Initial classes come from the equation-instance merges above.
  for (std::size_t rep = 0; rep < u.graphs.size(); ++rep)
    if (!occs[rep].empty() && members[rep].size() > 1) schedule(occs[rep], members[rep]);

  auto unite = [&](std::size_t a, std::size_t b) {
    std::size_t ra = uf.find(a), rb = uf.find(b);
    if (ra == rb) return;
    uf.merge(ra, rb);
    std::size_t keep = uf.find(ra);
    std::size_t gone = keep == ra ? rb : ra;
    schedule(occs[keep], members[gone]);
    schedule(occs[gone], members[keep]);
    members[keep].insert(members[keep].end(), members[gone].begin(), members[gone].end());
    occs[keep].insert(occs[keep].end(), occs[gone].begin(), occs[gone].end());
    members[gone].clear();
    occs[gone].clear();
  };

  std::set<std::pair<std::size_t, std::size_t>> tried;
  while (!pending.empty()) {
    auto [k, mate_index] = pending.back();
    pending.pop_back();
    if (!tried.insert({k, mate_index}).second) continue;
    const Occurrence& occ = occurrences[k];
    if (!uf.same(occ.sub_rep, mate_index)) continue;  // stale pair
    const Graph& host = u.graphs[occ.host];
    const Graph& mate = u.graphs[mate_index];
    if (!root_similar(occ.sub, mate, c.preorder)) continue;
    if (host.node_count() - occ.sub.node_count() + mate.node_count() > u.bounds.max_nodes)
      continue;
    NodeRenaming nu = fresh_node_renaming(mate.nodes, host.nodes);
    Graph replacement = apply_renaming(nu, mate);
    if (!is_substitutable(replacement, occ.sub, host, c.preorder)) continue;
    if (auto image = locate(replace_subgraph(host, occ.sub, replacement)))
      unite(occ.host, *image);
  }
  return uf;
}

EntailVerdict entails_bounded(const std::vector<GraphLiteral>& equations, const GraphLiteral& l,
                              const GroundUniverse& u, const CRelation& c) {
  if (!l.is_ground()) throw PreconditionError("entails_bounded expects a ground literal");
  if (l.is_falsum()) return EntailVerdict::Unknown;
  auto a = u.find(l.lhs());
  auto b = u.find(l.rhs());
  if (!a || !b) throw OperandOutsideUniverse("literal operand not in the universe");
  if (l.kind() == GraphLiteral::Kind::Neq) return EntailVerdict::Unknown;
  CongruenceApprox uf = congruence_closure_bounded(equations, u, c);
  return uf.same(*a, *b) ? EntailVerdict::Yes : EntailVerdict::Unknown;
}

}  // namespace gsp
