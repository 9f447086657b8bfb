#include "gsp/graph.hpp"

#include <algorithm>
#include <sstream>

#include "gsp/errors.hpp"

namespace gsp {

std::string Sort::to_string() const {
  switch (kind) {
    case Kind::Into: return "into";
    case Kind::From: return "from";
    case Kind::Gate: {
      std::ostringstream out;
      out << "gate(" << entries << "," << outputs << ")";
      return out.str();
    }
    case Kind::Custom: return name;
  }
  return name;
}

std::string NodeId::to_string() const {
  return "n" + std::to_string(id) + ":" + sort.to_string();
}

const NodePreorder& NodePreorder::sort_equality() {
  static const NodePreorder instance{
      [](const NodeId& a, const NodeId& b) { return a.sort == b.sort; }};
  return instance;
}

bool Graph::has_node(const NodeId& n) const {
  return std::binary_search(nodes.begin(), nodes.end(), n);
}

bool Graph::has_edge(const NodeId& a, const NodeId& b) const {
  return std::binary_search(edges.begin(), edges.end(), Edge{a, b});
}

bool Graph::is_root(const NodeId& n) const {
  return std::find(roots.begin(), roots.end(), n) != roots.end();
}

std::vector<NodeId> Graph::inner_nodes() const {
  std::vector<NodeId> out;
  for (const NodeId& n : nodes)
    if (!is_root(n)) out.push_back(n);
  return out;
}

const Term* Graph::label(const NodeId& n) const {
  auto it = labels.find(n);
  return it == labels.end() ? nullptr : &it->second;
}

std::size_t Graph::in_degree(const NodeId& n) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [&](const Edge& e) { return e.second == n; }));
}

std::size_t Graph::out_degree(const NodeId& n) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [&](const Edge& e) { return e.first == n; }));
}

std::set<std::string> Graph::variables() const {
  std::set<std::string> out;
  for (const auto& [n, t] : labels) t.collect_variables(out);
  return out;
}

bool Graph::is_ground() const {
  return std::all_of(labels.begin(), labels.end(),
                     [](const auto& kv) { return kv.second.is_ground(); });
}

std::uint32_t Graph::max_node_id() const {
  std::uint32_t m = 0;
  for (const NodeId& n : nodes) m = std::max(m, n.id);
  return m;
}

void Graph::normalize() {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

Graph Graph::make(std::vector<NodeId> nodes, std::vector<NodeId> roots,
                  std::vector<Edge> edges, std::map<NodeId, Term> labels) {
  Graph g{std::move(nodes), std::move(roots), std::move(edges), std::move(labels)};
  g.normalize();
  return g;
}

std::string Graph::to_string() const {
  std::ostringstream out;
  out << "{nodes:";
  for (const NodeId& n : nodes) {
    out << ' ' << n.to_string();
    if (const Term* t = label(n)) out << '=' << t->to_string();
  }
  out << "; roots:";
  for (const NodeId& n : roots) out << " n" << n.id;
  out << "; edges:";
  for (const Edge& e : edges) out << " n" << e.first.id << "->n" << e.second.id;
  out << '}';
  return out.str();
}

NodeRenaming NodeRenaming::make(std::map<NodeId, NodeId> mapping, const NodePreorder& preorder) {
  std::set<NodeId> images;
  for (const auto& [from, to] : mapping) {
    if (from.sort != to.sort)
      throw DomainError("node renaming does not preserve sorts: " + from.to_string() + " -> " +
                        to.to_string());
    if (!preorder.equivalent(from, to))
      throw DomainError("node renaming does not preserve the node preorder equivalence");
    if (!images.insert(to).second)
      throw DomainError("node renaming is not injective at " + to.to_string());
  }
  NodeRenaming r;
  r.map_ = std::move(mapping);
  return r;
}

NodeRenaming NodeRenaming::identity(const std::vector<NodeId>& nodes) {
  NodeRenaming r;
  for (const NodeId& n : nodes) r.map_.emplace(n, n);
  return r;
}

NodeId NodeRenaming::operator()(const NodeId& n) const {
  auto it = map_.find(n);
  if (it == map_.end()) throw DomainError("node renaming undefined on " + n.to_string());
  return it->second;
}

std::optional<NodeId> NodeRenaming::preimage(const NodeId& n) const {
  for (const auto& [from, to] : map_)
    if (to == n) return from;
  return std::nullopt;
}

NodeRenaming NodeRenaming::inverse() const {
  NodeRenaming r;
  for (const auto& [from, to] : map_) r.map_.emplace(to, from);
  return r;
}

NodeRenaming NodeRenaming::compose(const NodeRenaming& inner) const {
  NodeRenaming r;
  for (const auto& [from, mid] : inner.map_) {
    auto it = map_.find(mid);
    if (it != map_.end()) r.map_.emplace(from, it->second);
  }
  return r;
}

void NodeRenaming::extend(const NodeId& from, const NodeId& to) {
  if (from.sort != to.sort) throw DomainError("extension does not preserve sorts");
  auto it = map_.find(from);
  if (it != map_.end()) {
    if (it->second != to) throw DomainError("conflicting renaming extension");
    return;
  }
  for (const auto& [f, t] : map_)
    if (t == to) throw DomainError("extension breaks injectivity");
  map_.emplace(from, to);
}

std::string NodeRenaming::to_string() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [from, to] : map_) {
    if (!first) out << ", ";
    first = false;
    out << 'n' << from.id << " -> n" << to.id;
  }
  out << '}';
  return out.str();
}

std::vector<std::string> validate_graph(const Graph& g) {
  std::vector<std::string> out;
  std::set<NodeId> node_set(g.nodes.begin(), g.nodes.end());
  std::set<NodeId> seen_roots;
  for (const NodeId& r : g.roots) {
    if (!node_set.count(r)) out.push_back("root n" + std::to_string(r.id) + " is not a node");
    if (!seen_roots.insert(r).second)
      out.push_back("root sequence repeats n" + std::to_string(r.id));
  }
  for (const Edge& e : g.edges) {
    if (!node_set.count(e.first) || !node_set.count(e.second))
      out.push_back("edge n" + std::to_string(e.first.id) + "->n" + std::to_string(e.second.id) +
                    " has an endpoint outside the node set");
  }
  for (const NodeId& n : g.nodes) {
    bool root = seen_roots.count(n) != 0;
    bool labeled = g.labels.count(n) != 0;
    if (root && labeled) out.push_back("root n" + std::to_string(n.id) + " carries a label");
    if (!root && !labeled) out.push_back("inner node n" + std::to_string(n.id) + " is unlabeled");
  }
  for (const auto& [n, t] : g.labels)
    if (!node_set.count(n))
      out.push_back("label on n" + std::to_string(n.id) + " which is not a node");
  return out;
}

Graph apply_renaming(const NodeRenaming& m, const Graph& g) {
  Graph out;
  out.nodes.reserve(g.nodes.size());
  for (const NodeId& n : g.nodes) out.nodes.push_back(m(n));
  for (const NodeId& n : g.roots) out.roots.push_back(m(n));
  out.edges.reserve(g.edges.size());
  for (const Edge& e : g.edges) out.edges.push_back({m(e.first), m(e.second)});
  for (const auto& [n, t] : g.labels) out.labels.emplace(m(n), t);
  out.normalize();
  return out;
}

Graph apply_label_subst(const Substitution& s, const Graph& g) {
  Graph out = g;
  for (auto& [n, t] : out.labels) t = s(t);
  return out;
}

bool root_similar(const Graph& g, const Graph& h, const NodePreorder& preorder) {
  if (g.roots.size() != h.roots.size()) return false;
  for (std::size_t i = 0; i < g.roots.size(); ++i) {
    if (g.roots[i].sort != h.roots[i].sort) return false;
    if (!preorder.equivalent(g.roots[i], h.roots[i])) return false;
  }
  return true;
}

namespace {

enum class LabelPolicy { Equal, Unify, Match };

// Backtracking search for bijections mu : N(h) -> N(g) with mu(h) == g up to
// the label policy: Equal demands identical labels, Unify collects label
// pairs into a unifier, Match instantiates only h's variables.
struct BijectionSearch {
  const Graph& g;
  const Graph& h;
  LabelPolicy policy;
  bool stop_at_first = true;

  std::vector<NodeId> order;             // h nodes in assignment order
  std::map<NodeId, NodeId> assignment;   // h node -> g node
  std::set<NodeId> used;                 // g nodes already taken
  Substitution sigma;
  std::vector<GraphUnifier> results;

  bool labels_admit(const NodeId& hn, const NodeId& gn, Substitution& sig) const {
    const Term* lh = h.label(hn);
    const Term* lg = g.label(gn);
    if ((lh == nullptr) != (lg == nullptr)) return false;
    if (!lh) return true;
    switch (policy) {
      case LabelPolicy::Equal:
        return *lh == *lg;
      case LabelPolicy::Match:
        return match_term(sig(*lh), *lg, sig);
      case LabelPolicy::Unify: {
        auto mgu = unify({{sig(*lh), sig(*lg)}});
        if (!mgu) return false;
        sig = mgu->compose(sig);
        return true;
      }
    }
    return false;
  }

  bool edges_consistent(const NodeId& hn, const NodeId& gn) const {
    for (const auto& [hb, gb] : assignment) {
      if (h.has_edge(hn, hb) != g.has_edge(gn, gb)) return false;
      if (h.has_edge(hb, hn) != g.has_edge(gb, gn)) return false;
    }
    return h.has_edge(hn, hn) == g.has_edge(gn, gn);
  }

  bool assign(std::size_t index) {
    if (index == order.size()) {
      GraphUnifier out;
      out.renaming = NodeRenaming::make(assignment);
      out.subst = sigma;
      results.push_back(std::move(out));
      return stop_at_first;
    }
    const NodeId hn = order[index];
    for (const NodeId& gn : g.nodes) {
      if (used.count(gn) || gn.sort != hn.sort) continue;
      if (g.is_root(gn) != h.is_root(hn)) continue;
      if (g.in_degree(gn) != h.in_degree(hn) || g.out_degree(gn) != h.out_degree(hn)) continue;
      if (!edges_consistent(hn, gn)) continue;
      Substitution saved = sigma;
      if (!labels_admit(hn, gn, sigma)) {
        sigma = saved;
        continue;
      }
      assignment.emplace(hn, gn);
      used.insert(gn);
      if (assign(index + 1)) return true;
      assignment.erase(hn);
      used.erase(gn);
      sigma = saved;
    }
    return false;
  }

  bool run() {
    if (g.nodes.size() != h.nodes.size() || g.edges.size() != h.edges.size() ||
        g.roots.size() != h.roots.size())
      return false;
    // Root images are forced by position.
    for (std::size_t i = 0; i < h.roots.size(); ++i) {
      const NodeId hn = h.roots[i];
      const NodeId gn = g.roots[i];
      if (hn.sort != gn.sort) return false;
      if (!edges_consistent(hn, gn)) return false;
      assignment.emplace(hn, gn);
      used.insert(gn);
    }
    for (const NodeId& n : h.nodes)
      if (!h.is_root(n)) order.push_back(n);
    return assign(0) || !results.empty();
  }
};

}  // namespace

std::optional<NodeRenaming> find_isomorphism(const Graph& g, const Graph& h) {
  BijectionSearch search{g, h, LabelPolicy::Equal};
  if (!search.run()) return std::nullopt;
  return search.results.front().renaming;
}

bool isomorphic(const Graph& g, const Graph& h) { return find_isomorphism(g, h).has_value(); }

std::optional<GraphUnifier> unify_graphs(const Graph& g, const Graph& h) {
  BijectionSearch search{g, h, LabelPolicy::Unify};
  if (!search.run()) return std::nullopt;
  return search.results.front();
}

std::optional<GraphUnifier> match_graph(const Graph& h, const Graph& g, const Substitution& seed) {
  BijectionSearch search{g, h, LabelPolicy::Match};
  search.sigma = seed;
  if (!search.run()) return std::nullopt;
  return search.results.front();
}

std::vector<GraphUnifier> match_graph_all(const Graph& h, const Graph& g,
                                          const Substitution& seed) {
  BijectionSearch search{g, h, LabelPolicy::Match};
  search.sigma = seed;
  search.stop_at_first = false;
  search.run();
  return search.results;
}

NodeRenaming fresh_node_renaming(const std::vector<NodeId>& ids,
                                 const std::vector<NodeId>& reserved) {
  std::set<std::uint32_t> reserved_ids;
  for (const NodeId& n : reserved) reserved_ids.insert(n.id);
  std::uint32_t next = 0;
  for (const NodeId& n : ids) next = std::max(next, n.id + 1);
  for (const NodeId& n : reserved) next = std::max(next, n.id + 1);
  std::map<NodeId, NodeId> mapping;
  for (const NodeId& n : ids) {
    if (reserved_ids.count(n.id))
      mapping.emplace(n, NodeId{next++, n.sort});
    else
      mapping.emplace(n, n);
  }
  return NodeRenaming::make(mapping);
}

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  a ^= b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2);
  return a;
}

std::uint64_t hash_string(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t sort_hash(const Sort& s) {
  return mix(mix(static_cast<std::uint64_t>(s.kind), (std::uint64_t(s.entries) << 32) | s.outputs),
             hash_string(s.name));
}

// Term fingerprint with variables abstracted, so alpha-variants collide.
std::uint64_t shape_hash(const Term& t) {
  if (t.is_variable()) return 0x5bd1e995;
  std::uint64_t h = mix(hash_string(t.head()), t.args().size());
  for (const Term& a : t.args()) h = mix(h, shape_hash(a));
  return h;
}

}  // namespace

std::uint64_t iso_invariant_key(const Graph& g) {
  std::map<NodeId, std::uint64_t> color;
  for (const NodeId& n : g.nodes) {
    std::uint64_t c = sort_hash(n.sort);
    const Term* t = g.label(n);
    c = mix(c, t ? shape_hash(*t) : 0);
    c = mix(c, g.is_root(n) ? 2 : 1);
    color[n] = c;
  }
  for (int round = 0; round < 2; ++round) {
    std::map<NodeId, std::uint64_t> next = color;
    for (const Edge& e : g.edges) {
      next[e.first] = mix(next[e.first], mix(1, color[e.second]));
      next[e.second] = mix(next[e.second], mix(2, color[e.first]));
    }
    color = std::move(next);
  }
  std::vector<std::uint64_t> palette;
  palette.reserve(g.nodes.size());
  for (const auto& [n, c] : color) palette.push_back(c);
  std::sort(palette.begin(), palette.end());
  std::uint64_t key = mix(g.nodes.size(), g.edges.size());
  for (std::uint64_t c : palette) key = mix(key, c);
  for (const NodeId& r : g.roots) key = mix(key, color[r]);
  return key;
}

}  // namespace gsp
