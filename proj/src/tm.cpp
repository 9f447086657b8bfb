#include "gsp/tm.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gsp/errors.hpp"

namespace gsp {

namespace {

const Sort& cell_sort() {
  static const Sort s = Sort::custom("cell");
  return s;
}

// Markers must stay outside the machine's state and tape alphabets.
std::string fresh_marker(const std::string& base, const TuringMachine& m) {
  std::set<std::string> taken(m.states.begin(), m.states.end());
  taken.insert(m.alphabet.begin(), m.alphabet.end());
  std::string name = base;
  while (taken.count(name)) name += "_";
  return name;
}

struct ChainBuilder {
  Graph g;
  std::uint32_t next;

  explicit ChainBuilder(std::uint32_t first) : next(first) {}

  NodeId add_labeled(const std::string& symbol) {
    NodeId n{next++, cell_sort()};
    g.nodes.push_back(n);
    g.labels.emplace(n, Term::apply(symbol));
    return n;
  }

  NodeId add_root() {
    NodeId n{next++, cell_sort()};
    g.nodes.push_back(n);
    g.roots.push_back(n);
    return n;
  }

  void link(const NodeId& a, const NodeId& b) { g.edges.push_back({a, b}); }

  Graph finish() {
    g.normalize();
    return std::move(g);
  }
};

// A labeled chain with an optional root at either end and an optional
// isolated state node.
Graph chain_graph(const std::string& state, bool root_before,
                  const std::vector<std::string>& symbols, bool root_after,
                  std::uint32_t first_id) {
  ChainBuilder b(first_id);
  if (!state.empty()) b.add_labeled(state);
  std::vector<NodeId> chain;
  if (root_before) chain.push_back(b.add_root());
  for (const std::string& s : symbols) chain.push_back(b.add_labeled(s));
  if (root_after) chain.push_back(b.add_root());
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) b.link(chain[i], chain[i + 1]);
  return b.finish();
}

}  // namespace

Graph tm_config_graph(const TuringMachine& m, const std::string& state,
                      const std::vector<std::string>& before,
                      const std::vector<std::string>& after, std::uint32_t first_id) {
  if (before.empty() || after.empty())
    throw PreconditionError("configuration tape halves must be nonempty");
  std::vector<std::string> symbols;
  symbols.push_back(fresh_marker("s", m));
  symbols.insert(symbols.end(), before.begin(), before.end());
  symbols.push_back(fresh_marker("h", m));
  symbols.insert(symbols.end(), after.begin(), after.end());
  symbols.push_back(fresh_marker("e", m));
  return chain_graph(state, false, symbols, false, first_id);
}

TuringMachine parse_machine(const std::string& text) {
  TuringMachine m;
  m.blank.clear();
  m.initial.clear();
  m.final_state.clear();
  std::string body = text;
  std::replace(body.begin(), body.end(), ';', ' ');
  // Strip comments.
  std::string cleaned;
  bool in_comment = false;
  for (char c : body) {
    if (c == '#') in_comment = true;
    if (c == '\n') in_comment = false;
    cleaned += in_comment ? ' ' : c;
  }
  std::istringstream in(cleaned);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);

  std::size_t i = 0;
  auto need = [&](const std::string& what) {
    if (i >= tokens.size()) throw std::invalid_argument("machine file: expected " + what);
    return tokens[i++];
  };
  auto is_keyword = [](const std::string& t) {
    return t == "states" || t == "alphabet" || t == "blank" || t == "initial" || t == "final" ||
           t == "delta";
  };
  while (i < tokens.size()) {
    std::string head = tokens[i++];
    if (head == "states") {
      while (i < tokens.size() && !is_keyword(tokens[i])) m.states.push_back(tokens[i++]);
    } else if (head == "alphabet") {
      while (i < tokens.size() && !is_keyword(tokens[i])) m.alphabet.push_back(tokens[i++]);
    } else if (head == "blank") {
      m.blank = need("the blank symbol");
    } else if (head == "initial") {
      m.initial = need("the initial state");
    } else if (head == "final") {
      m.final_state = need("the final state");
    } else if (head == "delta") {
      TuringMachine::Transition t;
      t.state = need("a state");
      t.read = need("a symbol");
      if (need("->") != "->") throw std::invalid_argument("machine file: expected -> in delta");
      t.next = need("a state");
      t.write = need("a symbol");
      std::string dir = need("L or R");
      if (dir != "L" && dir != "R") throw std::invalid_argument("machine file: bad direction");
      t.move_right = dir == "R";
      m.transitions.push_back(std::move(t));
    } else {
      throw std::invalid_argument("machine file: unknown clause '" + head + "'");
    }
  }
  if (m.blank.empty()) throw std::invalid_argument("machine file: missing blank");
  if (m.initial.empty() || m.final_state.empty())
    throw std::invalid_argument("machine file: missing initial or final state");
  if (std::find(m.alphabet.begin(), m.alphabet.end(), m.blank) == m.alphabet.end())
    m.alphabet.push_back(m.blank);
  return m;
}

ProblemFile gen_tm(const TuringMachine& m) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& t : m.transitions)
    if (!seen.emplace(t.state, t.read).second)
      throw NondeterministicMachine("duplicate transition for (" + t.state + ", " + t.read + ")");
  if (m.initial == m.final_state)
    throw PreconditionError("the initial state must not be final");

  const std::string s = fresh_marker("s", m);
  const std::string h = fresh_marker("h", m);
  const std::string e = fresh_marker("e", m);

  ProblemFile p;
  p.sorts.push_back("cell");
  p.directives.crelation = "plain";

  std::uint32_t next_id = 0;
  auto register_graph = [&](const std::string& name, const Graph& g) {
    // Renumber to the next free id block so every graph in the file is
    // node-disjoint.
    std::map<NodeId, NodeId> shift;
    for (const NodeId& n : g.nodes) shift.emplace(n, NodeId{next_id++, n.sort});
    p.add_graph(name, apply_renaming(NodeRenaming::make(shift), g));
    return name;
  };
  auto equation = [&](const std::string& name, const Graph& lhs, const Graph& rhs) {
    std::string ln = register_graph(name + "_l", lhs);
    std::string rn = register_graph(name + "_r", rhs);
    p.rules.push_back(RuleDecl{name, ln, rn});
    p.asserts.push_back(AssertDecl{true, ln, rn});
  };

  for (const auto& t : m.transitions) {
    if (t.move_right) {
      for (const std::string& k : m.alphabet) {
        equation("mr_" + t.state + "_" + t.read + "_" + k,
                 chain_graph(t.state, true, {h, t.read, k}, true, 0),
                 chain_graph(t.next, true, {t.write, h, k}, true, 0));
      }
      equation("mre_" + t.state + "_" + t.read,
               chain_graph(t.state, true, {h, t.read, e}, false, 0),
               chain_graph(t.next, true, {t.write, h, m.blank, e}, false, 0));
    } else {
      for (const std::string& k : m.alphabet) {
        for (const std::string& l : m.alphabet) {
          equation("ml_" + t.state + "_" + t.read + "_" + k + "_" + l,
                   chain_graph(t.state, true, {l, k, h, t.read}, true, 0),
                   chain_graph(t.next, true, {l, h, k, t.write}, true, 0));
        }
        equation("mle_" + t.state + "_" + t.read + "_" + k,
                 chain_graph(t.state, false, {s, k, h, t.read}, true, 0),
                 chain_graph(t.next, false, {s, m.blank, h, k, t.write}, true, 0));
      }
    }
  }
  equation("del_start", chain_graph("", false, {s, m.blank, m.blank}, true, 0),
           chain_graph("", false, {s, m.blank}, true, 0));
  equation("del_end", chain_graph("", true, {m.blank, m.blank, e}, false, 0),
           chain_graph("", true, {m.blank, e}, false, 0));

  register_graph("start", tm_config_graph(m, m.initial, {m.blank}, {m.blank}, 0));
  register_graph("goal", tm_config_graph(m, m.final_state, {m.blank}, {m.blank}, 0));
  p.asserts.push_back(AssertDecl{false, "start", "goal"});
  return p;
}

}  // namespace gsp
