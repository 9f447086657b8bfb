#include "gsp/io.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "gsp/circuits.hpp"
#include "gsp/errors.hpp"

namespace gsp {

std::string term_to_text(const Term& t) { return t.to_string(); }

std::string CircuitExpr::to_string() const {
  switch (kind) {
    case Kind::Name: return name;
    case Kind::Id: return "id(" + std::to_string(wires) + ")";
    case Kind::Swap: return "swap";
    case Kind::Gate:
      return "gate(" + term_to_text(gate_label) + ", " + std::to_string(entries) + ", " +
             std::to_string(outputs) + ")";
    case Kind::Par: return "(" + left->to_string() + " par " + right->to_string() + ")";
    case Kind::Seq: return "(" + left->to_string() + " seq " + right->to_string() + ")";
  }
  return name;
}

const Graph* ProblemFile::find_graph(const std::string& name) const {
  if (auto it = graphs.find(name); it != graphs.end()) return &it->second;
  if (auto it = circuit_graphs.find(name); it != circuit_graphs.end()) return &it->second;
  return nullptr;
}

RuleSet ProblemFile::rule_set() const {
  RuleSet out;
  for (const RuleDecl& r : rules)
    out.push_back(RewriteRule::make(r.name, *find_graph(r.lhs), *find_graph(r.rhs)));
  return out;
}

std::vector<GraphLiteral> ProblemFile::literals() const {
  std::vector<GraphLiteral> out;
  for (const AssertDecl& a : asserts) {
    const Graph& lhs = *find_graph(a.lhs);
    const Graph& rhs = *find_graph(a.rhs);
    out.push_back(a.equal ? GraphLiteral::eq(lhs, rhs) : GraphLiteral::neq(lhs, rhs));
  }
  return out;
}

void ProblemFile::add_graph(const std::string& name, const Graph& g) {
  graphs[name] = g;
  for (const NodeId& n : g.nodes) {
    if (name_of_node.count(n.id)) continue;
    std::string node_name = "n" + std::to_string(n.id);
    while (node_by_name.count(node_name)) node_name += "_";
    node_by_name.emplace(node_name, n);
    name_of_node.emplace(n.id, node_name);
  }
}

namespace {

struct Token {
  enum class Kind { Ident, Integer, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run(std::vector<std::string>& errors) {
    std::vector<Token> out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        continue;
      }
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
          char k = text_[pos_];
          if (std::isalnum(static_cast<unsigned char>(k)) || k == '_' || k == '\'') {
            ++pos_;
            continue;
          }
          // A hyphen joins identifier parts (node-count) but never an arrow.
          if (k == '-' && pos_ + 1 < text_.size() &&
              std::isalnum(static_cast<unsigned char>(text_[pos_ + 1]))) {
            ++pos_;
            continue;
          }
          break;
        }
        out.push_back({Token::Kind::Ident, text_.substr(start, pos_ - start), line_});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        out.push_back({Token::Kind::Integer, text_.substr(start, pos_ - start), line_});
        continue;
      }
      if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        out.push_back({Token::Kind::Punct, "->", line_});
        pos_ += 2;
        continue;
      }
      if (std::string(";,:(){}[]=").find(c) != std::string::npos) {
        out.push_back({Token::Kind::Punct, std::string(1, c), line_});
        ++pos_;
        continue;
      }
      errors.push_back("line " + std::to_string(line_) + ": unexpected character '" +
                       std::string(1, c) + "'");
      ++pos_;
    }
    out.push_back({Token::Kind::End, "", line_});
    return out;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::optional<Sort> parse_sort_name(const std::string& s) {
  if (s == "into") return Sort::into();
  if (s == "from") return Sort::from();
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<std::string>& errors)
      : tokens_(std::move(tokens)), errors_(errors) {}

  ProblemFile run() {
    while (!at_end()) {
      const Token& t = peek();
      if (t.kind != Token::Kind::Ident) {
        fail(t, "expected a declaration keyword");
        skip_statement();
        continue;
      }
      if (t.text == "sort") parse_sort_decl();
      else if (t.text == "vars") parse_vars();
      else if (t.text == "graph") parse_graph();
      else if (t.text == "rule") parse_rule();
      else if (t.text == "circuit") parse_circuit();
      else if (t.text == "assert") parse_assert();
      else if (t.text == "set") parse_set();
      else {
        fail(t, "unknown declaration '" + t.text + "'");
        skip_statement();
      }
    }
    finalize();
    return std::move(problem_);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::string>& errors_;
  ProblemFile problem_;
  std::uint32_t next_id_ = 0;
  std::map<std::string, std::size_t> symbol_arity_;

  const Token& peek() const { return tokens_[pos_]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  Token advance() { return tokens_[pos_++]; }

  void fail(const Token& t, const std::string& message) {
    errors_.push_back("line " + std::to_string(t.line) + ": " + message);
  }

  void skip_statement() {
    int depth = 0;
    while (!at_end()) {
      Token t = advance();
      if (t.text == "{") ++depth;
      if (t.text == "}") --depth;
      if (t.text == ";" && depth <= 0) return;
    }
  }

  bool expect(const std::string& text) {
    if (peek().text == text) {
      advance();
      return true;
    }
    fail(peek(), "expected '" + text + "'");
    return false;
  }

  std::optional<std::string> expect_ident(const std::string& what) {
    if (peek().kind == Token::Kind::Ident) return advance().text;
    fail(peek(), "expected " + what);
    return std::nullopt;
  }

  std::optional<std::size_t> expect_integer(const std::string& what) {
    if (peek().kind == Token::Kind::Integer) return std::stoul(advance().text);
    fail(peek(), "expected " + what);
    return std::nullopt;
  }

  bool is_var(const std::string& name) const {
    return std::binary_search(problem_.vars.begin(), problem_.vars.end(), name);
  }

  void parse_sort_decl() {
    advance();
    if (auto name = expect_ident("a sort name")) {
      if (parse_sort_name(*name) || *name == "gate")
        fail(peek(), "'" + *name + "' is a builtin sort");
      else
        problem_.sorts.push_back(*name);
    }
    expect(";");
    std::sort(problem_.sorts.begin(), problem_.sorts.end());
    problem_.sorts.erase(std::unique(problem_.sorts.begin(), problem_.sorts.end()),
                         problem_.sorts.end());
  }

  void parse_vars() {
    advance();
    while (true) {
      if (auto name = expect_ident("a variable name")) {
        if (!name->empty() && std::islower(static_cast<unsigned char>((*name)[0])))
          problem_.vars.push_back(*name);
        else
          fail(peek(), "variable names start with a lowercase letter");
      } else {
        skip_statement();
        return;
      }
      if (peek().text != ",") break;
      advance();
    }
    expect(";");
    std::sort(problem_.vars.begin(), problem_.vars.end());
    problem_.vars.erase(std::unique(problem_.vars.begin(), problem_.vars.end()),
                        problem_.vars.end());
  }

  std::optional<Sort> parse_sort_use() {
    if (peek().text == "gate") {
      advance();
      if (!expect("(")) return std::nullopt;
      auto n = expect_integer("the gate entry count");
      if (!expect(",")) return std::nullopt;
      auto m = expect_integer("the gate output count");
      if (!expect(")")) return std::nullopt;
      if (!n || !m) return std::nullopt;
      return Sort::gate(static_cast<std::uint32_t>(*n), static_cast<std::uint32_t>(*m));
    }
    auto name = expect_ident("a sort");
    if (!name) return std::nullopt;
    if (auto builtin = parse_sort_name(*name)) return builtin;
    if (!std::binary_search(problem_.sorts.begin(), problem_.sorts.end(), *name)) {
      fail(peek(), "sort '" + *name + "' is not declared");
      return std::nullopt;
    }
    return Sort::custom(*name);
  }

  std::optional<Term> parse_term() {
    if (peek().kind == Token::Kind::Integer) return Term::apply(advance().text);
    auto head = expect_ident("a term");
    if (!head) return std::nullopt;
    if (is_var(*head)) {
      if (peek().text == "(") fail(peek(), "variable '" + *head + "' cannot take arguments");
      return Term::variable(*head);
    }
    std::vector<Term> args;
    if (peek().text == "(") {
      advance();
      if (peek().text != ")") {
        while (true) {
          auto arg = parse_term();
          if (!arg) return std::nullopt;
          args.push_back(std::move(*arg));
          if (peek().text != ",") break;
          advance();
        }
      }
      if (!expect(")")) return std::nullopt;
    }
    auto [it, inserted] = symbol_arity_.emplace(*head, args.size());
    if (!inserted && it->second != args.size()) {
      fail(peek(), "symbol '" + *head + "' used with arity " + std::to_string(args.size()) +
                       " but declared with " + std::to_string(it->second));
      return std::nullopt;
    }
    return Term::apply(*head, std::move(args));
  }

  std::optional<NodeId> declare_node(const std::string& name, const Sort& sort) {
    auto it = problem_.node_by_name.find(name);
    if (it != problem_.node_by_name.end()) {
      if (it->second.sort != sort) {
        fail(peek(), "node '" + name + "' was declared with a different sort");
        return std::nullopt;
      }
      return it->second;
    }
    NodeId n{next_id_++, sort};
    problem_.node_by_name.emplace(name, n);
    problem_.name_of_node.emplace(n.id, name);
    return n;
  }

  void parse_graph() {
    advance();
    auto name = expect_ident("a graph name");
    if (!name || !expect("{")) {
      skip_statement();
      return;
    }
    Graph g;
    std::map<std::string, NodeId> local;
    auto local_node = [&](const std::string& n) -> std::optional<NodeId> {
      auto it = local.find(n);
      if (it == local.end()) {
        fail(peek(), "node '" + n + "' is not declared in graph '" + *name + "'");
        return std::nullopt;
      }
      return it->second;
    };
    while (peek().text != "}" && !at_end()) {
      const Token& t = peek();
      if (t.text == "node") {
        advance();
        auto node_name = expect_ident("a node name");
        if (!node_name || !expect(":")) {
          skip_statement();
          continue;
        }
        auto sort = parse_sort_use();
        if (!sort) {
          skip_statement();
          continue;
        }
        std::optional<Term> label;
        if (peek().text == "label") {
          advance();
          label = parse_term();
          if (!label) {
            skip_statement();
            continue;
          }
        }
        expect(";");
        auto node = declare_node(*node_name, *sort);
        if (!node) continue;
        if (local.count(*node_name)) {
          fail(t, "node '" + *node_name + "' declared twice in graph '" + *name + "'");
          continue;
        }
        local.emplace(*node_name, *node);
        g.nodes.push_back(*node);
        if (label) g.labels.emplace(*node, *label);
      } else if (t.text == "roots") {
        advance();
        if (!expect("[")) {
          skip_statement();
          continue;
        }
        if (peek().text != "]") {
          while (true) {
            auto n = expect_ident("a node name");
            if (!n) break;
            if (auto node = local_node(*n)) g.roots.push_back(*node);
            if (peek().text != ",") break;
            advance();
          }
        }
        expect("]");
        expect(";");
      } else if (t.text == "edge") {
        advance();
        auto a = expect_ident("a node name");
        if (!a || !expect("->")) {
          skip_statement();
          continue;
        }
        auto b = expect_ident("a node name");
        expect(";");
        if (!b) continue;
        auto na = local_node(*a);
        auto nb = local_node(*b);
        if (na && nb) g.edges.push_back({*na, *nb});
      } else {
        fail(t, "expected node, roots or edge");
        skip_statement();
      }
    }
    expect("}");
    g.normalize();
    for (const std::string& v : validate_graph(g))
      errors_.push_back("graph '" + *name + "': " + v);
    if (problem_.graphs.count(*name) || problem_.circuits.count(*name))
      errors_.push_back("graph '" + *name + "' is declared twice");
    problem_.graphs.emplace(*name, std::move(g));
  }

  void parse_rule() {
    advance();
    auto name = expect_ident("a rule name");
    if (!name || !expect(":")) {
      skip_statement();
      return;
    }
    auto lhs = expect_ident("a graph name");
    if (!lhs || !expect("->")) {
      skip_statement();
      return;
    }
    auto rhs = expect_ident("a graph name");
    expect(";");
    if (!rhs) return;
    problem_.rules.push_back(RuleDecl{*name, *lhs, *rhs});
  }

  std::optional<CircuitExpr> parse_circuit_primary() {
    if (peek().text == "(") {
      advance();
      auto inner = parse_circuit_expr();
      expect(")");
      return inner;
    }
    if (peek().text == "id") {
      advance();
      if (!expect("(")) return std::nullopt;
      auto k = expect_integer("a wire count");
      if (!expect(")") || !k) return std::nullopt;
      CircuitExpr e;
      e.kind = CircuitExpr::Kind::Id;
      e.wires = *k;
      return e;
    }
    if (peek().text == "swap") {
      advance();
      CircuitExpr e;
      e.kind = CircuitExpr::Kind::Swap;
      return e;
    }
    if (peek().text == "gate") {
      advance();
      if (!expect("(")) return std::nullopt;
      auto label = parse_term();
      if (!label || !expect(",")) return std::nullopt;
      auto n = expect_integer("the entry count");
      if (!expect(",") || !n) return std::nullopt;
      auto m = expect_integer("the output count");
      if (!expect(")") || !m) return std::nullopt;
      CircuitExpr e;
      e.kind = CircuitExpr::Kind::Gate;
      e.gate_label = *label;
      e.entries = *n;
      e.outputs = *m;
      return e;
    }
    auto name = expect_ident("a circuit operand");
    if (!name) return std::nullopt;
    CircuitExpr e;
    e.kind = CircuitExpr::Kind::Name;
    e.name = *name;
    return e;
  }

  std::optional<CircuitExpr> parse_circuit_expr() {
    auto lhs = parse_circuit_primary();
    if (!lhs) return std::nullopt;
    while (peek().text == "par" || peek().text == "seq") {
      bool par = advance().text == "par";
      auto rhs = parse_circuit_primary();
      if (!rhs) return std::nullopt;
      CircuitExpr combined;
      combined.kind = par ? CircuitExpr::Kind::Par : CircuitExpr::Kind::Seq;
      combined.left = std::make_shared<CircuitExpr>(std::move(*lhs));
      combined.right = std::make_shared<CircuitExpr>(std::move(*rhs));
      lhs = std::move(combined);
    }
    return lhs;
  }

  std::optional<Circuit> eval_circuit(const CircuitExpr& e, std::size_t line) {
    auto report = [&](const std::string& msg) {
      errors_.push_back("line " + std::to_string(line) + ": " + msg);
    };
    switch (e.kind) {
      case CircuitExpr::Kind::Name: {
        const Graph* g = problem_.find_graph(e.name);
        if (!g) {
          report("graph '" + e.name + "' is not declared");
          return std::nullopt;
        }
        CircuitValidation v = validate_circuit(*g);
        if (!v.circuit) {
          report("graph '" + e.name + "' is not a circuit: " + v.violations.front());
          return std::nullopt;
        }
        return v.circuit;
      }
      case CircuitExpr::Kind::Id: {
        Circuit c = build_primitive(CircuitPrimitive::id_graph(e.wires), next_id_);
        next_id_ += static_cast<std::uint32_t>(c.graph.node_count());
        return c;
      }
      case CircuitExpr::Kind::Swap: {
        Circuit c = build_primitive(CircuitPrimitive::swap_graph(), next_id_);
        next_id_ += static_cast<std::uint32_t>(c.graph.node_count());
        return c;
      }
      case CircuitExpr::Kind::Gate: {
        Circuit c = build_primitive(
            CircuitPrimitive::elementary_gate(e.gate_label, e.entries, e.outputs), next_id_);
        next_id_ += static_cast<std::uint32_t>(c.graph.node_count());
        return c;
      }
      case CircuitExpr::Kind::Par:
      case CircuitExpr::Kind::Seq: {
        auto l = eval_circuit(*e.left, line);
        auto r = eval_circuit(*e.right, line);
        if (!l || !r) return std::nullopt;
        try {
          return e.kind == CircuitExpr::Kind::Par ? parallel_compose(*l, *r)
                                                  : sequential_compose(*l, *r);
        } catch (const ArityMismatch& ex) {
          report(ex.what());
          return std::nullopt;
        }
      }
    }
    return std::nullopt;
  }

  void parse_circuit() {
    std::size_t line = peek().line;
    advance();
    auto name = expect_ident("a circuit name");
    if (!name || !expect("=")) {
      skip_statement();
      return;
    }
    auto expr = parse_circuit_expr();
    expect(";");
    if (!expr) return;
    if (problem_.graphs.count(*name) || problem_.circuits.count(*name)) {
      errors_.push_back("line " + std::to_string(line) + ": '" + *name + "' is declared twice");
      return;
    }
    if (auto value = eval_circuit(*expr, line)) {
      problem_.circuits.emplace(*name, std::move(*expr));
      problem_.circuit_graphs.emplace(*name, std::move(value->graph));
    }
  }

  void parse_assert() {
    std::size_t line = peek().line;
    advance();
    auto kind = expect_ident("eq or neq");
    if (!kind || (*kind != "eq" && *kind != "neq")) {
      fail(peek(), "expected eq or neq");
      skip_statement();
      return;
    }
    auto lhs = expect_ident("a graph name");
    auto rhs = expect_ident("a graph name");
    expect(";");
    if (!lhs || !rhs) return;
    const Graph* l = problem_.find_graph(*lhs);
    const Graph* r = problem_.find_graph(*rhs);
    if (!l || !r) {
      errors_.push_back("line " + std::to_string(line) + ": assert references unknown graphs");
      return;
    }
    if (!root_similar(*l, *r))
      errors_.push_back("line " + std::to_string(line) + ": assert operands are not root-similar");
    problem_.asserts.push_back(AssertDecl{*kind == "eq", *lhs, *rhs});
  }

  void parse_set() {
    advance();
    auto what = expect_ident("a directive");
    if (!what) {
      skip_statement();
      return;
    }
    if (*what == "order") {
      if (auto v = expect_ident("an order name")) {
        if (*v != "node-count")
          fail(peek(), "unknown order '" + *v + "'");
        else
          problem_.directives.order = *v;
      }
      expect(";");
      return;
    }
    if (*what == "crelation") {
      if (auto v = expect_ident("plain or circuits")) {
        if (*v != "plain" && *v != "circuits")
          fail(peek(), "unknown crelation '" + *v + "'");
        else
          problem_.directives.crelation = *v;
      }
      expect(";");
      return;
    }
    if (*what == "budget") {
      while (peek().kind == Token::Kind::Ident) {
        std::string key = advance().text;
        if (!expect("=")) break;
        auto value = expect_integer("a number");
        if (!value) break;
        if (key == "merges") problem_.directives.merges = *value;
        else if (key == "fuel") problem_.directives.fuel = *value;
        else if (key == "literals") problem_.directives.literals = *value;
        else fail(peek(), "unknown budget key '" + key + "'");
      }
      expect(";");
      return;
    }
    fail(peek(), "unknown directive '" + *what + "'");
    skip_statement();
  }

  void finalize() {
    for (const RuleDecl& r : problem_.rules) {
      const Graph* l = problem_.find_graph(r.lhs);
      const Graph* g = problem_.find_graph(r.rhs);
      if (!l || !g) {
        errors_.push_back("rule '" + r.name + "' references unknown graphs");
        continue;
      }
      if (!root_similar(*l, *g))
        errors_.push_back("rule '" + r.name + "': sides are not root-similar");
    }
  }
};

}  // namespace

ParseResult parse_problem(const std::string& text) {
  ParseResult result;
  Lexer lexer(text);
  std::vector<Token> tokens = lexer.run(result.errors);
  Parser parser(std::move(tokens), result.errors);
  ProblemFile p = parser.run();
  if (result.errors.empty()) result.problem = std::move(p);
  return result;
}

namespace {

std::string sort_to_text(const Sort& s) { return s.to_string(); }

std::string node_ref(const ProblemFile& p, const NodeId& n,
                     std::map<std::uint32_t, std::string>& synthesized) {
  if (auto it = p.name_of_node.find(n.id); it != p.name_of_node.end()) return it->second;
  if (auto it = synthesized.find(n.id); it != synthesized.end()) return it->second;
  std::string name = "n" + std::to_string(n.id);
  while (p.node_by_name.count(name)) name += "_";
  synthesized.emplace(n.id, name);
  return name;
}

}  // namespace

std::string serialize_problem(const ProblemFile& p) {
  std::ostringstream out;
  std::map<std::uint32_t, std::string> synthesized;
  out << "set order " << p.directives.order << ";\n";
  out << "set crelation " << p.directives.crelation << ";\n";
  out << "set budget merges=" << p.directives.merges << " fuel=" << p.directives.fuel
      << " literals=" << p.directives.literals << ";\n";
  for (const std::string& s : p.sorts) out << "sort " << s << ";\n";
  if (!p.vars.empty()) {
    out << "vars ";
    for (std::size_t i = 0; i < p.vars.size(); ++i) {
      if (i) out << ", ";
      out << p.vars[i];
    }
    out << ";\n";
  }
  for (const auto& [name, g] : p.graphs) {
    out << "graph " << name << " {\n";
    for (const NodeId& n : g.nodes) {
      out << "  node " << node_ref(p, n, synthesized) << " : " << sort_to_text(n.sort);
      if (const Term* t = g.label(n)) out << " label " << term_to_text(*t);
      out << ";\n";
    }
    out << "  roots [";
    for (std::size_t i = 0; i < g.roots.size(); ++i) {
      if (i) out << ", ";
      out << node_ref(p, g.roots[i], synthesized);
    }
    out << "];\n";
    for (const Edge& e : g.edges)
      out << "  edge " << node_ref(p, e.first, synthesized) << " -> "
          << node_ref(p, e.second, synthesized) << ";\n";
    out << "}\n";
  }
  for (const auto& [name, expr] : p.circuits)
    out << "circuit " << name << " = " << expr.to_string() << ";\n";
  for (const RuleDecl& r : p.rules)
    out << "rule " << r.name << " : " << r.lhs << " -> " << r.rhs << ";\n";
  for (const AssertDecl& a : p.asserts)
    out << "assert " << (a.equal ? "eq" : "neq") << " " << a.lhs << " " << a.rhs << ";\n";
  return out.str();
}

std::string export_dot(const Graph& g, const ProblemFile* names) {
  std::ostringstream out;
  std::map<std::uint32_t, std::string> synthesized;
  ProblemFile empty;
  const ProblemFile& p = names ? *names : empty;
  out << "digraph G {\n";
  for (const NodeId& n : g.nodes) {
    std::string name = node_ref(p, n, synthesized);
    out << "  \"" << name << "\" [";
    if (g.is_root(n)) {
      out << "shape=doublecircle, label=\"" << name << ":" << sort_to_text(n.sort) << "\"";
    } else {
      if (n.sort.is_gate()) out << "shape=box, ";
      out << "label=\"" << name << ":" << sort_to_text(n.sort);
      if (const Term* t = g.label(n)) out << ":" << term_to_text(*t);
      out << "\"";
    }
    out << "];\n";
  }
  for (const Edge& e : g.edges)
    out << "  \"" << node_ref(p, e.first, synthesized) << "\" -> \""
        << node_ref(p, e.second, synthesized) << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace gsp
