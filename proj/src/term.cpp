#include "gsp/term.hpp"

#include <algorithm>
#include <sstream>

namespace gsp {

struct Term::Rep {
  bool variable;
  std::string head;
  std::vector<Term> args;
};

Term Term::variable(std::string name) {
  return Term(std::make_shared<const Rep>(Rep{true, std::move(name), {}}));
}

Term Term::apply(std::string symbol, std::vector<Term> args) {
  return Term(std::make_shared<const Rep>(Rep{false, std::move(symbol), std::move(args)}));
}

bool Term::is_variable() const { return rep_->variable; }
const std::string& Term::head() const { return rep_->head; }
const std::vector<Term>& Term::args() const { return rep_->args; }

bool Term::is_ground() const {
  if (is_variable()) return false;
  return std::all_of(args().begin(), args().end(),
                     [](const Term& t) { return t.is_ground(); });
}

void Term::collect_variables(std::set<std::string>& out) const {
  if (is_variable()) {
    out.insert(head());
    return;
  }
  for (const Term& a : args()) a.collect_variables(out);
}

std::set<std::string> Term::variables() const {
  std::set<std::string> out;
  collect_variables(out);
  return out;
}

bool Term::operator==(const Term& other) const {
  if (rep_ == other.rep_) return true;
  if (is_variable() != other.is_variable() || head() != other.head() ||
      args().size() != other.args().size())
    return false;
  return std::equal(args().begin(), args().end(), other.args().begin());
}

std::strong_ordering Term::operator<=>(const Term& other) const {
  if (rep_ == other.rep_) return std::strong_ordering::equal;
  // Variables sort before applications; then by head, then by arguments.
  if (is_variable() != other.is_variable())
    return is_variable() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = head() <=> other.head(); c != 0) return c;
  if (auto c = args().size() <=> other.args().size(); c != 0) return c;
  for (std::size_t i = 0; i < args().size(); ++i)
    if (auto c = args()[i] <=> other.args()[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string Term::to_string() const {
  if (is_variable() || args().empty()) return head();
  std::ostringstream out;
  out << head() << '(';
  for (std::size_t i = 0; i < args().size(); ++i) {
    if (i > 0) out << ", ";
    out << args()[i].to_string();
  }
  out << ')';
  return out.str();
}

Substitution Substitution::singleton(const std::string& var, Term value) {
  Substitution s;
  s.bind(var, std::move(value));
  return s;
}

const Term* Substitution::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

void Substitution::bind(const std::string& var, Term value) {
  if (value.is_variable() && value.head() == var) {
    bindings_.erase(var);
    return;
  }
  bindings_.insert_or_assign(var, std::move(value));
}

Term Substitution::operator()(const Term& t) const {
  if (t.is_variable()) {
    const Term* bound = lookup(t.head());
    return bound ? *bound : t;
  }
  if (t.is_ground() || bindings_.empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back((*this)(a));
  return Term::apply(t.head(), std::move(args));
}

Substitution Substitution::compose(const Substitution& inner) const {
  Substitution out;
  for (const auto& [v, t] : inner.bindings_) out.bind(v, (*this)(t));
  for (const auto& [v, t] : bindings_)
    if (!inner.lookup(v)) out.bind(v, t);
  return out;
}

bool Substitution::is_ground() const {
  return std::all_of(bindings_.begin(), bindings_.end(),
                     [](const auto& kv) { return kv.second.is_ground(); });
}

std::string Substitution::to_string() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [v, t] : bindings_) {
    if (!first) out << ", ";
    first = false;
    out << v << " -> " << t.to_string();
  }
  out << '}';
  return out.str();
}

namespace {

bool occurs(const std::string& var, const Term& t) {
  if (t.is_variable()) return t.head() == var;
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return occurs(var, a); });
}

}  // namespace

std::optional<Substitution> unify(const std::vector<std::pair<Term, Term>>& pairs) {
  Substitution sigma;
  std::vector<std::pair<Term, Term>> work(pairs.begin(), pairs.end());
  while (!work.empty()) {
    auto [s, t] = work.back();
    work.pop_back();
    s = sigma(s);
    t = sigma(t);
    if (s == t) continue;
    if (s.is_variable() || t.is_variable()) {
      if (!s.is_variable()) std::swap(s, t);
      if (occurs(s.head(), t)) return std::nullopt;
      // Keep sigma idempotent: fold the new binding into existing ranges.
      Substitution step = Substitution::singleton(s.head(), t);
      Substitution folded;
      for (const auto& [v, u] : sigma.bindings()) folded.bind(v, step(u));
      folded.bind(s.head(), t);
      sigma = std::move(folded);
      continue;
    }
    if (s.head() != t.head() || s.args().size() != t.args().size())
      return std::nullopt;
    for (std::size_t i = 0; i < s.args().size(); ++i)
      work.emplace_back(s.args()[i], t.args()[i]);
  }
  return sigma;
}

bool match_term(const Term& pattern, const Term& subject, Substitution& out) {
  if (pattern.is_variable()) {
    if (const Term* bound = out.lookup(pattern.head())) return *bound == subject;
    if (pattern.head() == subject.head() && subject.is_variable()) return true;
    out.bind(pattern.head(), subject);
    return true;
  }
  if (subject.is_variable()) return false;
  if (pattern.head() != subject.head() || pattern.args().size() != subject.args().size())
    return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_term(pattern.args()[i], subject.args()[i], out)) return false;
  return true;
}

Substitution fresh_variable_renaming(const std::set<std::string>& vars,
                                     const std::set<std::string>& reserved) {
  Substitution out;
  std::set<std::string> taken = reserved;
  taken.insert(vars.begin(), vars.end());
  for (const std::string& v : vars) {
    if (!reserved.count(v)) continue;
    unsigned counter = 0;
    std::string candidate;
    do {
      candidate = v + std::to_string(counter++);
    } while (taken.count(candidate));
    taken.insert(candidate);
    out.bind(v, Term::variable(candidate));
  }
  return out;
}

RenamedTerm fresh_rename(const Term& t, const std::set<std::string>& reserved) {
  Substitution renaming = fresh_variable_renaming(t.variables(), reserved);
  return RenamedTerm{renaming(t), std::move(renaming)};
}

}  // namespace gsp
