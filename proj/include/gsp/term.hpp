// First-order terms used as node labels, substitutions and syntactic
// unification. Terms are immutable values compared structurally; sharing is
// internal and invisible to callers.
#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gsp {

class Term {
 public:
  static Term variable(std::string name);
  static Term apply(std::string symbol, std::vector<Term> args = {});

  bool is_variable() const;
  bool is_application() const { return !is_variable(); }

  // Variable name or function symbol, depending on the kind.
  const std::string& head() const;
  const std::vector<Term>& args() const;
  std::size_t arity() const { return args().size(); }

  bool is_ground() const;
  void collect_variables(std::set<std::string>& out) const;
  std::set<std::string> variables() const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  std::strong_ordering operator<=>(const Term& other) const;

  std::string to_string() const;

 private:
  struct Rep;
  explicit Term(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

// Finite map from variable names to terms. Application is simultaneous:
// range terms are not rewritten again by the same substitution.
class Substitution {
 public:
  Substitution() = default;
  static Substitution singleton(const std::string& var, Term value);

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const std::map<std::string, Term>& bindings() const { return bindings_; }
  const Term* lookup(const std::string& var) const;

  // Identity bindings are dropped so the domain stays minimal.
  void bind(const std::string& var, Term value);

  Term operator()(const Term& t) const;

  // (a.compose(b))(t) == a(b(t)).
  Substitution compose(const Substitution& inner) const;

  bool is_ground() const;
  bool operator==(const Substitution& other) const = default;
  std::string to_string() const;

 private:
  std::map<std::string, Term> bindings_;
};

// Robinson unification with an explicit occurs check. Returns an idempotent
// most general unifier of all pairs, or nullopt if a clash or occurs-check
// failure makes the set non-unifiable.
std::optional<Substitution> unify(const std::vector<std::pair<Term, Term>>& pairs);

// One-sided unification: extends `out` with bindings over the pattern's
// variables so that out(pattern) == subject. Variables of the subject are
// treated as constants. Returns false (leaving `out` partially extended
// garbage-free is not guaranteed) when no match exists; callers pass a copy.
bool match_term(const Term& pattern, const Term& subject, Substitution& out);

// Injective renaming of the given variables away from `reserved`. Variables
// already outside `reserved` are kept. Names are formed by appending the
// smallest decimal counter that avoids reserved and previously chosen names.
Substitution fresh_variable_renaming(const std::set<std::string>& vars,
                                     const std::set<std::string>& reserved);

struct RenamedTerm {
  Term term;
  Substitution renaming;
};
RenamedTerm fresh_rename(const Term& t, const std::set<std::string>& reserved);

}  // namespace gsp
