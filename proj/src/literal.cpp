#include "gsp/literal.hpp"

#include <algorithm>

#include "gsp/errors.hpp"

namespace gsp {

namespace {

// Storage orientation for unordered pairs: the side with the smaller
// fingerprint (then smaller printout) first.
void orient(Graph& lhs, Graph& rhs) {
  std::uint64_t kl = iso_invariant_key(lhs);
  std::uint64_t kr = iso_invariant_key(rhs);
  if (kl > kr || (kl == kr && lhs.to_string() > rhs.to_string())) std::swap(lhs, rhs);
}

}  // namespace

GraphLiteral GraphLiteral::eq(Graph lhs, Graph rhs, const NodePreorder& preorder) {
  if (!root_similar(lhs, rhs, preorder))
    throw PreconditionError("graph equation sides are not root-similar");
  GraphLiteral l;
  l.kind_ = Kind::Eq;
  orient(lhs, rhs);
  l.lhs_ = std::move(lhs);
  l.rhs_ = std::move(rhs);
  return l;
}

GraphLiteral GraphLiteral::neq(Graph lhs, Graph rhs, const NodePreorder& preorder) {
  if (!root_similar(lhs, rhs, preorder))
    throw PreconditionError("graph disequation sides are not root-similar");
  GraphLiteral l;
  l.kind_ = Kind::Neq;
  orient(lhs, rhs);
  l.lhs_ = std::move(lhs);
  l.rhs_ = std::move(rhs);
  return l;
}

GraphLiteral GraphLiteral::falsum() { return GraphLiteral{}; }

GraphLiteral GraphLiteral::negated() const {
  if (is_falsum()) throw PreconditionError("falsum has no negation here");
  GraphLiteral l = *this;
  l.kind_ = kind_ == Kind::Eq ? Kind::Neq : Kind::Eq;
  return l;
}

bool GraphLiteral::is_ground() const {
  return is_falsum() || (lhs_.is_ground() && rhs_.is_ground());
}

std::set<std::string> GraphLiteral::variables() const {
  std::set<std::string> out = lhs_.variables();
  auto rv = rhs_.variables();
  out.insert(rv.begin(), rv.end());
  return out;
}

std::vector<NodeId> GraphLiteral::all_nodes() const {
  std::vector<NodeId> out = lhs_.nodes;
  out.insert(out.end(), rhs_.nodes.begin(), rhs_.nodes.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GraphLiteral GraphLiteral::map(const NodeRenaming& mu) const {
  if (is_falsum()) return *this;
  GraphLiteral l = *this;
  l.lhs_ = apply_renaming(mu, lhs_);
  l.rhs_ = apply_renaming(mu, rhs_);
  return l;
}

GraphLiteral GraphLiteral::substitute(const Substitution& sigma) const {
  if (is_falsum()) return *this;
  GraphLiteral l = *this;
  l.lhs_ = apply_label_subst(sigma, lhs_);
  l.rhs_ = apply_label_subst(sigma, rhs_);
  return l;
}

std::string GraphLiteral::to_string() const {
  switch (kind_) {
    case Kind::Falsum: return "false";
    case Kind::Eq: return lhs_.to_string() + " = " + rhs_.to_string();
    case Kind::Neq: return lhs_.to_string() + " != " + rhs_.to_string();
  }
  return "false";
}

bool literal_isomorphic(const GraphLiteral& a, const GraphLiteral& b) {
  if (a.kind() != b.kind()) return false;
  if (a.is_falsum()) return true;
  if (isomorphic(a.lhs(), b.lhs()) && isomorphic(a.rhs(), b.rhs())) return true;
  // Both literal kinds are unordered pairs.
  return isomorphic(a.lhs(), b.rhs()) && isomorphic(a.rhs(), b.lhs());
}

std::uint64_t literal_key(const GraphLiteral& l) {
  if (l.is_falsum()) return 0;
  std::uint64_t a = iso_invariant_key(l.lhs());
  std::uint64_t b = iso_invariant_key(l.rhs());
  if (a > b) std::swap(a, b);
  std::uint64_t kind = l.kind() == GraphLiteral::Kind::Eq ? 3 : 5;
  return (a * 0x9e3779b97f4a7c15ULL) ^ (b + kind);
}

bool GraphFormula::insert(GraphLiteral l) {
  const std::uint64_t key = literal_key(l);
  for (std::size_t i = 0; i < literals.size(); ++i)
    if (keys[i] == key && literal_isomorphic(literals[i], l)) return false;
  literals.push_back(std::move(l));
  keys.push_back(key);
  return true;
}

void GraphFormula::append(GraphLiteral l) {
  keys.push_back(literal_key(l));
  literals.push_back(std::move(l));
}

bool GraphFormula::contains_falsum() const {
  return std::any_of(literals.begin(), literals.end(),
                     [](const GraphLiteral& l) { return l.is_falsum(); });
}

}  // namespace gsp
