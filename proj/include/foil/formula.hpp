#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "foil/signature.hpp"

namespace foil {

enum class Kind {
  True,
  False,
  Atom,     // R(v1,...,vn)
  Equal,    // v1 = v2
  Not,
  And,
  Or,
  Implies,
  Exists,
  Forall,
};

// Immutable first-order formula over a relational signature.
// Value type: cheap to copy (shared immutable nodes), structural equality.
class Formula {
 public:
  Formula() = default;  // empty handle; using it is a programming error

  Kind kind() const;
  bool is_quantifier() const;
  bool is_binary() const;

  // Atom / Equal accessors.
  const std::string& rel() const;                 // Atom
  const std::vector<std::string>& args() const;   // Atom; Equal exposes {a,b}

  // Connective accessors.
  const Formula& child() const;  // Not
  const Formula& left() const;   // And / Or / Implies
  const Formula& right() const;
  const std::string& var() const;  // Exists / Forall
  const Formula& body() const;

  bool operator==(const Formula& other) const;  // structural
  bool operator!=(const Formula& other) const { return !(*this == other); }
  explicit operator bool() const { return node_ != nullptr; }

  struct Node;

 private:
  std::shared_ptr<const Node> node_;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  friend Formula make_node(Node&&);
};

// Builders.
Formula f_true();
Formula f_false();
Formula atom(const std::string& rel, const std::vector<std::string>& args);
Formula equal(const std::string& a, const std::string& b);
Formula lnot(const Formula& f);
Formula land(const Formula& a, const Formula& b);
Formula lor(const Formula& a, const Formula& b);
Formula implies(const Formula& a, const Formula& b);
Formula exists(const std::string& var, const Formula& body);
Formula forall(const std::string& var, const Formula& body);

// Variable-set queries.
std::set<std::string> free_vars(const Formula& f);
std::set<std::string> all_vars(const Formula& f);  // free + bound + binders

// Canonical text; round-trips through parse (see parse.hpp). Binary
// connectives are always parenthesized; quantified operands get parens.
std::string render(const Formula& f);

// Validation against a signature: relation names/arities must match, equality
// atoms require sig.has_equality(). Throws DomainError.
void check_against(const Signature& sig, const Formula& f);

// Simultaneous capture-avoiding renaming of *free* occurrences.
// Throws DomainError if a substituted variable would be captured.
Formula substitute_vars(const Formula& f,
                        const std::map<std::string, std::string>& repl);

// Bound variables renamed to v0, v1, ... in binder order (left-to-right,
// outside-in), skipping names that occur free in f.
Formula alpha_normalize(const Formula& f);

// Rename every bound variable to a fresh name not occurring in `taken`
// (nor anywhere in f); appends the chosen names to `taken`.
Formula freshen_bound(const Formula& f, std::set<std::string>& taken);

// Negation normal form: negations pushed to atoms, Implies rewritten.
Formula to_nnf(const Formula& f);

// Quantifier relativization: every (Qx. body) becomes
//   exists x. (dom[dom_var:=x] & body')   /   forall x. (dom[dom_var:=x] -> body').
// `params` are the other free variables of dom; they must stay free.
// Throws DomainError on variable capture (caller must alpha-rename).
Formula relativize(const Formula& f, const Formula& dom,
                   const std::string& dom_var,
                   const std::vector<std::string>& params);

}  // namespace foil
