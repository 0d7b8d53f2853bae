#pragma once

#include <optional>
#include <string>
#include <vector>

namespace foil {

// Purely relational signature: named relation symbols with arity >= 1,
// plus a flag saying whether equality atoms are admitted.
// No function symbols, no constants.
class Signature {
 public:
  struct Rel {
    std::string name;
    int arity;
    bool operator==(const Rel&) const = default;
  };

  Signature() = default;
  // Throws DomainError on duplicate names or arity < 1.
  Signature(std::vector<Rel> rels, bool has_equality);

  const std::vector<Rel>& relations() const { return rels_; }
  bool has_equality() const { return has_equality_; }
  std::optional<int> arity_of(const std::string& rel) const;
  bool operator==(const Signature&) const = default;

  // Compact descriptor, e.g. "E:2" or "Le:2,eq". Parse accepts the same form.
  std::string descriptor() const;
  static Signature parse_descriptor(const std::string& text);

 private:
  std::vector<Rel> rels_;
  bool has_equality_ = false;
};

// The stock signatures used by the concrete codings.
Signature graph_signature();       // E:2, no equality
Signature poset_signature();       // Le:2, with equality
Signature arithmetic_signature();  // Plus:3, Times:3, with equality

}  // namespace foil
