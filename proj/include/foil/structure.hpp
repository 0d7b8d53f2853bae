#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "foil/formula.hpp"
#include "foil/signature.hpp"

namespace foil {

// Finite relational structure with universe {0, ..., size-1}.
// Immutable after construction; tuples kept in sorted sets for deterministic
// iteration. A flat membership table is precomputed per relation when small
// enough, so evaluation does not allocate per lookup.
class FiniteStructure {
 public:
  FiniteStructure() = default;
  // Throws DomainError: size < 1, unknown relation, arity mismatch,
  // element out of range.
  FiniteStructure(std::string name, Signature sig, int size,
                  std::map<std::string, std::set<std::vector<int>>> tables);

  const std::string& name() const { return name_; }
  const Signature& sig() const { return sig_; }
  int size() const { return size_; }
  const std::set<std::vector<int>>& tuples(const std::string& rel) const;
  bool holds(const std::string& rel, const std::vector<int>& tuple) const;

  bool operator==(const FiniteStructure&) const;

 private:
  std::string name_;
  Signature sig_;
  int size_ = 0;
  std::map<std::string, std::set<std::vector<int>>> tables_;
  std::map<std::string, std::vector<char>> flat_;  // built when n^arity small
};

// Line-oriented file format:
//   structure NAME
//   universe N
//   rel R ARITY
//   e1 e2 ... eARITY        (one tuple per line)
//   end
// Blank lines and '#' comments ignored. Loaded structures admit equality.
FiniteStructure read_structure(std::istream& in);
FiniteStructure read_structure_file(const std::string& path);
std::string write_structure(const FiniteStructure& a);

// Tarskian satisfaction by exhaustive quantifier expansion (oracle-grade).
// asg maps every free variable of f to an element. Throws DomainError on
// unassigned free variables or signature mismatch.
bool eval(const FiniteStructure& a, const Formula& f,
          const std::map<std::string, int>& asg = {});

// Partition of {0..size-1} into disjoint nonempty blocks; blocks sorted by
// smallest element, elements sorted within each block.
using Partition = std::vector<std::vector<int>>;

// Coarsest indistinguishability congruence: x ~ y iff for every relation R,
// every argument position i, and every choice of the remaining arguments,
// R(..x..) <-> R(..y..). (The binary case is the classical one-step
// indistinguishability formula; higher arities generalize positionwise.)
Partition eq_congruence(const FiniteStructure& a);

// Quotient structure: universe = blocks of p (ordered by smallest element),
// relations induced via representatives. Verifies that p is a congruence for
// every relation (membership is block-invariant); throws DomainError if not.
FiniteStructure quotient(const FiniteStructure& a, const Partition& p);

// Isomorphism test by backtracking; pre: both sizes <= 12 (BudgetError).
bool iso_check(const FiniteStructure& a, const FiniteStructure& b);

}  // namespace foil
