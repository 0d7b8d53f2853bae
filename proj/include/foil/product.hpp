#pragma once

#include <string>
#include <vector>

#include "foil/formula.hpp"
#include "foil/structure.hpp"

namespace foil {

// Direct power A^m: universe = m-tuples over A (lexicographically ordered,
// tuple t maps to index sum t[i]*|A|^(m-1-i)), relations hold iff they hold
// coordinatewise in every coordinate. Equality of tuples is coordinatewise.
FiniteStructure power(const FiniteStructure& a, int m);
std::vector<int> power_tuple(int index, int base, int m);
int power_index(const std::vector<int>& tuple, int base);

// Decomposition of a formula phi over A^{k+1} into a finite disjunction of
// clauses; each clause is a (k+1)-vector of component formulas over the base
// signature with the same free variables as phi. Defining property:
//   A^{k+1} |= phi[asg]  <=>  OR_clauses AND_i  A |= clause[i][proj_i(asg)].
struct FVDecomposition {
  int components = 1;                        // k+1
  std::vector<std::vector<Formula>> clauses; // each of length `components`
};

// Constructive decomposition by induction on phi: atoms/equality decompose
// coordinatewise; Or = clause union, And = clause cross-product, Not =
// choice-function complement (DNF re-expansion), Exists = componentwise,
// Forall via !Exists!. Clause sets are deduplicated and kept in a canonical
// order; clause count is not minimized.
FVDecomposition fv_decompose(const Formula& phi, int k);

// Exhaustive semantic check of the defining property over the given base
// structure. Budgets (BudgetError): |A| <= 3, k <= 2, <= 3 free variables.
bool fv_verify(const Formula& phi, int k, const FiniteStructure& a);

// Same check for an arbitrary candidate decomposition (used by mutation
// tests: dropping a clause must break the property somewhere).
bool fv_holds(const FVDecomposition& dec, const Formula& phi,
              const FiniteStructure& a);

}  // namespace foil
