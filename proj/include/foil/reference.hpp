#pragma once

#include <map>
#include <string>

#include "foil/formula.hpp"
#include "foil/structure.hpp"

namespace foil::reference {

// Independent brute-force satisfaction check, written against the public AST
// only. Deliberately different implementation strategy from foil::eval
// (assignment environments as sorted vectors, quantifiers expanded by
// explicit loops over fully materialized environments). Used as the oracle
// the main evaluator is checked against; keep it boring.
bool naive_eval(const FiniteStructure& a, const Formula& f,
                const std::map<std::string, int>& asg = {});

}  // namespace foil::reference
