#pragma once

#include <string>
#include <vector>

#include "foil/formula.hpp"

namespace foil {

enum class ClassKind { Sigma, Pi, Both };

// Quantifier-alternation class of a prenex form: k = number of maximal
// same-type quantifier blocks; kind = type of the first block
// (Both iff k == 0, i.e. quantifier-free).
struct PrenexClass {
  ClassKind kind = ClassKind::Both;
  int k = 0;
  bool operator==(const PrenexClass&) const = default;
};

std::string to_string(const PrenexClass& c);         // "Sigma 2", "Pi 1", "Both 0"
PrenexClass parse_class(const std::string& text);

// True iff a formula of class `c` is syntactically within class `bound`
// (padding with vacuous blocks allowed): smaller k always fits; equal k needs
// matching kind (Both fits either).
bool subsumed_by(const PrenexClass& c, const PrenexClass& bound);

// One maximal quantifier block of a prenex prefix.
struct Block {
  bool existential = true;
  std::vector<std::string> vars;
  bool operator==(const Block&) const = default;
};

struct PrenexForm {
  std::vector<Block> prefix;
  Formula matrix;
  Formula to_formula() const;
};

// Prenex normal form. Equivalence-preserving: A -> B is treated as !A | B for
// quantifier extraction; child prefixes are merged blockwise so that the
// number of alternation blocks is minimal for each connective, preferring the
// left operand's leading block on ties. Bound variables are renamed apart
// first; the result is alpha-normalized (v0, v1, ... in binder order).
PrenexForm to_prenex_form(const Formula& f);
Formula to_prenex(const Formula& f);

// Class of to_prenex(f). Minimal over the computed prenex form; deterministic.
PrenexClass classify(const Formula& f);

// True iff f is literally of the shape Q1 x1. ... Qn xn. (quantifier-free).
bool is_prenex(const Formula& f);

}  // namespace foil
