#pragma once

#include <string>
#include <utility>

#include "foil/formula.hpp"
#include "foil/signature.hpp"

namespace foil {

// Grammar (whitespace-insensitive between tokens):
//   formula := quant | impl
//   quant   := ("forall" | "exists") VAR "." formula
//   impl    := disj [ "->" formula ]            (right-associative)
//   disj    := conj { "|" conj }
//   conj    := neg { "&" neg }
//   neg     := "!" neg | atom | "(" formula ")"
//   atom    := RELNAME "(" VAR { "," VAR } ")" | VAR "=" VAR | "true" | "false"
//   VAR     := [a-z][A-Za-z0-9_]*   (keywords reserved)
//   RELNAME := [A-Z][A-Za-z0-9_]*
// Throws ParseError with position; validates against sig (DomainError).
Formula parse(const std::string& text, const Signature& sig);

// Parse without a signature: infers one from the atoms seen (consistent
// arities required; has_equality set iff an equality atom occurs).
std::pair<Formula, Signature> parse_infer(const std::string& text);

}  // namespace foil
