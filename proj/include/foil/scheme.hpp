#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foil/formula.hpp"
#include "foil/prenex.hpp"
#include "foil/signature.hpp"
#include "foil/structure.hpp"

namespace foil {

// Coding scheme: interprets source-signature structures inside
// target-signature structures. Component argument-variable convention:
// dom uses `x`; eq uses `x`,`y`; a rel/corel of arity n uses `x1`..`xn`;
// any further free variables must be declared params.
//
// When corels are present the scheme is a Sigma_k scheme: declared_k is
// required, every dom/rel/corel component must classify within Sigma_k and
// the correctness sentence within Pi_{k+1}. Without corels declared_k may be
// omitted; k is then inferred as the max component class (clamped >= 1).
class Scheme {
 public:
  Scheme() = default;
  Scheme(std::string name, Signature source, Signature target,
         std::vector<std::string> params, Formula dom,
         std::optional<Formula> eq, std::map<std::string, Formula> rels,
         std::map<std::string, Formula> corels, Formula correctness,
         std::optional<int> declared_k);

  const std::string& name() const { return name_; }
  const Signature& source() const { return source_; }
  const Signature& target() const { return target_; }
  const std::vector<std::string>& params() const { return params_; }
  const Formula& dom() const { return dom_; }
  const std::optional<Formula>& eq() const { return eq_; }
  const std::map<std::string, Formula>& rels() const { return rels_; }
  const std::map<std::string, Formula>& corels() const { return corels_; }
  const Formula& correctness() const { return correctness_; }
  bool is_sigma_scheme() const { return !corels_.empty(); }
  int k() const { return k_; }  // meaningful for Sigma_k schemes; >= 1

 private:
  std::string name_;
  Signature source_, target_;
  std::vector<std::string> params_;
  Formula dom_;
  std::optional<Formula> eq_;
  std::map<std::string, Formula> rels_, corels_;
  Formula correctness_;
  int k_ = 1;
};

// File format:
//   scheme NAME from SIG to SIG [params p1,p2] [k N]
//   dom: FORMULA
//   eq: FORMULA            (optional)
//   rel R: FORMULA         (one per source relation)
//   corel R: FORMULA       (optional; all-or-none)
//   correctness: FORMULA
//   end
// SIG is a descriptor like `E:2` or `Le:2,eq`. '#' comments allowed.
Scheme read_scheme(std::istream& in);
Scheme read_scheme_file(const std::string& path);
Scheme read_scheme_text(const std::string& text);
std::string write_scheme(const Scheme& s);

// dom = true, every rel R maps to the atom R(x1..xn), corel to its negation;
// correctness = true; k = 1.
Scheme identity_scheme(const Signature& sig, const std::string& name = "identity");

// Translation of a prenex source sentence phi into the target language:
// quantifiers relativized to dom, atoms replaced by scheme components.
// Sigma_k mode (corels present): matrix is NNF-normalized, then literals are
// replaced by polarity keyed to phi's innermost quantifier block —
// existential (or quantifier-free, which defaults to the existential
// convention): R |-> rel_R, !R |-> corel_R; universal: R |-> !corel_R,
// !R |-> !rel_R. Equality atoms are rejected in Sigma_k mode.
// General mode (no corels): atoms replaced positively via rels, equality via
// eq; a negated relation atom is an error (the polarity rule would demand a
// corel). Parameters stay free in the output.
// Errors (DomainError): phi not prenex / not a sentence / not over source();
// equality without eq component; missing corels; variable capture.
Formula tilde_translate(const Scheme& s, const Formula& phi);

// F(phi) = forall p1..pm. (correctness -> tilde) — or correctness -> tilde
// when the scheme is parameterless.
Formula reduction_F(const Scheme& s, const Formula& phi);

struct TranslationReport {
  PrenexClass input_class;
  Formula output;            // reduction_F(s, phi)
  PrenexClass output_class;  // classify(output)
  PrenexClass bound;         // transfer bound for (input_class, scheme)
  bool within_bound = false;
  bool hypotheses_met = false;  // lemma side conditions (r >= 2, kind/params)
};

// Bound accounting (Sigma_k schemes): parameterless Sigma_r input gives
// Sigma_{r+k-1} (the transfer lemma's case (i)); with parameters a Pi_{r+1}
// input gives Pi_{r+k} (case (ii)). Inputs outside the stated hypotheses are
// reported with hypotheses_met=false and the analogous kind-preserving /
// Pi-closed bound. Throws DomainError for general (non-Sigma_k) schemes.
TranslationReport complexity_report(const Scheme& s, const Formula& phi);

struct CorrectnessReport {
  bool alpha_holds = false;       // eval(A, correctness, pvals)
  bool dom_nonempty = false;
  bool eq_is_equivalence = true;  // trivially true when eq absent
  bool rels_compatible = true;    // eq-compatibility of every coded relation
  bool corels_disjoint = true;    // no tuple satisfies both rel and corel
  bool ok() const {
    return alpha_holds && dom_nonempty && eq_is_equivalence &&
           rels_compatible && corels_disjoint;
  }
  std::string describe() const;
};

CorrectnessReport correctness_report(const Scheme& s, const FiniteStructure& a,
                                     const std::map<std::string, int>& pvals = {});

// eval of the correctness sentence AND direct semantic verification (domain
// nonempty; eq an equivalence on D when present; coded relations
// eq-compatible; corels disjoint from rels on D^n).
bool check_correctness(const Scheme& s, const FiniteStructure& a,
                       const std::map<std::string, int>& pvals = {});

// Decoded source structure: universe = dom-elements of A (re-indexed in
// ascending order), relations defined by the rel components, then quotiented
// by eq (when present) or by eq_congruence of the induced structure.
// Pre: check_correctness passed (DomainError otherwise).
FiniteStructure decode(const Scheme& s, const FiniteStructure& a,
                       const std::map<std::string, int>& pvals = {});

}  // namespace foil
