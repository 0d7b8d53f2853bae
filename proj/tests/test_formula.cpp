#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "foil/errors.hpp"
#include "foil/formula.hpp"
#include "foil/parse.hpp"
#include "foil/prenex.hpp"
#include "foil/reference.hpp"
#include "foil/structure.hpp"
#include "support/gen.hpp"

using namespace foil;
using testsupport::Rng;

namespace {

Signature pq_sig() { return Signature({{"P", 1}, {"Q", 1}, {"R", 2}}, true); }

// Independent block scanner over the *rendered* prenex string: counts maximal
// runs of leading "exists"/"forall" tokens. Used to cross-check classify.
PrenexClass scan_rendered_class(const std::string& s) {
  size_t pos = 0;
  int blocks = 0;
  bool first_ex = false, last = false;
  while (true) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    bool ex;
    if (s.compare(pos, 7, "exists ") == 0) ex = true;
    else if (s.compare(pos, 7, "forall ") == 0) ex = false;
    else break;
    pos += 7;
    while (pos < s.size() && s[pos] != '.') ++pos;
    ++pos;  // '.'
    if (blocks == 0 || ex != last) {
      ++blocks;
      if (blocks == 1) first_ex = ex;
    }
    last = ex;
  }
  if (blocks == 0) return {ClassKind::Both, 0};
  return {first_ex ? ClassKind::Sigma : ClassKind::Pi, blocks};
}

}  // namespace

TEST_CASE("render: canonical forms") {
  CHECK(render(exists("x", atom("P", {"x"}))) == "exists x. P(x)");
  CHECK(render(land(f_true(), f_false())) == "(true & false)");
  CHECK(render(lnot(atom("P", {"x"}))) == "!P(x)");
  CHECK(render(equal("x", "y")) == "x = y");
  CHECK(render(implies(atom("P", {"x"}), atom("Q", {"x"}))) ==
        "(P(x) -> Q(x))");
  // quantified operands are parenthesized so the grammar round-trips
  CHECK(render(land(atom("P", {"x"}), exists("y", atom("Q", {"y"})))) ==
        "(P(x) & (exists y. Q(y)))");
  CHECK(render(lnot(exists("x", atom("P", {"x"})))) == "!(exists x. P(x))");
  CHECK(render(lnot(lnot(atom("P", {"x"})))) == "!!P(x)");
}

TEST_CASE("parse: grammar, associativity, keywords") {
  Signature sig = pq_sig();
  // right-associative implication
  Formula f = parse("P(x) -> Q(x) -> R(x,y)", sig);
  CHECK(f.kind() == Kind::Implies);
  CHECK(f.right().kind() == Kind::Implies);
  // precedence: ! over & over | over ->
  Formula g = parse("!P(x) & Q(x) | R(x,y) -> false", sig);
  CHECK(g.kind() == Kind::Implies);
  CHECK(g.left().kind() == Kind::Or);
  CHECK(g.left().left().kind() == Kind::And);
  CHECK(g.left().left().left().kind() == Kind::Not);
  // quantifier body extends right
  Formula q = parse("forall x. P(x) & Q(x)", sig);
  CHECK(q.kind() == Kind::Forall);
  CHECK(q.body().kind() == Kind::And);
  // negated equality without parens
  Formula e = parse("!x = y", sig);
  CHECK(e.kind() == Kind::Not);
  CHECK(e.child().kind() == Kind::Equal);
  CHECK(parse("exists x. (P(x) & (exists x. Q(x)))", sig).kind() == Kind::Exists);
}

TEST_CASE("parse: errors carry positions") {
  Signature sig = pq_sig();
  CHECK_THROWS_AS(parse("P(x", sig), ParseError);
  CHECK_THROWS_AS(parse("forall forall. P(x)", sig), ParseError);
  CHECK_THROWS_AS(parse("P(x) &", sig), ParseError);
  CHECK_THROWS_AS(parse("P(x) Q(x)", sig), ParseError);  // trailing junk
  CHECK_THROWS_AS(parse("p(x)", sig), ParseError);       // lowercase relation
  try {
    parse("P(x) &\n& Q(x)", sig);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col == 1);
  }
  // signature violations are domain errors, not syntax errors
  CHECK_THROWS_AS(parse("P(x,y)", sig), DomainError);     // arity
  CHECK_THROWS_AS(parse("S(x)", sig), DomainError);       // unknown relation
  Signature noeq({{"E", 2}}, false);
  CHECK_THROWS_AS(parse("x = y", noeq), DomainError);     // equality forbidden
}

TEST_CASE("parse_infer derives a signature") {
  auto [f, sig] = parse_infer("exists x. forall y. (R(x,y) | !R(y,x))");
  CHECK(sig.arity_of("R") == 2);
  CHECK_FALSE(sig.has_equality());
  auto [g, sig2] = parse_infer("exists x. exists y. !(x = y)");
  CHECK(sig2.has_equality());
  CHECK_THROWS_AS(parse_infer("P(x) & P(x,y)"), DomainError);  // inconsistent
}

TEST_CASE("free_vars and check_against") {
  Signature sig = pq_sig();
  Formula f = parse("forall x. (R(x,y) -> exists z. R(z,w))", sig);
  CHECK(free_vars(f) == std::set<std::string>{"y", "w"});
  CHECK(free_vars(parse("exists x. P(x)", sig)).empty());
  CHECK_THROWS_AS(check_against(Signature({{"P", 1}}, false), atom("P", {"x", "y"})),
                  DomainError);
}

TEST_CASE("substitute_vars refuses capture") {
  Signature sig = pq_sig();
  Formula f = parse("exists y. R(x,y)", sig);
  // x := y would be captured by the binder
  CHECK_THROWS_AS(substitute_vars(f, {{"x", "y"}}), DomainError);
  Formula ok = substitute_vars(f, {{"x", "z"}});
  CHECK(render(ok) == "exists y. R(z,y)");
}

TEST_CASE("alpha_normalize renames binders in order") {
  Signature sig = pq_sig();
  Formula f = parse("exists a. forall b. (R(a,b) & (exists c. R(c,a)))", sig);
  CHECK(render(alpha_normalize(f)) ==
        "exists v0. forall v1. (R(v0,v1) & (exists v2. R(v2,v0)))");
  // free occurrences are untouched; normalized names skip free names
  Formula g = parse("exists a. R(a,v0)", sig);
  CHECK(render(alpha_normalize(g)) == "exists v1. R(v1,v0)");
  // shadowing is resolved
  Formula h = parse("exists x. (P(x) & (exists x. Q(x)))", sig);
  CHECK(render(alpha_normalize(h)) ==
        "exists v0. (P(v0) & (exists v1. Q(v1)))");
}

TEST_CASE("parse respects shadowing semantics") {
  // innermost binder wins: exists x.(P(x) & exists x. Q(x)) on P={0},Q={1}
  Signature sig({{"P", 1}, {"Q", 1}}, false);
  FiniteStructure a("a", sig, 2, {{"P", {{0}}}, {"Q", {{1}}}});
  Formula h = parse("exists x. (P(x) & (exists x. Q(x)))", sig);
  CHECK(eval(a, h) == true);
  CHECK(reference::naive_eval(a, h) == true);
}

// [DERIVED] frozen by hand before implementation: block-merge calculus with
// left preference on ties; alpha-normalized output.
TEST_CASE("to_prenex: frozen outputs") {
  Signature sig = pq_sig();
  auto pre = [&](const std::string& s) { return render(to_prenex(parse(s, sig))); };
  // left operand leads on ties: forall&exists -> forall exists
  CHECK(pre("(forall x. P(x)) & (exists y. Q(y))") ==
        "forall v0. exists v1. (P(v0) & Q(v1))");
  // same-type blocks merge into one block (left vars first)
  CHECK(pre("(exists x. P(x)) & (exists y. Q(y))") ==
        "exists v0. exists v1. (P(v0) & Q(v1))");
  // negation flips the prefix
  CHECK(pre("!(exists x. forall y. R(x,y))") ==
        "forall v0. exists v1. !R(v0,v1)");
  // implication: antecedent prefix flips, matrix keeps the implication
  CHECK(pre("forall x. (P(x) -> (exists y. (Q(y) & R(x,y))))") ==
        "forall v0. exists v1. (P(v0) -> (Q(v1) & R(v0,v1)))");
  CHECK(pre("(forall x. P(x)) -> (exists y. Q(y))") ==
        "exists v0. exists v1. (P(v0) -> Q(v1))");
  // shadowed binders are renamed apart
  CHECK(pre("exists x. (P(x) & (exists x. Q(x)))") ==
        "exists v0. exists v1. (P(v0) & Q(v1))");
  // two Sigma_2 operands interleave to Sigma_2 (not Sigma_4)
  CHECK(pre("(exists a. forall b. R(a,b)) & (exists c. forall d. R(c,d))") ==
        "exists v0. exists v1. forall v2. forall v3. (R(v0,v2) & R(v1,v3))");
}

// [DERIVED] hand block-counts frozen before implementation.
TEST_CASE("classify: frozen table") {
  struct Item { const char* text; const char* cls; };
  const std::vector<Item> table = {
      {"exists x. forall y. (R(x,y) | !R(y,x))", "Sigma 2"},  // paper's example
      {"forall x. exists y. R(x,y)", "Pi 2"},
      {"R(x,y)", "Both 0"},
      {"true", "Both 0"},
      {"exists x. exists y. R(x,y)", "Sigma 1"},
      {"!(exists x. forall y. R(x,y))", "Pi 2"},
      {"(forall x. P(x)) & (exists y. Q(y))", "Pi 2"},
      {"(exists x. P(x)) & (exists y. Q(y))", "Sigma 1"},
      {"exists x. (P(x) & (forall y. Q(y)))", "Sigma 2"},
      {"forall x. (P(x) -> (exists y. (Q(y) & R(x,y))))", "Pi 2"},
      {"!!(exists x. P(x))", "Sigma 1"},
      {"exists x. true", "Sigma 1"},  // vacuous quantifiers still count
      {"(forall x. P(x)) -> (exists y. Q(y))", "Sigma 1"},
      {"forall x. forall y. exists z. (R(x,z) & R(z,y))", "Pi 2"},
      {"exists a. forall b. exists c. forall d. R(a,d)", "Sigma 4"},
  };
  Signature sig = pq_sig();
  for (const auto& it : table) {
    CAPTURE(it.text);
    CHECK(to_string(classify(parse(it.text, sig))) == it.cls);
  }
}

TEST_CASE("subsumed_by order") {
  auto S = [](int k) { return PrenexClass{ClassKind::Sigma, k}; };
  auto P = [](int k) { return PrenexClass{ClassKind::Pi, k}; };
  PrenexClass B0{ClassKind::Both, 0};
  CHECK(subsumed_by(S(1), S(2)));
  CHECK(subsumed_by(S(1), P(2)));
  CHECK(subsumed_by(P(1), S(2)));
  CHECK(subsumed_by(S(2), S(2)));
  CHECK_FALSE(subsumed_by(S(2), P(2)));
  CHECK_FALSE(subsumed_by(P(2), S(2)));
  CHECK_FALSE(subsumed_by(S(3), S(2)));
  CHECK(subsumed_by(B0, S(1)));
  CHECK(subsumed_by(B0, B0));
  CHECK_FALSE(subsumed_by(S(1), B0));
}

TEST_CASE("relativize guards quantifiers") {
  Signature sig({{"D", 1}, {"R", 2}}, false);
  Formula f = parse("exists x. forall y. R(x,y)", sig);
  Formula dom = parse("D(x)", sig);
  Formula rel = relativize(f, dom, "x", {});
  CHECK(render(rel) ==
        "exists x. (D(x) & (forall y. (D(y) -> R(x,y))))");
  // capture refusal: dom's free parameter collides with a binder of f
  Formula domp = parse("R(x,p)", sig);
  Formula fp = parse("exists p. R(p,p)", sig);
  CHECK_THROWS_AS(relativize(fp, domp, "x", {"p"}), DomainError);
}

// Property: prenexing preserves satisfaction on every structure of size <= 3.
TEST_CASE("property: to_prenex is satisfaction-preserving") {
  Signature sig({{"P", 1}, {"R", 2}}, true);
  Rng rng(0xfeedbeef);
  int checked = 0;
  for (int i = 0; i < 120; ++i) {
    Formula f = testsupport::random_formula(rng, sig, {}, 3);
    Formula p = to_prenex(f);
    for (int n = 1; n <= 3; ++n) {
      FiniteStructure a = testsupport::random_structure(rng, sig, n, 35);
      CAPTURE(render(f));
      CAPTURE(render(p));
      bool lhs = eval(a, f);
      CHECK(lhs == eval(a, p));
      CHECK(lhs == reference::naive_eval(a, f));  // oracle agreement en route
      ++checked;
    }
  }
  CHECK(checked == 360);
}

TEST_CASE("property: classify fixpoint, duality, rescan minimality") {
  Signature sig({{"P", 1}, {"R", 2}}, true);
  Rng rng(0xc1a551f1);
  for (int i = 0; i < 200; ++i) {
    Formula f = testsupport::random_formula(rng, sig, {"x0"}, 3);
    PrenexClass c = classify(f);
    CAPTURE(render(f));
    // fixpoint on the prenex form
    CHECK(classify(to_prenex(f)) == c);
    // duality
    PrenexClass d = classify(lnot(f));
    CHECK(d.k == c.k);
    if (c.kind == ClassKind::Both) CHECK(d.kind == ClassKind::Both);
    if (c.kind == ClassKind::Sigma) CHECK(d.kind == ClassKind::Pi);
    if (c.kind == ClassKind::Pi) CHECK(d.kind == ClassKind::Sigma);
    // the class is exactly what a rescan of the rendered string yields
    CHECK(scan_rendered_class(render(to_prenex(f))) == c);
  }
}

TEST_CASE("property: parse(render(f)) is f") {
  Signature sig({{"P", 1}, {"R", 2}}, true);
  Rng rng(0x9e3779b9);
  for (int i = 0; i < 300; ++i) {
    Formula f = testsupport::random_formula(rng, sig, {"x0"}, 4);
    Formula back = parse(render(f), sig);
    CHECK(back == f);
    // and hence equality after alpha-normalization as well
    CHECK(alpha_normalize(back) == alpha_normalize(f));
  }
}

// [DERIVED] frozen by hand: A = {0,1}, R = {(0,1)}.
TEST_CASE("eval: frozen examples") {
  Signature sig({{"R", 2}}, true);
  FiniteStructure a("a", sig, 2, {{"R", {{0, 1}}}});
  CHECK(eval(a, parse("exists x. forall y. !R(y,x)", sig)) == true);   // x=0
  CHECK(eval(a, parse("forall x. exists y. R(x,y)", sig)) == false);   // x=1 stuck
  CHECK(eval(a, parse("exists x. exists y. !(x = y)", sig)) == true);
  FiniteStructure one("one", sig, 1, {{"R", {}}});
  CHECK(eval(one, parse("exists x. exists y. !(x = y)", sig)) == false);
  CHECK(eval(a, parse("R(x,y)", sig), {{"x", 0}, {"y", 1}}) == true);
  CHECK_THROWS_AS(eval(a, parse("R(x,y)", sig), {{"x", 0}}), DomainError);
}
