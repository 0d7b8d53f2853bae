#include "foil/parse.hpp"

#include <cctype>
#include <map>

#include "foil/errors.hpp"

namespace foil {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct Parser {
  const std::string& text;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Parser(const std::string& t) : text(t) {}

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, line, col);
  }

  void advance(size_t n) {
    for (size_t i = 0; i < n && pos < text.size(); ++i, ++pos) {
      if (text[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  }

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      advance(1);
  }

  bool peek(const std::string& tok) {
    skip_ws();
    if (text.compare(pos, tok.size(), tok) != 0) return false;
    // keywords must not be a prefix of a longer word
    if (std::isalpha(static_cast<unsigned char>(tok[0]))) {
      size_t after = pos + tok.size();
      if (after < text.size() && is_word_char(text[after])) return false;
    }
    return true;
  }

  bool eat(const std::string& tok) {
    if (!peek(tok)) return false;
    advance(tok.size());
    return true;
  }

  void expect(const std::string& tok) {
    if (!eat(tok)) fail("expected '" + tok + "'");
  }

  std::string word() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && is_word_char(text[pos])) advance(1);
    return text.substr(start, pos - start);
  }

  bool at_word_start(bool upper) {
    skip_ws();
    if (pos >= text.size()) return false;
    char c = text[pos];
    return upper ? (c >= 'A' && c <= 'Z') : (c >= 'a' && c <= 'z');
  }

  std::string variable() {
    if (!at_word_start(false)) fail("expected a variable");
    std::string v = word();
    if (v == "forall" || v == "exists" || v == "true" || v == "false")
      fail("keyword '" + v + "' cannot be used as a variable");
    return v;
  }

  Formula formula() {
    if (peek("forall") || peek("exists")) {
      bool fa = eat("forall");
      if (!fa) expect("exists");
      std::string v = variable();
      expect(".");
      Formula b = formula();
      return fa ? forall(v, b) : exists(v, b);
    }
    return impl();
  }

  Formula impl() {
    Formula l = disj();
    // right-associative; the consequent runs to the end of the formula, so a
    // quantifier is unambiguous there (unlike after '&' or '|')
    if (eat("->")) return implies(l, formula());
    return l;
  }

  Formula disj() {
    Formula l = conj();
    while (eat("|")) l = lor(l, conj());
    return l;
  }

  Formula conj() {
    Formula l = neg();
    while (eat("&")) l = land(l, neg());
    return l;
  }

  Formula neg() {
    if (eat("!")) return lnot(neg());
    if (eat("(")) {
      Formula f = formula();
      expect(")");
      return f;
    }
    return atom_rule();
  }

  Formula atom_rule() {
    if (eat("true")) return f_true();
    if (eat("false")) return f_false();
    if (at_word_start(true)) {
      std::string rel = word();
      expect("(");
      std::vector<std::string> args;
      args.push_back(variable());
      while (eat(",")) args.push_back(variable());
      expect(")");
      return atom(rel, args);
    }
    if (at_word_start(false)) {
      std::string a = variable();
      expect("=");
      std::string b = variable();
      return equal(a, b);
    }
    fail("expected an atom, '!' or '('");
  }

  void done() {
    skip_ws();
    if (pos != text.size()) fail("unexpected trailing input");
  }
};

void infer_signature(const Formula& f, std::map<std::string, int>& arities,
                     bool& eq) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return;
    case Kind::Atom: {
      auto [it, fresh] =
          arities.emplace(f.rel(), static_cast<int>(f.args().size()));
      if (!fresh && it->second != static_cast<int>(f.args().size()))
        throw DomainError("relation " + f.rel() +
                          " used with inconsistent arities");
      return;
    }
    case Kind::Equal:
      eq = true;
      return;
    case Kind::Not:
      infer_signature(f.child(), arities, eq);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      infer_signature(f.left(), arities, eq);
      infer_signature(f.right(), arities, eq);
      return;
    case Kind::Exists:
    case Kind::Forall:
      infer_signature(f.body(), arities, eq);
      return;
  }
}

}  // namespace

Formula parse(const std::string& text, const Signature& sig) {
  Parser p(text);
  Formula f = p.formula();
  p.done();
  check_against(sig, f);
  return f;
}

std::pair<Formula, Signature> parse_infer(const std::string& text) {
  Parser p(text);
  Formula f = p.formula();
  p.done();
  std::map<std::string, int> arities;
  bool eq = false;
  infer_signature(f, arities, eq);
  std::vector<Signature::Rel> rels;
  for (const auto& [name, arity] : arities) rels.push_back({name, arity});
  return {f, Signature(rels, eq)};
}

}  // namespace foil
