#include "foil/prenex.hpp"

#include <algorithm>
#include <set>

#include "foil/errors.hpp"

namespace foil {

std::string to_string(const PrenexClass& c) {
  switch (c.kind) {
    case ClassKind::Sigma:
      return "Sigma " + std::to_string(c.k);
    case ClassKind::Pi:
      return "Pi " + std::to_string(c.k);
    case ClassKind::Both:
      return "Both " + std::to_string(c.k);
  }
  throw DomainError("unreachable");
}

PrenexClass parse_class(const std::string& text) {
  size_t sp = text.find(' ');
  if (sp == std::string::npos) throw DomainError("bad class '" + text + "'");
  std::string kind = text.substr(0, sp);
  int k = 0;
  for (size_t i = sp + 1; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw DomainError("bad class '" + text + "'");
    k = k * 10 + (text[i] - '0');
  }
  if (kind == "Sigma") return {ClassKind::Sigma, k};
  if (kind == "Pi") return {ClassKind::Pi, k};
  if (kind == "Both") return {ClassKind::Both, k};
  throw DomainError("bad class '" + text + "'");
}

bool subsumed_by(const PrenexClass& c, const PrenexClass& bound) {
  if (c.k < bound.k) return true;
  if (c.k > bound.k) return false;
  return c.kind == bound.kind || c.kind == ClassKind::Both;
}

Formula PrenexForm::to_formula() const {
  Formula out = matrix;
  for (auto b = prefix.rbegin(); b != prefix.rend(); ++b)
    for (auto v = b->vars.rbegin(); v != b->vars.rend(); ++v)
      out = b->existential ? exists(*v, out) : forall(*v, out);
  return out;
}

namespace {

using Prefix = std::vector<Block>;

Prefix flip(Prefix p) {
  for (auto& b : p) b.existential = !b.existential;
  return p;
}

// Aligned union: both prefixes share the leading block type; block i takes
// the left operand's variables first. Alternation is strict within each
// operand, so aligned blocks agree in type throughout.
Prefix merge_aligned(const Prefix& l, const Prefix& r) {
  Prefix out;
  size_t n = std::max(l.size(), r.size());
  for (size_t i = 0; i < n; ++i) {
    Block b;
    if (i < l.size()) {
      b = l[i];
      if (i < r.size())
        b.vars.insert(b.vars.end(), r[i].vars.begin(), r[i].vars.end());
    } else {
      b = r[i];
    }
    out.push_back(std::move(b));
  }
  return out;
}

// Shift the right operand one block inward (the left operand leads).
Prefix merge_left_leads(const Prefix& l, const Prefix& r) {
  Prefix out;
  out.push_back(l[0]);
  Prefix rest_l(l.begin() + 1, l.end());
  Prefix tail = merge_aligned(rest_l, r);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

// Blockwise merge minimizing the alternation count; ties prefer the left
// operand's leading block.
Prefix merge(const Prefix& l, const Prefix& r) {
  if (l.empty()) return r;
  if (r.empty()) return l;
  if (l[0].existential == r[0].existential) return merge_aligned(l, r);
  size_t cost_a = std::max(l.size(), r.size() + 1);  // l leads
  size_t cost_b = std::max(l.size() + 1, r.size());  // r leads
  if (cost_a <= cost_b) return merge_left_leads(l, r);
  // the right operand leads; left variables still come first in shared blocks
  Prefix out;
  out.push_back(r[0]);
  Prefix rest_r(r.begin() + 1, r.end());
  Prefix tail = merge_aligned(l, rest_r);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

struct Raw {
  Prefix prefix;
  Formula matrix;
};

Raw extract(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
    case Kind::Equal:
      return {{}, f};
    case Kind::Not: {
      Raw c = extract(f.child());
      return {flip(std::move(c.prefix)), lnot(c.matrix)};
    }
    case Kind::And: {
      Raw l = extract(f.left());
      Raw r = extract(f.right());
      return {merge(l.prefix, r.prefix), land(l.matrix, r.matrix)};
    }
    case Kind::Or: {
      Raw l = extract(f.left());
      Raw r = extract(f.right());
      return {merge(l.prefix, r.prefix), lor(l.matrix, r.matrix)};
    }
    case Kind::Implies: {
      Raw l = extract(f.left());
      Raw r = extract(f.right());
      return {merge(flip(std::move(l.prefix)), r.prefix),
              implies(l.matrix, r.matrix)};
    }
    case Kind::Exists:
    case Kind::Forall: {
      bool ex = f.kind() == Kind::Exists;
      Raw b = extract(f.body());
      if (!b.prefix.empty() && b.prefix.front().existential == ex) {
        b.prefix.front().vars.insert(b.prefix.front().vars.begin(), f.var());
      } else {
        Block nb{ex, {f.var()}};
        b.prefix.insert(b.prefix.begin(), std::move(nb));
      }
      return b;
    }
  }
  throw DomainError("unreachable");
}

}  // namespace

PrenexForm to_prenex_form(const Formula& f) {
  std::set<std::string> taken = free_vars(f);
  Raw raw = extract(freshen_bound(f, taken));
  PrenexForm built{raw.prefix, raw.matrix};
  Formula norm = alpha_normalize(built.to_formula());
  // re-read the normalized names back into the computed block structure
  PrenexForm out;
  Formula cur = norm;
  for (const Block& b : built.prefix) {
    Block nb{b.existential, {}};
    for (size_t i = 0; i < b.vars.size(); ++i) {
      nb.vars.push_back(cur.var());
      cur = cur.body();
    }
    out.prefix.push_back(std::move(nb));
  }
  out.matrix = cur;
  return out;
}

Formula to_prenex(const Formula& f) { return to_prenex_form(f).to_formula(); }

PrenexClass classify(const Formula& f) {
  PrenexForm p = to_prenex_form(f);
  if (p.prefix.empty()) return {ClassKind::Both, 0};
  return {p.prefix.front().existential ? ClassKind::Sigma : ClassKind::Pi,
          static_cast<int>(p.prefix.size())};
}

namespace {

bool quantifier_free(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
    case Kind::Equal:
      return true;
    case Kind::Not:
      return quantifier_free(f.child());
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      return quantifier_free(f.left()) && quantifier_free(f.right());
    case Kind::Exists:
    case Kind::Forall:
      return false;
  }
  return false;
}

}  // namespace

bool is_prenex(const Formula& f) {
  Formula cur = f;
  while (cur.is_quantifier()) cur = cur.body();
  return quantifier_free(cur);
}

}  // namespace foil
