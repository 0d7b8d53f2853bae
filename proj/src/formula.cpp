#include "foil/formula.hpp"

#include <utility>

#include "foil/errors.hpp"

namespace foil {

struct Formula::Node {
  Kind kind;
  std::string name;               // Atom: relation; Exists/Forall: variable
  std::vector<std::string> args;  // Atom arguments; Equal stores {a, b}
  Formula a, b;                   // Not/quantifier use a; binaries use a, b
};

namespace {

const Formula::Node& deref(const std::shared_ptr<const Formula::Node>& n) {
  if (!n) throw DomainError("empty formula handle");
  return *n;
}

}  // namespace

Formula make_node(Formula::Node&& n) {
  return Formula(std::make_shared<const Formula::Node>(std::move(n)));
}

Kind Formula::kind() const { return deref(node_).kind; }

bool Formula::is_quantifier() const {
  Kind k = kind();
  return k == Kind::Exists || k == Kind::Forall;
}

bool Formula::is_binary() const {
  Kind k = kind();
  return k == Kind::And || k == Kind::Or || k == Kind::Implies;
}

const std::string& Formula::rel() const {
  const Node& n = deref(node_);
  if (n.kind != Kind::Atom) throw DomainError("rel(): not an atom");
  return n.name;
}

const std::vector<std::string>& Formula::args() const {
  const Node& n = deref(node_);
  if (n.kind != Kind::Atom && n.kind != Kind::Equal)
    throw DomainError("args(): not an atom or equality");
  return n.args;
}

const Formula& Formula::child() const {
  const Node& n = deref(node_);
  if (n.kind != Kind::Not) throw DomainError("child(): not a negation");
  return n.a;
}

const Formula& Formula::left() const {
  const Node& n = deref(node_);
  if (n.kind != Kind::And && n.kind != Kind::Or && n.kind != Kind::Implies)
    throw DomainError("left(): not a binary connective");
  return n.a;
}

const Formula& Formula::right() const {
  const Node& n = deref(node_);
  if (n.kind != Kind::And && n.kind != Kind::Or && n.kind != Kind::Implies)
    throw DomainError("right(): not a binary connective");
  return n.b;
}

const std::string& Formula::var() const {
  const Node& n = deref(node_);
  if (n.kind != Kind::Exists && n.kind != Kind::Forall)
    throw DomainError("var(): not a quantifier");
  return n.name;
}

const Formula& Formula::body() const {
  const Node& n = deref(node_);
  if (n.kind != Kind::Exists && n.kind != Kind::Forall)
    throw DomainError("body(): not a quantifier");
  return n.a;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  const Node& x = *node_;
  const Node& y = *other.node_;
  if (x.kind != y.kind || x.name != y.name || x.args != y.args) return false;
  if (static_cast<bool>(x.a) != static_cast<bool>(y.a)) return false;
  if (static_cast<bool>(x.b) != static_cast<bool>(y.b)) return false;
  if (x.a && !(x.a == y.a)) return false;
  if (x.b && !(x.b == y.b)) return false;
  return true;
}

Formula f_true() { return make_node({Kind::True}); }
Formula f_false() { return make_node({Kind::False}); }

Formula atom(const std::string& rel, const std::vector<std::string>& args) {
  if (args.empty()) throw DomainError("atom " + rel + " needs arguments");
  Formula::Node n{Kind::Atom};
  n.name = rel;
  n.args = args;
  return make_node(std::move(n));
}

Formula equal(const std::string& a, const std::string& b) {
  Formula::Node n{Kind::Equal};
  n.args = {a, b};
  return make_node(std::move(n));
}

Formula lnot(const Formula& f) {
  Formula::Node n{Kind::Not};
  n.a = f;
  return make_node(std::move(n));
}

namespace {
Formula binary(Kind k, const Formula& a, const Formula& b) {
  Formula::Node n{k};
  n.a = a;
  n.b = b;
  return make_node(std::move(n));
}
Formula quantifier(Kind k, const std::string& var, const Formula& body) {
  Formula::Node n{k};
  n.name = var;
  n.a = body;
  return make_node(std::move(n));
}
}  // namespace

Formula land(const Formula& a, const Formula& b) { return binary(Kind::And, a, b); }
Formula lor(const Formula& a, const Formula& b) { return binary(Kind::Or, a, b); }
Formula implies(const Formula& a, const Formula& b) {
  return binary(Kind::Implies, a, b);
}
Formula exists(const std::string& var, const Formula& body) {
  return quantifier(Kind::Exists, var, body);
}
Formula forall(const std::string& var, const Formula& body) {
  return quantifier(Kind::Forall, var, body);
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return;
    case Kind::Atom:
    case Kind::Equal:
      for (const auto& v : f.args())
        if (!bound.count(v)) out.insert(v);
      return;
    case Kind::Not:
      collect_free(f.child(), bound, out);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
    case Kind::Exists:
    case Kind::Forall: {
      bool inserted = bound.insert(f.var()).second;
      collect_free(f.body(), bound, out);
      if (inserted) bound.erase(f.var());
      return;
    }
  }
}

void collect_all(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return;
    case Kind::Atom:
    case Kind::Equal:
      out.insert(f.args().begin(), f.args().end());
      return;
    case Kind::Not:
      collect_all(f.child(), out);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      collect_all(f.left(), out);
      collect_all(f.right(), out);
      return;
    case Kind::Exists:
    case Kind::Forall:
      out.insert(f.var());
      collect_all(f.body(), out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  collect_all(f, out);
  return out;
}

namespace {

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::True:
      out += "true";
      return;
    case Kind::False:
      out += "false";
      return;
    case Kind::Atom: {
      out += f.rel();
      out += '(';
      const auto& a = f.args();
      for (size_t i = 0; i < a.size(); ++i) {
        if (i) out += ',';
        out += a[i];
      }
      out += ')';
      return;
    }
    case Kind::Equal:
      out += f.args()[0];
      out += " = ";
      out += f.args()[1];
      return;
    case Kind::Not:
      out += '!';
      if (f.child().is_quantifier()) {
        out += '(';
        render_into(f.child(), out);
        out += ')';
      } else {
        render_into(f.child(), out);  // binaries parenthesize themselves
      }
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies: {
      const char* op = f.kind() == Kind::And   ? " & "
                       : f.kind() == Kind::Or  ? " | "
                                               : " -> ";
      out += '(';
      auto operand = [&out](const Formula& g) {
        if (g.is_quantifier()) {
          out += '(';
          render_into(g, out);
          out += ')';
        } else {
          render_into(g, out);
        }
      };
      operand(f.left());
      out += op;
      operand(f.right());
      out += ')';
      return;
    }
    case Kind::Exists:
    case Kind::Forall:
      out += f.kind() == Kind::Exists ? "exists " : "forall ";
      out += f.var();
      out += ". ";
      render_into(f.body(), out);
      return;
  }
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

void check_against(const Signature& sig, const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return;
    case Kind::Atom: {
      auto ar = sig.arity_of(f.rel());
      if (!ar) throw DomainError("unknown relation " + f.rel());
      if (*ar != static_cast<int>(f.args().size()))
        throw DomainError("relation " + f.rel() + " expects " +
                          std::to_string(*ar) + " arguments, got " +
                          std::to_string(f.args().size()));
      return;
    }
    case Kind::Equal:
      if (!sig.has_equality())
        throw DomainError("equality atoms are not admitted by the signature");
      return;
    case Kind::Not:
      check_against(sig, f.child());
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      check_against(sig, f.left());
      check_against(sig, f.right());
      return;
    case Kind::Exists:
    case Kind::Forall:
      check_against(sig, f.body());
      return;
  }
}

namespace {

Formula substitute_rec(const Formula& f,
                       const std::map<std::string, std::string>& repl) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::Atom:
    case Kind::Equal: {
      std::vector<std::string> args = f.args();
      bool changed = false;
      for (auto& v : args) {
        auto it = repl.find(v);
        if (it != repl.end()) {
          v = it->second;
          changed = true;
        }
      }
      if (!changed) return f;
      return f.kind() == Kind::Atom ? atom(f.rel(), args)
                                    : equal(args[0], args[1]);
    }
    case Kind::Not:
      return lnot(substitute_rec(f.child(), repl));
    case Kind::And:
      return land(substitute_rec(f.left(), repl),
                  substitute_rec(f.right(), repl));
    case Kind::Or:
      return lor(substitute_rec(f.left(), repl),
                 substitute_rec(f.right(), repl));
    case Kind::Implies:
      return implies(substitute_rec(f.left(), repl),
                     substitute_rec(f.right(), repl));
    case Kind::Exists:
    case Kind::Forall: {
      std::map<std::string, std::string> inner = repl;
      inner.erase(f.var());  // bound occurrences are untouched
      for (const auto& [from, to] : inner)
        if (to == f.var() && free_vars(f.body()).count(from))
          throw DomainError("substitution would capture " + from + " under " +
                            f.var());
      Formula b = substitute_rec(f.body(), inner);
      return f.kind() == Kind::Exists ? exists(f.var(), b) : forall(f.var(), b);
    }
  }
  throw DomainError("unreachable");
}

}  // namespace

Formula substitute_vars(const Formula& f,
                        const std::map<std::string, std::string>& repl) {
  return substitute_rec(f, repl);
}

namespace {

struct AlphaState {
  const std::set<std::string>* skip;  // names free in the input
  int next = 0;
  std::string fresh() {
    while (true) {
      std::string cand = "v" + std::to_string(next++);
      if (!skip->count(cand)) return cand;
    }
  }
};

Formula alpha_rec(const Formula& f, AlphaState& st,
                  std::map<std::string, std::string>& env) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::Atom:
    case Kind::Equal: {
      std::vector<std::string> args = f.args();
      for (auto& v : args) {
        auto it = env.find(v);
        if (it != env.end()) v = it->second;
      }
      return f.kind() == Kind::Atom ? atom(f.rel(), args)
                                    : equal(args[0], args[1]);
    }
    case Kind::Not:
      return lnot(alpha_rec(f.child(), st, env));
    case Kind::And:
      // left before right: binder numbering is left-to-right
      {
        Formula l = alpha_rec(f.left(), st, env);
        return land(l, alpha_rec(f.right(), st, env));
      }
    case Kind::Or: {
      Formula l = alpha_rec(f.left(), st, env);
      return lor(l, alpha_rec(f.right(), st, env));
    }
    case Kind::Implies: {
      Formula l = alpha_rec(f.left(), st, env);
      return implies(l, alpha_rec(f.right(), st, env));
    }
    case Kind::Exists:
    case Kind::Forall: {
      std::string nv = st.fresh();
      auto it = env.find(f.var());
      bool had = it != env.end();
      std::string old;
      if (had) old = it->second;
      env[f.var()] = nv;
      Formula b = alpha_rec(f.body(), st, env);
      if (had)
        env[f.var()] = old;
      else
        env.erase(f.var());
      return f.kind() == Kind::Exists ? exists(nv, b) : forall(nv, b);
    }
  }
  throw DomainError("unreachable");
}

}  // namespace

Formula alpha_normalize(const Formula& f) {
  std::set<std::string> skip = free_vars(f);
  AlphaState st{&skip};
  std::map<std::string, std::string> env;
  return alpha_rec(f, st, env);
}

namespace {

struct FreshState {
  std::set<std::string>* taken;
  int next = 0;
  std::string fresh() {
    while (true) {
      std::string cand = "t" + std::to_string(next++);
      if (taken->insert(cand).second) return cand;
    }
  }
};

Formula freshen_rec(const Formula& f, FreshState& st,
                    std::map<std::string, std::string>& env) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::Atom:
    case Kind::Equal: {
      std::vector<std::string> args = f.args();
      for (auto& v : args) {
        auto it = env.find(v);
        if (it != env.end()) v = it->second;
      }
      return f.kind() == Kind::Atom ? atom(f.rel(), args)
                                    : equal(args[0], args[1]);
    }
    case Kind::Not:
      return lnot(freshen_rec(f.child(), st, env));
    case Kind::And: {
      Formula l = freshen_rec(f.left(), st, env);
      return land(l, freshen_rec(f.right(), st, env));
    }
    case Kind::Or: {
      Formula l = freshen_rec(f.left(), st, env);
      return lor(l, freshen_rec(f.right(), st, env));
    }
    case Kind::Implies: {
      Formula l = freshen_rec(f.left(), st, env);
      return implies(l, freshen_rec(f.right(), st, env));
    }
    case Kind::Exists:
    case Kind::Forall: {
      std::string nv = st.fresh();
      auto it = env.find(f.var());
      bool had = it != env.end();
      std::string old;
      if (had) old = it->second;
      env[f.var()] = nv;
      Formula b = freshen_rec(f.body(), st, env);
      if (had)
        env[f.var()] = old;
      else
        env.erase(f.var());
      return f.kind() == Kind::Exists ? exists(nv, b) : forall(nv, b);
    }
  }
  throw DomainError("unreachable");
}

}  // namespace

Formula freshen_bound(const Formula& f, std::set<std::string>& taken) {
  // never reuse a name occurring anywhere in f either
  std::set<std::string> avoid = all_vars(f);
  std::set<std::string> pool = taken;
  pool.insert(avoid.begin(), avoid.end());
  FreshState st{&pool};
  std::map<std::string, std::string> env;
  Formula out = freshen_rec(f, st, env);
  // report the names actually chosen
  for (const auto& name : pool)
    if (!taken.count(name) && !avoid.count(name)) taken.insert(name);
  return out;
}

namespace {

Formula nnf_pos(const Formula& f);

Formula nnf_neg(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
      return f_false();
    case Kind::False:
      return f_true();
    case Kind::Atom:
    case Kind::Equal:
      return lnot(f);
    case Kind::Not:
      return nnf_pos(f.child());
    case Kind::And:
      return lor(nnf_neg(f.left()), nnf_neg(f.right()));
    case Kind::Or:
      return land(nnf_neg(f.left()), nnf_neg(f.right()));
    case Kind::Implies:
      return land(nnf_pos(f.left()), nnf_neg(f.right()));
    case Kind::Exists:
      return forall(f.var(), nnf_neg(f.body()));
    case Kind::Forall:
      return exists(f.var(), nnf_neg(f.body()));
  }
  throw DomainError("unreachable");
}

Formula nnf_pos(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
    case Kind::Equal:
      return f;
    case Kind::Not:
      return nnf_neg(f.child());
    case Kind::And:
      return land(nnf_pos(f.left()), nnf_pos(f.right()));
    case Kind::Or:
      return lor(nnf_pos(f.left()), nnf_pos(f.right()));
    case Kind::Implies:
      return lor(nnf_neg(f.left()), nnf_pos(f.right()));
    case Kind::Exists:
      return exists(f.var(), nnf_pos(f.body()));
    case Kind::Forall:
      return forall(f.var(), nnf_pos(f.body()));
  }
  throw DomainError("unreachable");
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf_pos(f); }

Formula relativize(const Formula& f, const Formula& dom,
                   const std::string& dom_var,
                   const std::vector<std::string>& params) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
    case Kind::Equal:
      return f;
    case Kind::Not:
      return lnot(relativize(f.child(), dom, dom_var, params));
    case Kind::And:
      return land(relativize(f.left(), dom, dom_var, params),
                  relativize(f.right(), dom, dom_var, params));
    case Kind::Or:
      return lor(relativize(f.left(), dom, dom_var, params),
                 relativize(f.right(), dom, dom_var, params));
    case Kind::Implies:
      return implies(relativize(f.left(), dom, dom_var, params),
                     relativize(f.right(), dom, dom_var, params));
    case Kind::Exists:
    case Kind::Forall: {
      // A binder that shadows a free variable of dom (other than dom_var)
      // would capture it in the guard; the caller must alpha-rename first.
      std::set<std::string> outside = free_vars(dom);
      outside.erase(dom_var);
      for (const auto& p : params) outside.insert(p);
      if (outside.count(f.var()))
        throw DomainError("relativization would capture '" + f.var() + "'");
      Formula guard = substitute_vars(dom, {{dom_var, f.var()}});
      Formula b = relativize(f.body(), dom, dom_var, params);
      return f.kind() == Kind::Exists ? exists(f.var(), land(guard, b))
                                      : forall(f.var(), implies(guard, b));
    }
  }
  throw DomainError("unreachable");
}

}  // namespace foil
