#include "foil/product.hpp"

#include <algorithm>
#include <mutex>
#include <utility>

#include "foil/errors.hpp"

namespace foil {

std::vector<int> power_tuple(int index, int base, int m) {
  if (base < 1 || m < 1) throw DomainError("power needs base >= 1, m >= 1");
  std::vector<int> t(m, 0);
  for (int i = m - 1; i >= 0; --i) {
    t[i] = index % base;
    index /= base;
  }
  if (index != 0) throw DomainError("power index out of range");
  return t;
}

int power_index(const std::vector<int>& tuple, int base) {
  int idx = 0;
  for (int v : tuple) {
    if (v < 0 || v >= base) throw DomainError("tuple entry out of range");
    idx = idx * base + v;
  }
  return idx;
}

FiniteStructure power(const FiniteStructure& a, int m) {
  if (m < 1) throw DomainError("power needs m >= 1");
  long long size = 1;
  for (int i = 0; i < m; ++i) {
    size *= a.size();
    if (size > 100000) throw BudgetError("power structure too large");
  }
  int n = static_cast<int>(size);
  std::map<std::string, std::set<std::vector<int>>> tables;
  for (const auto& r : a.sig().relations()) {
    std::set<std::vector<int>> tuples;
    // iterate all r.arity-tuples of power elements
    std::vector<int> idx(r.arity, 0);
    std::vector<std::vector<int>> coords(r.arity);
    while (true) {
      for (int i = 0; i < r.arity; ++i) coords[i] = power_tuple(idx[i], a.size(), m);
      bool all = true;
      std::vector<int> point(r.arity);
      for (int c = 0; c < m && all; ++c) {
        for (int i = 0; i < r.arity; ++i) point[i] = coords[i][c];
        all = a.holds(r.name, point);
      }
      if (all) tuples.insert(idx);
      int i = r.arity - 1;
      while (i >= 0 && ++idx[i] == n) idx[i--] = 0;
      if (i < 0) break;
    }
    tables[r.name] = tuples;
  }
  return FiniteStructure(a.name() + "^" + std::to_string(m), a.sig(), n,
                         tables);
}

namespace {

using Clause = std::vector<Formula>;

// Constant-folding connective helpers keep the clause formulas small and make
// complement round trips exact.
Formula fold_and(const Formula& x, const Formula& y) {
  if (x.kind() == Kind::True) return y;
  if (y.kind() == Kind::True) return x;
  if (x.kind() == Kind::False || y.kind() == Kind::False) return f_false();
  if (x == y) return x;
  return land(x, y);
}

Formula fold_not(const Formula& x) {
  if (x.kind() == Kind::True) return f_false();
  if (x.kind() == Kind::False) return f_true();
  if (x.kind() == Kind::Not) return x.child();
  return lnot(x);
}

Formula fold_quant(Kind k, const std::string& var, const Formula& body) {
  if (body.kind() == Kind::True || body.kind() == Kind::False) return body;
  return k == Kind::Exists ? exists(var, body) : forall(var, body);
}

bool clause_dead(const Clause& c) {
  for (const auto& f : c)
    if (f.kind() == Kind::False) return true;
  return false;
}

// Canonical form: drop clauses with a false component, order by the rendered
// component strings and remove duplicates.
std::vector<Clause> canonical(std::vector<Clause> clauses) {
  std::vector<std::pair<std::vector<std::string>, Clause>> keyed;
  for (auto& c : clauses) {
    if (clause_dead(c)) continue;
    std::vector<std::string> key;
    for (const auto& f : c) key.push_back(render(f));
    keyed.push_back({std::move(key), std::move(c)});
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) {
                            return a.first == b.first;
                          }),
              keyed.end());
  std::vector<Clause> out;
  for (auto& [key, c] : keyed) out.push_back(std::move(c));
  return out;
}

// not(OR_j AND_i C_j[i]) re-expanded to DNF through choice functions.
// Built iteratively, one input clause at a time, with each partial clause
// kept as a vector of conjunct-id sets: duplicate conjuncts collapse,
// contradictory branches die, and clauses whose conjunct sets componentwise
// contain another clause's are redundant disjuncts and are dropped. Without
// that pruning the expansion is m^r and blows up on nested universals.
std::vector<Clause> complement(const std::vector<Clause>& clauses, int m) {
  // conjunct interning: one id per distinct rendered formula
  std::map<std::string, int> id_by_render;
  std::vector<Formula> formula_of;
  std::vector<int> negation_of;  // id of the interned negation, -1 if unseen
  auto intern = [&](const Formula& f) {
    std::string key = render(f);
    auto [it, fresh] = id_by_render.emplace(key, formula_of.size());
    if (fresh) {
      formula_of.push_back(f);
      negation_of.push_back(-1);
    }
    return it->second;
  };

  std::vector<std::vector<int>> neg(clauses.size(), std::vector<int>(m, -1));
  std::vector<char> trivial(clauses.size(), 0);
  for (size_t j = 0; j < clauses.size(); ++j)
    for (int i = 0; i < m; ++i) {
      Formula n = fold_not(clauses[j][i]);
      if (n.kind() == Kind::False) continue;  // choosing i cannot satisfy !C_j
      if (n.kind() == Kind::True) {           // !C_j holds outright
        trivial[j] = 1;
        break;
      }
      neg[j][i] = intern(n);
      int other = intern(fold_not(n));
      negation_of[neg[j][i]] = other;
      negation_of[other] = neg[j][i];
    }

  using SetClause = std::vector<std::vector<int>>;  // sorted ids per component
  std::set<SetClause> acc = {SetClause(m)};
  for (size_t j = 0; j < clauses.size(); ++j) {
    if (trivial[j]) continue;
    std::set<SetClause> next;
    for (const SetClause& d : acc) {
      for (int i = 0; i < m; ++i) {
        int x = neg[j][i];
        if (x < 0) continue;
        const std::vector<int>& comp = d[i];
        if (std::binary_search(comp.begin(), comp.end(), negation_of[x]))
          continue;  // component would contain a formula and its negation
        SetClause e = d;
        if (!std::binary_search(comp.begin(), comp.end(), x))
          e[i].insert(std::lower_bound(e[i].begin(), e[i].end(), x), x);
        next.insert(std::move(e));
      }
    }
    // antichain: a clause componentwise containing another is a redundant
    // disjunct (now and after every later extension), so drop it
    acc.clear();
    for (const SetClause& cand : next) {
      bool redundant = false;
      for (const SetClause& other : next) {
        if (&other == &cand) continue;
        bool contains = true;
        for (int i = 0; i < m && contains; ++i)
          contains = std::includes(cand[i].begin(), cand[i].end(),
                                   other[i].begin(), other[i].end());
        if (contains) {
          redundant = true;
          break;
        }
      }
      if (!redundant) acc.insert(cand);
    }
    if (acc.empty()) break;
  }

  std::vector<Clause> out;
  for (const SetClause& d : acc) {
    Clause c(m, f_true());
    for (int i = 0; i < m; ++i) {
      std::vector<int> ids = d[i];
      std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        return render(formula_of[a]) < render(formula_of[b]);
      });
      for (int id : ids) c[i] = fold_and(c[i], formula_of[id]);
    }
    out.push_back(std::move(c));
  }
  return canonical(std::move(out));
}

std::vector<Clause> decompose(const Formula& f, int m) {
  switch (f.kind()) {
    case Kind::True:
      return {Clause(m, f_true())};
    case Kind::False:
      return {};
    case Kind::Atom:
    case Kind::Equal:
      // relations and equality on tuples are coordinatewise
      return {Clause(m, f)};
    case Kind::Not:
      return complement(decompose(f.child(), m), m);
    case Kind::Or: {
      std::vector<Clause> l = decompose(f.left(), m);
      std::vector<Clause> r = decompose(f.right(), m);
      l.insert(l.end(), r.begin(), r.end());
      return canonical(std::move(l));
    }
    case Kind::And: {
      std::vector<Clause> l = decompose(f.left(), m);
      std::vector<Clause> r = decompose(f.right(), m);
      std::vector<Clause> out;
      for (const auto& a : l)
        for (const auto& b : r) {
          Clause c(m, f_true());
          for (int i = 0; i < m; ++i) c[i] = fold_and(a[i], b[i]);
          out.push_back(std::move(c));
        }
      return canonical(std::move(out));
    }
    case Kind::Implies:
      return decompose(lor(lnot(f.left()), f.right()), m);
    case Kind::Exists: {
      // coordinates of a witness tuple are chosen independently
      std::vector<Clause> inner = decompose(f.body(), m);
      for (auto& c : inner)
        for (auto& part : c) part = fold_quant(Kind::Exists, f.var(), part);
      return canonical(std::move(inner));
    }
    case Kind::Forall:
      return decompose(lnot(exists(f.var(), lnot(f.body()))), m);
  }
  throw DomainError("unreachable");
}

}  // namespace

FVDecomposition fv_decompose(const Formula& phi, int k) {
  if (k < 0) throw DomainError("fv_decompose needs k >= 0");
  // decomposition depends only on the formula text and k; cache it so that
  // verifying one formula against many bases pays the expansion cost once
  static std::mutex mu;
  static std::map<std::string, FVDecomposition> cache;
  std::string key = std::to_string(k) + ":" + render(phi);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  FVDecomposition dec;
  dec.components = k + 1;
  dec.clauses = decompose(phi, k + 1);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::move(key), std::move(dec)).first->second;
}

bool fv_holds(const FVDecomposition& dec, const Formula& phi,
              const FiniteStructure& a) {
  int m = dec.components;
  FiniteStructure p = power(a, m);
  std::set<std::string> fvset = free_vars(phi);
  std::vector<std::string> fv(fvset.begin(), fvset.end());

  std::map<std::string, int> asg;
  std::vector<int> idx(fv.size(), 0);
  while (true) {
    for (size_t i = 0; i < fv.size(); ++i) asg[fv[i]] = idx[i];
    bool direct = eval(p, phi, asg);
    bool via = false;
    for (const auto& cl : dec.clauses) {
      bool all = true;
      std::map<std::string, int> proj;
      for (int c = 0; c < m && all; ++c) {
        for (size_t i = 0; i < fv.size(); ++i)
          proj[fv[i]] = power_tuple(idx[i], a.size(), m)[c];
        all = eval(a, cl[c], proj);
      }
      if (all) {
        via = true;
        break;
      }
    }
    if (direct != via) return false;
    int i = static_cast<int>(fv.size()) - 1;
    while (i >= 0 && ++idx[i] == p.size()) idx[i--] = 0;
    if (i < 0) break;
  }
  return true;
}

bool fv_verify(const Formula& phi, int k, const FiniteStructure& a) {
  if (a.size() > 3) throw BudgetError("fv_verify base limited to size <= 3");
  if (k > 2) throw BudgetError("fv_verify limited to k <= 2");
  if (free_vars(phi).size() > 3)
    throw BudgetError("fv_verify limited to <= 3 free variables");
  return fv_holds(fv_decompose(phi, k), phi, a);
}

}  // namespace foil
