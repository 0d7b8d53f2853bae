#include "foil/structure.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "foil/errors.hpp"

namespace foil {

namespace {

// Flat membership tables are precomputed up to this many cells per relation.
constexpr long long kFlatCells = 1 << 24;

long long flat_index(const std::vector<int>& tuple, int n) {
  long long idx = 0;
  for (int v : tuple) idx = idx * n + v;
  return idx;
}

}  // namespace

FiniteStructure::FiniteStructure(
    std::string name, Signature sig, int size,
    std::map<std::string, std::set<std::vector<int>>> tables)
    : name_(std::move(name)), sig_(std::move(sig)), size_(size),
      tables_(std::move(tables)) {
  if (size_ < 1) throw DomainError("structure size must be >= 1");
  for (const auto& [rel, tuples] : tables_) {
    auto ar = sig_.arity_of(rel);
    if (!ar) throw DomainError("unknown relation " + rel);
    for (const auto& t : tuples) {
      if (static_cast<int>(t.size()) != *ar)
        throw DomainError("arity mismatch in relation " + rel);
      for (int v : t)
        if (v < 0 || v >= size_)
          throw DomainError("element out of range in relation " + rel);
    }
  }
  // every signature relation gets a (possibly empty) table
  for (const auto& r : sig_.relations()) tables_[r.name];
  for (const auto& r : sig_.relations()) {
    long long cells = 1;
    for (int i = 0; i < r.arity && cells <= kFlatCells; ++i) cells *= size_;
    if (cells > kFlatCells) continue;
    std::vector<char> flat(static_cast<size_t>(cells), 0);
    for (const auto& t : tables_[r.name])
      flat[static_cast<size_t>(flat_index(t, size_))] = 1;
    flat_[r.name] = std::move(flat);
  }
}

const std::set<std::vector<int>>& FiniteStructure::tuples(
    const std::string& rel) const {
  auto it = tables_.find(rel);
  if (it == tables_.end()) throw DomainError("unknown relation " + rel);
  return it->second;
}

bool FiniteStructure::holds(const std::string& rel,
                            const std::vector<int>& tuple) const {
  auto f = flat_.find(rel);
  if (f != flat_.end())
    return f->second[static_cast<size_t>(flat_index(tuple, size_))] != 0;
  return tuples(rel).count(tuple) != 0;
}

bool FiniteStructure::operator==(const FiniteStructure& other) const {
  // the name is a label, not part of the identity
  return sig_ == other.sig_ && size_ == other.size_ &&
         tables_ == other.tables_;
}

FiniteStructure read_structure(std::istream& in) {
  std::string name;
  int size = -1;
  std::vector<Signature::Rel> rels;
  std::map<std::string, std::set<std::vector<int>>> tables;
  std::string current_rel;
  int current_arity = 0;
  bool ended = false;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "structure") {
      if (!(ls >> name)) throw ParseError("structure needs a name", lineno, 1);
    } else if (word == "universe") {
      if (!(ls >> size)) throw ParseError("universe needs a size", lineno, 1);
    } else if (word == "rel") {
      std::string rname;
      int arity;
      if (!(ls >> rname >> arity))
        throw ParseError("rel needs a name and arity", lineno, 1);
      rels.push_back({rname, arity});
      tables[rname];
      current_rel = rname;
      current_arity = arity;
    } else if (word == "end") {
      ended = true;
      break;
    } else {
      // a tuple line of the current relation
      if (current_rel.empty())
        throw ParseError("tuple line outside a rel section", lineno, 1);
      std::vector<int> t;
      std::istringstream ts(line);
      int v;
      while (ts >> v) t.push_back(v);
      if (static_cast<int>(t.size()) != current_arity)
        throw ParseError("tuple arity mismatch", lineno, 1);
      tables[current_rel].insert(t);
    }
  }
  if (!ended) throw ParseError("missing 'end'", lineno + 1, 1);
  if (name.empty()) throw ParseError("missing 'structure' header", 1, 1);
  if (size < 0) throw ParseError("missing 'universe'", 1, 1);
  // loaded structures admit equality atoms
  return FiniteStructure(name, Signature(rels, true), size, tables);
}

FiniteStructure read_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return read_structure(in);
}

std::string write_structure(const FiniteStructure& a) {
  std::string out = "structure " + a.name() + "\n";
  out += "universe " + std::to_string(a.size()) + "\n";
  for (const auto& r : a.sig().relations()) {
    out += "rel " + r.name + " " + std::to_string(r.arity) + "\n";
    for (const auto& t : a.tuples(r.name)) {
      std::string lt;
      for (int v : t) {
        if (!lt.empty()) lt += ' ';
        lt += std::to_string(v);
      }
      out += lt + "\n";
    }
  }
  out += "end\n";
  return out;
}

namespace {

// Environment-mutating evaluator: one shared variable map, quantifiers
// assign in place and restore on exit; conjunction/disjunction short-circuit
// and quantifier loops exit on the first witness/counterexample.
struct Evaluator {
  const FiniteStructure& a;
  std::map<std::string, int> env;
  std::vector<int> scratch;

  int lookup(const std::string& v) {
    auto it = env.find(v);
    if (it == env.end()) throw DomainError("unassigned variable " + v);
    return it->second;
  }

  bool ev(const Formula& f) {
    switch (f.kind()) {
      case Kind::True:
        return true;
      case Kind::False:
        return false;
      case Kind::Atom: {
        scratch.clear();
        for (const auto& v : f.args()) scratch.push_back(lookup(v));
        return a.holds(f.rel(), scratch);
      }
      case Kind::Equal:
        return lookup(f.args()[0]) == lookup(f.args()[1]);
      case Kind::Not:
        return !ev(f.child());
      case Kind::And:
        return ev(f.left()) && ev(f.right());
      case Kind::Or:
        return ev(f.left()) || ev(f.right());
      case Kind::Implies:
        return !ev(f.left()) || ev(f.right());
      case Kind::Exists:
      case Kind::Forall: {
        bool want = f.kind() == Kind::Exists;
        auto [it, fresh] = env.emplace(f.var(), 0);
        int old = fresh ? 0 : it->second;
        bool result = !want;
        for (int val = 0; val < a.size(); ++val) {
          it->second = val;
          if (ev(f.body()) == want) {
            result = want;
            break;
          }
        }
        if (fresh)
          env.erase(it);
        else
          it->second = old;
        return result;
      }
    }
    throw DomainError("unreachable");
  }
};

}  // namespace

bool eval(const FiniteStructure& a, const Formula& f,
          const std::map<std::string, int>& asg) {
  check_against(a.sig(), f);
  for (const auto& v : free_vars(f)) {
    auto it = asg.find(v);
    if (it == asg.end())
      throw DomainError("free variable " + v + " is unassigned");
    if (it->second < 0 || it->second >= a.size())
      throw DomainError("assignment for " + v + " is out of range");
  }
  Evaluator e{a, asg, {}};
  return e.ev(f);
}

Partition eq_congruence(const FiniteStructure& a) {
  int n = a.size();
  // x ~ y iff swapping x for y in any single argument position of any
  // relation never changes membership.
  auto indistinguishable = [&](int x, int y) {
    for (const auto& r : a.sig().relations()) {
      std::vector<int> t(r.arity, 0);
      for (int pos = 0; pos < r.arity; ++pos) {
        // iterate over all contexts (choices of the remaining arguments)
        std::vector<int> ctx(r.arity - 1, 0);
        while (true) {
          int ci = 0;
          for (int i = 0; i < r.arity; ++i)
            if (i != pos) t[i] = ctx[ci++];
          t[pos] = x;
          bool hx = a.holds(r.name, t);
          t[pos] = y;
          if (hx != a.holds(r.name, t)) return false;
          int i = static_cast<int>(ctx.size()) - 1;
          while (i >= 0 && ++ctx[i] == n) ctx[i--] = 0;
          if (i < 0) break;
        }
      }
    }
    return true;
  };
  Partition out;
  for (int x = 0; x < n; ++x) {
    bool placed = false;
    for (auto& block : out)
      if (indistinguishable(block[0], x)) {
        block.push_back(x);
        placed = true;
        break;
      }
    if (!placed) out.push_back({x});
  }
  return out;  // blocks found in ascending order of smallest element
}

namespace {

void validate_partition(const Partition& p, int n) {
  std::vector<char> seen(n, 0);
  for (const auto& block : p) {
    if (block.empty()) throw DomainError("empty block in partition");
    for (int v : block) {
      if (v < 0 || v >= n) throw DomainError("partition element out of range");
      if (seen[v]) throw DomainError("overlapping blocks in partition");
      seen[v] = 1;
    }
  }
  for (int v = 0; v < n; ++v)
    if (!seen[v]) throw DomainError("partition does not cover the universe");
}

}  // namespace

FiniteStructure quotient(const FiniteStructure& a, const Partition& p) {
  int n = a.size();
  validate_partition(p, n);
  // order blocks by smallest element
  Partition blocks = p;
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& x, const auto& y) { return x[0] < y[0]; });
  std::vector<int> block_of(n, -1);
  for (size_t bi = 0; bi < blocks.size(); ++bi)
    for (int v : blocks[bi]) block_of[v] = static_cast<int>(bi);

  // congruence check: membership must agree with the representative tuple
  for (const auto& r : a.sig().relations()) {
    std::vector<int> t(r.arity, 0);
    while (true) {
      std::vector<int> reptuple(r.arity);
      for (int i = 0; i < r.arity; ++i) reptuple[i] = blocks[block_of[t[i]]][0];
      if (a.holds(r.name, t) != a.holds(r.name, reptuple))
        throw DomainError("partition is not a congruence for " + r.name);
      int i = r.arity - 1;
      while (i >= 0 && ++t[i] == n) t[i--] = 0;
      if (i < 0) break;
    }
  }

  std::map<std::string, std::set<std::vector<int>>> tables;
  for (const auto& r : a.sig().relations()) {
    std::set<std::vector<int>> qt;
    for (const auto& t : a.tuples(r.name)) {
      std::vector<int> q(t.size());
      for (size_t i = 0; i < t.size(); ++i) q[i] = block_of[t[i]];
      qt.insert(q);
    }
    tables[r.name] = qt;
  }
  return FiniteStructure(a.name() + "_q", a.sig(),
                         static_cast<int>(blocks.size()), tables);
}

namespace {

// Per-element occurrence profile: for each relation and argument position,
// how many tuples contain the element there. Invariant under isomorphism.
std::vector<std::vector<int>> profiles(const FiniteStructure& a) {
  std::vector<std::vector<int>> prof(a.size());
  int width = 0;
  for (const auto& r : a.sig().relations()) width += r.arity;
  for (auto& p : prof) p.assign(width, 0);
  int base = 0;
  for (const auto& r : a.sig().relations()) {
    for (const auto& t : a.tuples(r.name))
      for (int i = 0; i < r.arity; ++i) ++prof[t[i]][base + i];
    base += r.arity;
  }
  return prof;
}

struct IsoSearch {
  const FiniteStructure& a;
  const FiniteStructure& b;
  std::vector<int> map_ab;  // a-element -> b-element or -1
  std::vector<char> used_b;
  std::vector<std::vector<int>> prof_a, prof_b;

  bool consistent(int upto) {
    // every tuple fully inside the assigned part must map to a tuple of b,
    // and the image must not contain extra tuples (checked via inverse)
    for (const auto& r : a.sig().relations()) {
      for (const auto& t : a.tuples(r.name)) {
        bool inside = true;
        std::vector<int> img(t.size());
        for (size_t i = 0; i < t.size() && inside; ++i) {
          if (t[i] > upto || map_ab[t[i]] < 0)
            inside = false;
          else
            img[i] = map_ab[t[i]];
        }
        if (inside && !b.holds(r.name, img)) return false;
      }
      for (const auto& t : b.tuples(r.name)) {
        bool inside = true;
        std::vector<int> pre(t.size());
        for (size_t i = 0; i < t.size() && inside; ++i) {
          int src = -1;
          for (int x = 0; x <= upto; ++x)
            if (map_ab[x] == t[i]) {
              src = x;
              break;
            }
          if (src < 0)
            inside = false;
          else
            pre[i] = src;
        }
        if (inside && !a.holds(r.name, pre)) return false;
      }
    }
    return true;
  }

  bool extend(int x) {
    if (x == a.size()) return true;
    for (int y = 0; y < b.size(); ++y) {
      if (used_b[y] || prof_a[x] != prof_b[y]) continue;
      map_ab[x] = y;
      used_b[y] = 1;
      if (consistent(x) && extend(x + 1)) return true;
      map_ab[x] = -1;
      used_b[y] = 0;
    }
    return false;
  }
};

}  // namespace

bool iso_check(const FiniteStructure& a, const FiniteStructure& b) {
  if (a.size() > 12 || b.size() > 12)
    throw BudgetError("iso_check limited to structures of size <= 12");
  if (!(a.sig() == b.sig()) || a.size() != b.size()) return false;
  for (const auto& r : a.sig().relations())
    if (a.tuples(r.name).size() != b.tuples(r.name).size()) return false;
  IsoSearch s{a,
              b,
              std::vector<int>(a.size(), -1),
              std::vector<char>(b.size(), 0),
              profiles(a),
              profiles(b)};
  return s.extend(0);
}

}  // namespace foil
