#include "foil/codings.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "foil/errors.hpp"
#include "foil/parse.hpp"

namespace foil {

Graph::Graph(int n, std::set<std::pair<int, int>> edges, bool directed)
    : n_(n), directed_(directed) {
  if (n_ < 0) throw DomainError("graph size must be >= 0");
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n_ || b < 0 || b >= n_)
      throw DomainError("edge endpoint out of range");
    if (!directed_ && a == b) throw DomainError("self-loop in undirected graph");
    edges_.insert(directed_ ? std::pair{a, b} : std::pair{std::min(a, b), std::max(a, b)});
  }
}

bool Graph::adjacent(int a, int b) const {
  if (directed_) return edges_.count({a, b}) != 0;
  if (a == b) return false;
  return edges_.count({std::min(a, b), std::max(a, b)}) != 0;
}

Graph read_graph(std::istream& in) {
  int n = -1;
  std::set<std::pair<int, int>> edges;
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
    if (word == "graph") {
      if (!(ls >> n)) throw ParseError("graph needs a size", lineno, 1);
    } else if (word == "edge") {
      int a, b;
      if (!(ls >> a >> b))
        throw ParseError("edge needs two endpoints", lineno, 1);
      edges.insert({a, b});
    } else if (word == "end") {
      ended = true;
      break;
    } else {
      throw ParseError("unknown graph line '" + word + "'", lineno, 1);
    }
  }
  if (!ended) throw ParseError("missing 'end'", lineno + 1, 1);
  if (n < 0) throw ParseError("missing 'graph' header", 1, 1);
  return Graph(n, edges, false);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return read_graph(in);
}

std::string write_graph(const Graph& g) {
  std::string out = "graph " + std::to_string(g.n()) + "\n";
  for (auto [a, b] : g.edges())
    out += "edge " + std::to_string(a) + " " + std::to_string(b) + "\n";
  out += "end\n";
  return out;
}

FiniteStructure graph_structure(const Graph& g) {
  std::set<std::vector<int>> tuples;
  for (auto [a, b] : g.edges()) {
    tuples.insert({a, b});
    if (!g.directed()) tuples.insert({b, a});
  }
  return FiniteStructure("graph", graph_signature(), g.n(), {{"E", tuples}});
}

Poset::Poset(FiniteStructure structure) : structure_(std::move(structure)) {
  auto ar = structure_.sig().arity_of("Le");
  if (!ar || *ar != 2)
    throw DomainError("a poset needs a binary relation Le");
  int n = structure_.size();
  for (int a = 0; a < n; ++a)
    if (!le(a, a)) throw DomainError("Le is not reflexive");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a != b && le(a, b) && le(b, a))
        throw DomainError("Le is not antisymmetric");
      if (!le(a, b)) continue;
      for (int c = 0; c < n; ++c)
        if (le(b, c) && !le(a, c)) throw DomainError("Le is not transitive");
    }
}

bool Poset::le(int a, int b) const { return structure_.holds("Le", {a, b}); }

namespace {

// Reflexive-transitive closure of the strict successor lists in `above`.
Poset closure_poset(const std::string& name, int n,
                    const std::vector<std::vector<int>>& above) {
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a) le[a][a] = 1;
  for (int a = 0; a < n; ++a)
    for (int b : above[a]) le[a][b] = 1;
  for (int m = 0; m < n; ++m)
    for (int a = 0; a < n; ++a) {
      if (!le[a][m]) continue;
      for (int b = 0; b < n; ++b)
        if (le[m][b]) le[a][b] = 1;
    }
  std::set<std::vector<int>> tuples;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (le[a][b]) tuples.insert({a, b});
  return Poset(
      FiniteStructure(name, poset_signature(), n, {{"Le", tuples}}));
}

}  // namespace

Poset encode_graph_as_poset(const Graph& g) {
  if (g.directed())
    throw DomainError("encode_graph_as_poset takes an undirected graph");
  int n = g.n();
  std::vector<std::pair<int, int>> nonedges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!g.adjacent(a, b)) nonedges.push_back({a, b});
  int total = 3 * n + static_cast<int>(g.edges().size()) +
              static_cast<int>(nonedges.size());
  std::vector<std::vector<int>> above(total);
  // private bounds u_x < x < v_x
  for (int x = 0; x < n; ++x) {
    int u = n + 2 * x, v = n + 2 * x + 1;
    above[u].push_back(x);
    above[x].push_back(v);
  }
  // one fresh upper cover per edge, one fresh lower cover per non-edge
  int next = 3 * n;
  for (auto [x, y] : g.edges()) {
    int z = next++;
    above[x].push_back(z);
    above[y].push_back(z);
  }
  for (auto [x, y] : nonedges) {
    int w = next++;
    above[w].push_back(x);
    above[w].push_back(y);
  }
  return closure_poset("enc(" + std::to_string(n) + ")", total, above);
}

Graph orientation_gadget(const Graph& digraph) {
  if (!digraph.directed())
    throw DomainError("orientation_gadget takes a directed graph");
  int n = digraph.n();
  std::set<std::pair<int, int>> edges;
  int next = n;
  for (auto [u, v] : digraph.edges()) {
    int a = next++, b = next++, c = next++;
    edges.insert({u, a});
    edges.insert({a, b});
    edges.insert({b, v});
    edges.insert({a, c});  // pendant marks the source side
  }
  return Graph(next, edges, false);
}

Poset encode_digraph_as_poset(const Graph& digraph) {
  return encode_graph_as_poset(orientation_gadget(digraph));
}

Scheme fpo_scheme() {
  Signature tgt = poset_signature();
  Formula dom = parse(
      "exists u. exists v. ((Le(u,x) & !Le(x,u)) & (Le(x,v) & !Le(v,x)))", tgt);
  Formula rel = parse(
      "exists z. ((!Le(x1,x2) & !Le(x2,x1)) & (Le(x1,z) & Le(x2,z)))", tgt);
  Formula corel = parse(
      "exists w. ((!Le(x1,x2) & !Le(x2,x1)) & (Le(w,x1) & Le(w,x2)))", tgt);
  auto at = [](const Formula& comp, const std::string& a,
               const std::string& b) {
    return substitute_vars(comp, {{"x1", a}, {"x2", b}});
  };
  Formula dom_y = substitute_vars(dom, {{"x", "y"}});
  Formula incomparable =
      land(lnot(atom("Le", {"x", "y"})), lnot(atom("Le", {"y", "x"})));
  Formula correctness =
      land(exists("x", dom),
           forall("x", forall("y", implies(land(land(dom, dom_y), incomparable),
                                           lor(at(rel, "x", "y"),
                                               at(corel, "x", "y"))))));
  return Scheme("fpo", graph_signature(), tgt, {}, dom, std::nullopt,
                {{"E", rel}}, {{"E", corel}}, correctness, 1);
}

namespace {

// Appends a saturated chain of `steps` covers from `from` up to `top` using
// fresh interior elements; `above` grows as needed.
void add_chain(std::vector<std::vector<int>>& above, int from, int top,
               int steps, int& next) {
  int cur = from;
  for (int i = 0; i < steps - 1; ++i) {
    int interior = next++;
    above[cur].push_back(interior);
    cur = interior;
  }
  above[cur].push_back(top);
}

}  // namespace

Poset vn_fragment(int n_max) {
  if (n_max < 0) throw DomainError("vn_fragment needs n_max >= 0");
  int total = n_max + 1;
  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; m <= n_max; ++m) {
      total += 1 + 1 + 2;  // top, 2-chain interior, 3-chain interiors
      if (n + m <= n_max) total += 3;
      if (n * m <= n_max) total += 4;
    }
  std::vector<std::vector<int>> above(total);
  int next = n_max + 1;
  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; m <= n_max; ++m) {
      int top = next++;
      add_chain(above, n, top, 2, next);
      add_chain(above, m, top, 3, next);
      if (n + m <= n_max) add_chain(above, n + m, top, 4, next);
      if (n * m <= n_max) add_chain(above, n * m, top, 5, next);
    }
  if (next != total) throw DomainError("vn_fragment layout miscount");
  Poset p = closure_poset("vn(" + std::to_string(n_max) + ")", total, above);

  // self-check: every saturated minimal-to-maximal chain has length 2..5
  std::vector<char> minimal(total, 1), maximal(total, 1);
  for (int a = 0; a < total; ++a)
    for (int b : above[a]) {
      minimal[b] = 0;
      maximal[a] = 0;
    }
  for (int a = 0; a < total; ++a) {
    if (!minimal[a]) continue;
    // depth-first over cover edges (above holds exactly the covers here)
    std::vector<std::pair<int, int>> stack = {{a, 0}};
    while (!stack.empty()) {
      auto [e, len] = stack.back();
      stack.pop_back();
      if (maximal[e] && (len < 2 || len > 5))
        throw DomainError("vn_fragment self-check failed");
      for (int b : above[e]) stack.push_back({b, len + 1});
    }
  }
  return p;
}

namespace {

std::string other_var(const std::string& avoid1, const std::string& avoid2,
                      std::initializer_list<const char*> pool) {
  for (const char* c : pool)
    if (avoid1 != c && avoid2 != c) return c;
  throw DomainError("no free variable name available");
}

Formula maximal_formula(const std::string& var) {
  std::string w = other_var(var, "", {"w", "u", "v"});
  return forall(w, implies(atom("Le", {var, w}), equal(w, var)));
}

Formula cover_formula(const std::string& a, const std::string& b) {
  std::string z = other_var(a, b, {"z", "u", "v"});
  Formula strict = land(atom("Le", {a, b}), lnot(atom("Le", {b, a})));
  Formula between = land(land(atom("Le", {a, z}), lnot(atom("Le", {z, a}))),
                         land(atom("Le", {z, b}), lnot(atom("Le", {b, z}))));
  return land(strict, lnot(exists(z, between)));
}

}  // namespace

Formula vn_num_formula(const std::string& var) {
  std::string y = other_var(var, "", {"y", "u", "v"});
  return forall(y, implies(atom("Le", {y, var}), equal(y, var)));
}

Formula vn_chain_formula(int cover_steps, const std::string& from,
                         const std::string& to) {
  if (cover_steps < 1) throw DomainError("chain needs >= 1 cover step");
  // guards first: maximality of `to` prunes candidate tops cheaply
  Formula guards = land(maximal_formula(to), vn_num_formula(from));
  std::vector<std::string> interior;
  for (int i = 1; i < cover_steps; ++i)
    interior.push_back("c" + std::to_string(i));
  // innermost-out: exists c1. (cover(from,c1) & exists c2. (... cover(_, to)))
  Formula chain = cover_formula(interior.empty() ? from : interior.back(), to);
  for (int i = cover_steps - 2; i >= 0; --i) {
    const std::string& lo = i == 0 ? from : interior[i - 1];
    chain = exists(interior[i], land(cover_formula(lo, interior[i]), chain));
  }
  return land(guards, chain);
}

Formula vn_plus_formula() {
  return exists("d", land(land(vn_chain_formula(2, "x1", "d"),
                               vn_chain_formula(3, "x2", "d")),
                          vn_chain_formula(4, "x3", "d")));
}

Formula vn_times_formula() {
  return exists("d", land(land(vn_chain_formula(2, "x1", "d"),
                               vn_chain_formula(3, "x2", "d")),
                          vn_chain_formula(5, "x3", "d")));
}

Scheme vn_scheme() {
  return Scheme("vn", arithmetic_signature(), poset_signature(), {},
                vn_num_formula("x"), equal("x", "y"),
                {{"Plus", vn_plus_formula()}, {"Times", vn_times_formula()}},
                {}, exists("x", vn_num_formula("x")), std::nullopt);
}

}  // namespace foil
