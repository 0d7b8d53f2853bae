#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <sstream>

#include "foil/codings.hpp"
#include "foil/errors.hpp"
#include "foil/parse.hpp"
#include "foil/prenex.hpp"
#include "foil/scheme.hpp"
#include "foil/structure.hpp"
#include "support/gen.hpp"

using namespace foil;
using testsupport::ChainOracle;
using testsupport::Rng;

#ifndef FOIL_SCHEME_DIR
#define FOIL_SCHEME_DIR "schemes"
#endif

namespace {
std::map<std::string, int> asg2(const char* a, int va, const char* b, int vb) {
  return {{a, va}, {b, vb}};
}
}  // namespace

TEST_CASE("graph basics and file round trip") {
  CHECK_THROWS_AS(Graph(2, {{0, 2}}, false), DomainError);  // vertex out of range
  CHECK_THROWS_AS(Graph(2, {{1, 1}}, false), DomainError);  // self-loop
  Graph g(3, {{1, 0}, {1, 2}}, false);
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(1, 0));
  CHECK_FALSE(g.adjacent(0, 2));
  std::string text = "graph 3\nedge 0 1\nedge 1 2\nend\n";
  CHECK(write_graph(g) == text);
  std::istringstream in(text);
  Graph h = read_graph(in);
  CHECK(write_graph(h) == text);
  std::istringstream bad("graph 2\nedge 0 7\nend\n");
  CHECK_THROWS_AS((void)read_graph(bad), DomainError);
  // undirected structure is symmetric
  FiniteStructure gs = graph_structure(g);
  CHECK(gs.tuples("E") ==
        std::set<std::vector<int>>{{0, 1}, {1, 0}, {1, 2}, {2, 1}});
}

TEST_CASE("poset validation") {
  Signature ps = poset_signature();
  auto mk = [&](std::set<std::vector<int>> le) {
    return FiniteStructure("p", ps, 2, {{"Le", std::move(le)}});
  };
  CHECK_NOTHROW(Poset(mk({{0, 0}, {1, 1}, {0, 1}})));
  CHECK_THROWS_AS(Poset(mk({{0, 0}, {0, 1}})), DomainError);          // not reflexive
  CHECK_THROWS_AS(Poset(mk({{0, 0}, {1, 1}, {0, 1}, {1, 0}})), DomainError);  // not antisym
  FiniteStructure chain3("c", ps, 3,
                         {{"Le", {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}}}});
  CHECK_THROWS_AS((void)Poset(chain3), DomainError);  // not transitive
}

TEST_CASE("fpo scheme: frozen components") {
  Scheme s = fpo_scheme();
  CHECK(s.name() == "fpo");
  CHECK(s.params().empty());
  CHECK(s.k() == 1);
  CHECK(s.is_sigma_scheme());
  CHECK(render(s.dom()) ==
        "exists u. exists v. ((Le(u,x) & !Le(x,u)) & (Le(x,v) & !Le(v,x)))");
  CHECK(render(s.rels().at("E")) ==
        "exists z. ((!Le(x1,x2) & !Le(x2,x1)) & (Le(x1,z) & Le(x2,z)))");
  CHECK(render(s.corels().at("E")) ==
        "exists w. ((!Le(x1,x2) & !Le(x2,x1)) & (Le(w,x1) & Le(w,x2)))");
  CHECK(subsumed_by(classify(s.dom()), {ClassKind::Sigma, 1}));
  CHECK(subsumed_by(classify(s.rels().at("E")), {ClassKind::Sigma, 1}));
  CHECK(subsumed_by(classify(s.corels().at("E")), {ClassKind::Sigma, 1}));
  CHECK(classify(s.correctness()) == PrenexClass{ClassKind::Pi, 2});
  // the shipped scheme file is the same scheme
  CHECK(write_scheme(read_scheme_file(std::string(FOIL_SCHEME_DIR) + "/fpo.scm")) ==
        write_scheme(s));
}

TEST_CASE("encode_graph_as_poset: frozen shapes") {
  // single vertex: u < x < v
  Poset one = encode_graph_as_poset(Graph(1, {}, false));
  CHECK(one.size() == 3);
  FiniteStructure d1 = decode(fpo_scheme(), one.structure());
  CHECK(d1.size() == 1);
  CHECK(d1.tuples("E").empty());

  // K3: 3 vertices * 3 + 3 edge tops = 12
  Poset k3 = encode_graph_as_poset(
      Graph(3, {{0, 1}, {0, 2}, {1, 2}}, false));
  CHECK(k3.size() == 12);
  FiniteStructure d3 = decode(fpo_scheme(), k3.structure());
  CHECK(d3.size() == 3);
  CHECK(d3.tuples("E") ==
        std::set<std::vector<int>>{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}});

  // two vertices, no edge: coE holds via the common lower bound, E fails
  Poset p2 = encode_graph_as_poset(Graph(2, {}, false));
  CHECK(p2.size() == 7);
  Scheme s = fpo_scheme();
  CHECK(eval(p2.structure(), s.corels().at("E"), asg2("x1", 0, "x2", 1)));
  CHECK_FALSE(eval(p2.structure(), s.rels().at("E"), asg2("x1", 0, "x2", 1)));
  CHECK(check_correctness(s, p2.structure()));
}

// Graph-coding round trip over every labeled undirected graph on <= 4
// vertices (the acceptance run repeats this with timing).
TEST_CASE("property: fpo round trip on all small graphs") {
  Scheme s = fpo_scheme();
  int done = 0;
  for (int n = 1; n <= 4; ++n) {
    for (const Graph& g : testsupport::all_graphs(n)) {
      Poset p = encode_graph_as_poset(g);
      REQUIRE(check_correctness(s, p.structure()));
      FiniteStructure got = decode(s, p.structure());
      FiniteStructure gs = graph_structure(g);
      FiniteStructure want = quotient(gs, eq_congruence(gs));
      CAPTURE(write_graph(g));
      CHECK(iso_check(got, want));
      ++done;
    }
  }
  CHECK(done == 1 + 2 + 8 + 64);
  // the path 0-1-2 has indistinguishable endpoints: decodes to an edge
  Poset p3 = encode_graph_as_poset(Graph(3, {{0, 1}, {1, 2}}, false));
  FiniteStructure d = decode(s, p3.structure());
  CHECK(d.size() == 2);
  CHECK(d.tuples("E") == std::set<std::vector<int>>{{0, 1}, {1, 0}});
}

// [DERIVED] frozen element counts: base N+1, plus per pair (n,m) one top,
// 1 + 2 interior elements for the 2/3-chains, 3 more when n+m <= N and
// 4 more when n*m <= N.
TEST_CASE("vn_fragment: frozen sizes and shape") {
  const int expected[] = {12, 43, 89, 146, 218, 297, 395};
  for (int n = 0; n <= 6; ++n) {
    Poset p = vn_fragment(n);
    CAPTURE(n);
    CHECK(p.size() == expected[n]);
    ChainOracle oracle(p.structure());
    // minimal elements are exactly p_0..p_n (ids 0..n)
    for (int e = 0; e < p.size(); ++e)
      CHECK(bool(oracle.minimal[e]) == (e <= n));
    // number of tops = (n+1)^2
    int tops = 0;
    for (int e = 0; e < p.size(); ++e) tops += oracle.maximal[e];
    CHECK(tops == (n + 1) * (n + 1));
  }
}

TEST_CASE("vn pairing uniqueness (independent chain oracle)") {
  for (int N : {1, 2}) {
    Poset p = vn_fragment(N);
    ChainOracle o(p.structure());
    std::set<std::pair<int, int>> seen;
    for (int c = 0; c < p.size(); ++c) {
      if (!o.maximal[c]) continue;
      std::vector<int> s2, s3;
      for (int q = 0; q <= N; ++q) {
        if (o.saturated(q, c, 2)) s2.push_back(q);
        if (o.saturated(q, c, 3)) s3.push_back(q);
      }
      REQUIRE(s2.size() == 1);
      REQUIRE(s3.size() == 1);
      seen.insert({s2[0], s3[0]});
    }
    // every pair coded exactly once
    CHECK(static_cast<int>(seen.size()) == (N + 1) * (N + 1));
  }
}

TEST_CASE("vn_scheme: components agree with the chain oracle") {
  Scheme s = vn_scheme();
  CHECK_FALSE(s.is_sigma_scheme());
  CHECK(s.params().empty());
  CHECK(s.eq().has_value());
  CHECK(render(*s.eq()) == "x = y");
  CHECK(render(s.dom()) == render(vn_num_formula("x")));
  CHECK(free_vars(s.rels().at("Plus")) ==
        std::set<std::string>{"x1", "x2", "x3"});
  CHECK(classify(s.rels().at("Plus")) == PrenexClass{ClassKind::Sigma, 2});
  CHECK(classify(s.dom()) == PrenexClass{ClassKind::Pi, 1});

  Poset p = vn_fragment(1);
  ChainOracle o(p.structure());
  // num formula == minimality, chain formulas == saturated cover chains
  for (int e = 0; e < p.size(); ++e)
    CHECK(eval(p.structure(), vn_num_formula("x"), {{"x", e}}) ==
          bool(o.minimal[e]));
  for (int steps : {2, 3, 4, 5}) {
    Formula ch = vn_chain_formula(steps, "a", "b");
    for (int a = 0; a < p.size(); ++a)
      for (int b = 0; b < p.size(); ++b) {
        bool want = o.minimal[a] && o.maximal[b] && o.saturated(a, b, steps);
        CAPTURE(steps);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(eval(p.structure(), ch, asg2("a", a, "b", b)) == want);
      }
  }
}

TEST_CASE("vn arithmetic: named instances at N=4") {
  Poset p = vn_fragment(4);
  Formula plus = vn_plus_formula();
  Formula times = vn_times_formula();
  auto asg3 = [](int a, int b, int c) {
    return std::map<std::string, int>{{"x1", a}, {"x2", b}, {"x3", c}};
  };
  CHECK(eval(p.structure(), plus, asg3(1, 2, 3)));
  CHECK_FALSE(eval(p.structure(), plus, asg3(1, 2, 4)));
  for (int m = 0; m <= 4; ++m) CHECK(eval(p.structure(), times, asg3(0, m, 0)));
}

TEST_CASE("vn arithmetic: exhaustive in-range tables at N=2") {
  Poset p = vn_fragment(2);
  Formula plus = vn_plus_formula();
  Formula times = vn_times_formula();
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (int c = 0; c <= 2; ++c) {
        auto asg = std::map<std::string, int>{{"x1", a}, {"x2", b}, {"x3", c}};
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(c);
        CHECK(eval(p.structure(), plus, asg) == (a + b == c));
        CHECK(eval(p.structure(), times, asg) == (a * b == c));
      }
}

// No false positives with arbitrary (non-number) arguments: exhaustive scan
// at N=1 composed from the independent oracle tables, cross-validated
// against direct formula evaluation on every number triple plus a sample.
TEST_CASE("vn arithmetic: false-positive scan at N=1") {
  const int N = 1;
  Poset p = vn_fragment(N);
  const FiniteStructure& a = p.structure();
  ChainOracle o(a);
  int n = p.size();
  std::vector<int> tops;
  for (int e = 0; e < n; ++e)
    if (o.maximal[e]) tops.push_back(e);
  // per-element chain masks over the top list
  auto masks = [&](int steps) {
    std::vector<unsigned long long> m(n, 0);
    for (int e = 0; e < n; ++e)
      for (size_t t = 0; t < tops.size(); ++t)
        if (o.saturated(e, tops[t], steps)) m[e] |= 1ull << t;
    return m;
  };
  auto m2 = masks(2), m3 = masks(3), m4 = masks(4), m5 = masks(5);
  Formula plus = vn_plus_formula();
  Formula times = vn_times_formula();
  Rng rng(0x5ca1ab1e);
  int evals = 0, table_mismatch = 0, eval_mismatch = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        bool num = o.minimal[x] && o.minimal[y] && o.minimal[z];
        bool tplus = num && (m2[x] & m3[y] & m4[z]) != 0;
        bool ttimes = num && (m2[x] & m3[y] & m5[z]) != 0;
        // oracle truth: only in-range sums/products of numbers
        if (tplus != (num && x + y == z)) ++table_mismatch;
        if (ttimes != (num && x * y == z)) ++table_mismatch;
        if (num || rng.below(200) == 0) {
          auto asg = std::map<std::string, int>{{"x1", x}, {"x2", y}, {"x3", z}};
          if (eval(a, plus, asg) != tplus) ++eval_mismatch;
          if (eval(a, times, asg) != ttimes) ++eval_mismatch;
          ++evals;
        }
      }
  CHECK(table_mismatch == 0);
  CHECK(eval_mismatch == 0);
  CHECK(evals >= 8);
}

TEST_CASE("decode of vn scheme recovers school arithmetic") {
  FiniteStructure got = decode(vn_scheme(), vn_fragment(3).structure());
  CHECK(got == testsupport::arith_structure(3));
  CHECK(check_correctness(vn_scheme(), vn_fragment(2).structure()));
  // the shipped scheme file matches the constructor
  CHECK(write_scheme(read_scheme_file(std::string(FOIL_SCHEME_DIR) + "/vn.scm")) ==
        write_scheme(vn_scheme()));
}

// Reduced transport run (the acceptance suite uses the full corpus):
// translated sentence on the fragment == direct truth over {0..N}.
TEST_CASE("arithmetic sentence transport at N=2") {
  const int N = 2;
  Scheme s = vn_scheme();
  Poset frag = vn_fragment(N);
  FiniteStructure direct = testsupport::arith_structure(N);
  auto corpus = testsupport::arithmetic_corpus();
  for (int i = 0; i < 8; ++i) {
    Formula beta = parse(corpus[i], arithmetic_signature());
    Formula moved = tilde_translate(s, to_prenex(beta));
    CAPTURE(corpus[i]);
    CHECK(eval(frag.structure(), moved) == eval(direct, beta));
  }
}

TEST_CASE("directed encoding gadget (experimental)") {
  Graph d(2, {{0, 1}}, true);
  Graph u = orientation_gadget(d);
  CHECK_FALSE(u.directed());
  CHECK(u.n() == 5);  // 2 vertices + path node a, b + pendant on a
  // u - a - b - v path plus pendant c on a
  CHECK(u.adjacent(0, 2));
  CHECK(u.adjacent(2, 3));
  CHECK(u.adjacent(3, 1));
  CHECK(u.adjacent(2, 4));  // pendant marks the source side
  CHECK_FALSE(u.adjacent(0, 1));
  Poset p = encode_digraph_as_poset(d);
  FiniteStructure dec = decode(fpo_scheme(), p.structure());
  FiniteStructure us = graph_structure(u);
  CHECK(iso_check(dec, quotient(us, eq_congruence(us))));
}
