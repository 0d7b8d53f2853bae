#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "foil/scheme.hpp"
#include "foil/structure.hpp"

namespace foil {

// Finite graph on vertices {0..n-1}. Undirected graphs store each edge once
// as (min,max) and admit no self-loops; directed graphs store ordered pairs.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::set<std::pair<int, int>> edges, bool directed = false);

  int n() const { return n_; }
  bool directed() const { return directed_; }
  const std::set<std::pair<int, int>>& edges() const { return edges_; }
  bool adjacent(int a, int b) const;

 private:
  int n_ = 0;
  bool directed_ = false;
  std::set<std::pair<int, int>> edges_;
};

// File format:  graph N \n edge A B ... \n end   ('#' comments allowed).
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
std::string write_graph(const Graph& g);

// As a finite structure over the (equality-free) graph signature;
// undirected edges become symmetric pairs.
FiniteStructure graph_structure(const Graph& g);

// Finite partial order: a structure over the poset signature whose Le is
// reflexive, antisymmetric and transitive (checked on construction).
class Poset {
 public:
  Poset() = default;
  explicit Poset(FiniteStructure structure);  // DomainError if not a poset
  const FiniteStructure& structure() const { return structure_; }
  int size() const { return structure_.size(); }
  bool le(int a, int b) const;
  bool lt(int a, int b) const { return le(a, b) && !le(b, a); }

 private:
  FiniteStructure structure_;
};

// Graph-to-poset encoding (undirected input): vertices keep their ids 0..n-1;
// each vertex x gets private bounds u_x < x < v_x; each edge {x,y} a fresh
// upper cover z with x,y < z; each non-edge {x,y} a fresh lower cover w with
// w < x,y. The returned order is the reflexive-transitive closure.
Poset encode_graph_as_poset(const Graph& g);

// Experimental: directed graphs are lowered to an undirected orientation
// gadget (arc u->v becomes the path u-a-b-v with a pendant on the source-side
// node a) and then encoded with the undirected encoder. Not part of the
// acceptance suite.
Graph orientation_gadget(const Graph& digraph);
Poset encode_digraph_as_poset(const Graph& digraph);

// The parameterless Sigma_1 scheme coding graphs inside finite partial
// orders: dom(x) = exists u,v. u < x < v; E = incomparable with a common
// upper bound; coE = incomparable with a common lower bound; correctness =
// the Pi_2 sentence asserting dom nonempty and E/coE complementarity on
// incomparable dom pairs.
Scheme fpo_scheme();

// The arithmetic fragment order on numbers {0..N}: minimal elements
// p_0..p_N (element n is p_n), one top element c_{n,m} per pair, with
// saturated cover chains of length 2 (from p_n), 3 (from p_m),
// 4 (from p_{n+m}, when n+m <= N) and 5 (from p_{n*m}, when n*m <= N).
// Deterministic layout: p_n = n; then c/chain elements in (n,m)-major order.
// The generator self-checks that every saturated p-to-top chain has one of
// the four intended lengths.
Poset vn_fragment(int n_max);

// General (non-Sigma_k) scheme reading numbers off vn fragments:
// dom = minimality (phi_num), eq = equality, Plus/Times defined through
// chain-length formulas with phi_num guards on all arguments.
Scheme vn_scheme();

// The building blocks of vn_scheme, exposed for tests and direct evaluation.
Formula vn_num_formula(const std::string& var);
Formula vn_chain_formula(int cover_steps, const std::string& from,
                         const std::string& to);  // includes maximality of `to`
Formula vn_plus_formula();   // args x1,x2,x3
Formula vn_times_formula();  // args x1,x2,x3

}  // namespace foil
