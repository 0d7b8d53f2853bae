#include "foil/suites.hpp"

#include <sstream>

#include "foil/codings.hpp"
#include "foil/errors.hpp"
#include "foil/parse.hpp"
#include "foil/prenex.hpp"
#include "foil/product.hpp"
#include "foil/reference.hpp"
#include "foil/scheme.hpp"
#include "foil/structure.hpp"

namespace foil {

namespace {

CheckRow row(const std::string& name, const std::string& expected,
             const std::string& got) {
  return {name, expected, got, expected == got};
}

std::string counted(int good, int total) {
  return std::to_string(good) + "/" + std::to_string(total);
}

Formula pf(const std::string& text) { return parse_infer(text).first; }

Signature r2_sig() { return Signature({{"R", 2}}, true); }
Signature p1r2_sig() { return Signature({{"P", 1}, {"R", 2}}, true); }

// Small fixed structures over R:2 used by several suites.
std::vector<FiniteStructure> r2_structures() {
  Signature sig = r2_sig();
  return {
      FiniteStructure("a1", sig, 3, {{"R", {{0, 2}, {1, 2}}}}),
      FiniteStructure("a2", sig, 2, {{"R", {{0, 0}, {0, 1}}}}),
      FiniteStructure("a3", sig, 4, {{"R", {{0, 1}, {1, 2}, {2, 3}, {3, 0}}}}),
      FiniteStructure("a4", sig, 1, {{"R", {}}}),
      FiniteStructure("a5", sig, 1, {{"R", {{0, 0}}}}),
  };
}

std::vector<std::string> sentence_corpus() {
  return {
      "exists x. exists y. R(x,y)",
      "forall x. exists y. R(x,y)",
      "exists x. forall y. (R(x,y) | !R(y,x))",
      "forall x. forall y. (!R(x,y) | R(y,x))",
      "!(exists x. R(x,x))",
      "exists x. forall y. exists z. ((R(x,y) -> R(y,z)) & !x = z)",
      "forall x. (exists y. R(x,y) -> exists y. R(y,x))",
  };
}

std::string partition_string(const Partition& p) {
  std::ostringstream out;
  for (size_t b = 0; b < p.size(); ++b) {
    out << (b ? "," : "") << "{";
    for (size_t i = 0; i < p[b].size(); ++i)
      out << (i ? "," : "") << p[b][i];
    out << "}";
  }
  return out.str();
}

std::vector<CheckRow> formula_suite() {
  std::vector<CheckRow> rows;
  rows.push_back(row("formula/parse-canonical",
                     "((R(x,y) & R(y,x)) -> R(x,x))",
                     render(pf("R(x,y)&R(y,x)->R(x,x)"))));

  std::vector<std::string> corpus = sentence_corpus();
  corpus.push_back("!!R(x,y)");
  corpus.push_back("!x = y");
  corpus.push_back("true & false");

  int stable = 0;
  for (const auto& text : corpus) {
    Formula f = pf(text);
    if (pf(render(f)) == f) ++stable;
  }
  rows.push_back(row("formula/render-parse-round-trip",
                     counted(static_cast<int>(corpus.size()),
                             static_cast<int>(corpus.size())),
                     counted(stable, static_cast<int>(corpus.size()))));

  int nnf_fixed = 0;
  for (const auto& text : corpus)
    if (to_nnf(to_nnf(pf(text))) == to_nnf(pf(text))) ++nnf_fixed;
  rows.push_back(row("formula/nnf-idempotent",
                     counted(static_cast<int>(corpus.size()),
                             static_cast<int>(corpus.size())),
                     counted(nnf_fixed, static_cast<int>(corpus.size()))));

  rows.push_back(row(
      "formula/classify-example", "Sigma 2",
      to_string(classify(pf("exists x. forall y. (R(x,y) | !R(y,x))")))));
  rows.push_back(
      row("formula/classify-quantifier-free", "Both 0",
          to_string(classify(pf("R(x,y)")))));

  int idem = 0;
  for (const auto& text : corpus) {
    Formula f = pf(text);
    if (classify(to_prenex(f)) == classify(f) && is_prenex(to_prenex(f)))
      ++idem;
  }
  rows.push_back(row("formula/prenex-class-stable",
                     counted(static_cast<int>(corpus.size()),
                             static_cast<int>(corpus.size())),
                     counted(idem, static_cast<int>(corpus.size()))));
  return rows;
}

std::vector<CheckRow> models_suite() {
  std::vector<CheckRow> rows;
  std::vector<FiniteStructure> structs = r2_structures();
  const FiniteStructure& a1 = structs[0];

  rows.push_back(row("models/eval-exists", "true",
                     eval(a1, pf("exists x. exists y. R(x,y)")) ? "true"
                                                                : "false"));
  rows.push_back(row("models/eval-forall", "false",
                     eval(a1, pf("forall x. exists y. R(x,y)")) ? "true"
                                                                : "false"));

  // production evaluator vs the independent reference, all assignments
  int agree = 0, total = 0;
  for (const auto& a : structs)
    for (const auto& text : sentence_corpus()) {
      Formula f = parse(text, a.sig());
      ++total;
      if (eval(a, f) == reference::naive_eval(a, f)) ++agree;
    }
  rows.push_back(row("models/eval-matches-reference", counted(total, total),
                     counted(agree, total)));

  int preserved = 0, ptotal = 0;
  for (const auto& a : structs)
    for (const auto& text : sentence_corpus()) {
      Formula f = parse(text, a.sig());
      ++ptotal;
      if (eval(a, f) == eval(a, to_prenex(f))) ++preserved;
    }
  rows.push_back(row("models/prenex-preserves-truth", counted(ptotal, ptotal),
                     counted(preserved, ptotal)));

  rows.push_back(row("models/eq-congruence-blocks", "{0,1},{2}",
                     partition_string(eq_congruence(a1))));

  int qsame = 0, qtotal = 0;
  for (const auto& a : structs) {
    FiniteStructure q = quotient(a, eq_congruence(a));
    for (const auto& text : sentence_corpus()) {
      Formula f = parse(text, a.sig());
      ++qtotal;
      if (eval(a, f) == eval(q, f)) ++qsame;
    }
  }
  rows.push_back(row("models/quotient-preserves-sentences",
                     counted(qtotal, qtotal), counted(qsame, qtotal)));

  int io = 0;
  for (const auto& a : structs) {
    std::istringstream in(write_structure(a));
    if (read_structure(in) == a) ++io;
  }
  rows.push_back(row("models/structure-io-round-trip",
                     counted(static_cast<int>(structs.size()),
                             static_cast<int>(structs.size())),
                     counted(io, static_cast<int>(structs.size()))));

  int refl = 0;
  for (const auto& a : structs)
    if (iso_check(a, a)) ++refl;
  rows.push_back(row("models/iso-reflexive",
                     counted(static_cast<int>(structs.size()),
                             static_cast<int>(structs.size())),
                     counted(refl, static_cast<int>(structs.size()))));
  return rows;
}

std::vector<CheckRow> scheme_suite() {
  std::vector<CheckRow> rows;
  Scheme sym1 = read_scheme_text(
      "scheme sym1 from R:2 to D:2,P:3,Pbar:3 params p k 1\n"
      "dom: D(x,p)\n"
      "rel R: P(x1,x2,p)\n"
      "corel R: Pbar(x1,x2,p)\n"
      "correctness: forall a. (D(a,p) -> P(a,a,p))\n"
      "end\n");
  Formula phi = parse("exists x. forall y. (R(x,y) | !R(y,x))",
                      Signature({{"R", 2}}, false));
  rows.push_back(row(
      "scheme/worked-translation",
      render(alpha_normalize(pf("exists x. (D(x,p) & (forall y. (D(y,p) -> "
                                "(!Pbar(x,y,p) | !P(y,x,p)))))"))),
      render(alpha_normalize(tilde_translate(sym1, phi)))));

  TranslationReport rep = complexity_report(
      fpo_scheme(),
      parse("exists x. forall y. (E(x,y) | !E(y,x))", graph_signature()));
  auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
  rows.push_back(row("scheme/transfer-order-coding",
                     "bound=Sigma 2 output=Sigma 2 within=yes hypotheses=yes",
                     "bound=" + to_string(rep.bound) +
                         " output=" + to_string(rep.output_class) +
                         " within=" + yn(rep.within_bound) +
                         " hypotheses=" + yn(rep.hypotheses_met)));

  int trips = 0;
  for (const Scheme& s : {sym1, fpo_scheme(), vn_scheme()})
    if (write_scheme(read_scheme_text(write_scheme(s))) == write_scheme(s))
      ++trips;
  rows.push_back(row("scheme/io-round-trip", counted(3, 3),
                     counted(trips, 3)));

  // identity interpretation: translated sentences agree with the originals
  Signature src({{"R", 2}}, false);
  Scheme id = identity_scheme(src);
  int same = 0, total = 0;
  for (const auto& a : r2_structures())
    for (const auto& text :
         {"exists x. exists y. R(x,y)", "forall x. exists y. R(x,y)",
          "exists x. forall y. (R(x,y) | !R(y,x))",
          "forall x. forall y. (!R(x,y) | R(y,x))"}) {
      Formula f = parse(text, src);
      ++total;
      if (eval(a, tilde_translate(id, f)) == eval(a, f)) ++same;
    }
  rows.push_back(row("scheme/identity-translation-agrees",
                     counted(total, total), counted(same, total)));

  Poset enc = encode_graph_as_poset(Graph(2, {{0, 1}}));
  rows.push_back(row("scheme/order-coding-correctness", "ok",
                     check_correctness(fpo_scheme(), enc.structure())
                         ? "ok"
                         : "rejected"));
  FiniteStructure dec = decode(fpo_scheme(), enc.structure());
  rows.push_back(row("scheme/order-coding-decode", "universe=2 edges=2",
                     "universe=" + std::to_string(dec.size()) + " edges=" +
                         std::to_string(dec.tuples("E").size())));
  return rows;
}

std::vector<CheckRow> codings_suite() {
  std::vector<CheckRow> rows;
  std::vector<Graph> graphs = {Graph(1, {}), Graph(2, {{0, 1}}), Graph(2, {}),
                               Graph(3, {{0, 1}, {0, 2}, {1, 2}}),
                               Graph(4, {{0, 1}, {0, 2}, {0, 3},
                                         {1, 2}, {1, 3}, {2, 3}})};
  std::string sizes;
  for (const auto& g : graphs) {
    if (!sizes.empty()) sizes += ",";
    sizes += std::to_string(encode_graph_as_poset(g).size());
  }
  rows.push_back(row("codings/encode-sizes", "3,7,7,12,18", sizes));

  rows.push_back(row("codings/order-coding-correctness-class", "Pi 2",
                     to_string(classify(fpo_scheme().correctness()))));

  // round trip over all labeled graphs on <= 3 vertices
  Scheme fpo = fpo_scheme();
  int good = 0, total = 0;
  for (int n = 1; n <= 3; ++n) {
    int pairs = n * (n - 1) / 2;
    for (int mask = 0; mask < (1 << pairs); ++mask) {
      std::set<std::pair<int, int>> edges;
      int bit = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
          if (mask & (1 << bit)) edges.insert({i, j});
      Graph g(n, edges);
      ++total;
      FiniteStructure want = quotient(graph_structure(g),
                                      eq_congruence(graph_structure(g)));
      if (iso_check(decode(fpo, encode_graph_as_poset(g).structure()), want))
        ++good;
    }
  }
  rows.push_back(
      row("codings/graph-round-trip", counted(total, total),
          counted(good, total)));

  std::string vsizes;
  for (int n = 0; n <= 3; ++n) {
    if (!vsizes.empty()) vsizes += ",";
    vsizes += std::to_string(vn_fragment(n).size());
  }
  rows.push_back(row("codings/fragment-sizes", "12,43,89,146", vsizes));

  const int N = 2;
  std::set<std::vector<int>> plus, times;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      if (i + j <= N) plus.insert({i, j, i + j});
      if (i * j <= N) times.insert({i, j, i * j});
    }
  FiniteStructure want("arith", arithmetic_signature(), N + 1,
                       {{"Plus", plus}, {"Times", times}});
  rows.push_back(row("codings/fragment-decode", "recovers +,* on {0..2}",
                     decode(vn_scheme(), vn_fragment(N).structure()) == want
                         ? "recovers +,* on {0..2}"
                         : "mismatch"));

  rows.push_back(row("codings/operation-classes", "Sigma 2,Sigma 2",
                     to_string(classify(vn_plus_formula())) + "," +
                         to_string(classify(vn_times_formula()))));
  return rows;
}

std::vector<CheckRow> fv_suite() {
  std::vector<CheckRow> rows;
  rows.push_back(row("fv/components", "2",
                     std::to_string(fv_decompose(pf("P(x)"), 1).components)));

  FVDecomposition neg = fv_decompose(pf("!P(y)"), 1);
  std::string clauses;
  for (const auto& cl : neg.clauses) {
    if (!clauses.empty()) clauses += "; ";
    for (size_t i = 0; i < cl.size(); ++i)
      clauses += (i ? " || " : "") + render(cl[i]);
  }
  rows.push_back(
      row("fv/negation-clauses", "!P(y) || true; true || !P(y)", clauses));

  std::vector<int> t = power_tuple(6, 2, 3);
  std::string ts;
  for (size_t i = 0; i < t.size(); ++i)
    ts += (i ? "," : "") + std::to_string(t[i]);
  rows.push_back(row("fv/power-indexing", "1,1,0 -> 6",
                     ts + " -> " + std::to_string(power_index(t, 2))));

  Signature sig = p1r2_sig();
  std::vector<FiniteStructure> bases = {
      FiniteStructure("b1", sig, 1, {{"P", {}}, {"R", {}}}),
      FiniteStructure("b2", sig, 1, {{"P", {{0}}}, {"R", {{0, 0}}}}),
      FiniteStructure("b3", sig, 2, {{"P", {{0}}}, {"R", {{0, 1}}}}),
      FiniteStructure("b4", sig, 2,
                      {{"P", {{0}, {1}}}, {"R", {{0, 0}, {1, 0}}}}),
  };
  std::vector<std::string> corpus = {
      "P(x)",
      "!P(y)",
      "exists x. P(x)",
      "forall y. (P(y) -> (exists x. R(x,y)))",
      "x = y",
      "exists x. (R(x,y) & P(x))",
  };
  int pass = 0, total = 0;
  for (const auto& text : corpus)
    for (int k = 1; k <= 2; ++k)
      for (const auto& b : bases) {
        ++total;
        if (fv_verify(parse(text, sig), k, b)) ++pass;
      }
  rows.push_back(row("fv/verify-corpus", counted(total, total),
                     counted(pass, total)));
  return rows;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"formula", "models", "scheme", "codings", "fv"};
}

std::vector<CheckRow> run_suite(const std::string& name) {
  if (name == "formula") return formula_suite();
  if (name == "models") return models_suite();
  if (name == "scheme") return scheme_suite();
  if (name == "codings") return codings_suite();
  if (name == "fv") return fv_suite();
  if (name == "all") {
    std::vector<CheckRow> rows;
    for (const auto& n : suite_names()) {
      std::vector<CheckRow> part = run_suite(n);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
  }
  throw DomainError("unknown suite: " + name);
}

}  // namespace foil
