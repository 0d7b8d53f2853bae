#include "foil/scheme.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "foil/errors.hpp"
#include "foil/parse.hpp"

namespace foil {

namespace {

std::vector<std::string> rel_formals(int arity) {
  std::vector<std::string> out;
  for (int i = 1; i <= arity; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

void check_component_vars(const Formula& f, const std::string& what,
                          const std::vector<std::string>& formals,
                          const std::vector<std::string>& params) {
  for (const auto& v : free_vars(f)) {
    if (std::find(formals.begin(), formals.end(), v) != formals.end()) continue;
    if (std::find(params.begin(), params.end(), v) != params.end()) continue;
    throw DomainError("stray free variable " + v + " in " + what);
  }
}

}  // namespace

Scheme::Scheme(std::string name, Signature source, Signature target,
               std::vector<std::string> params, Formula dom,
               std::optional<Formula> eq, std::map<std::string, Formula> rels,
               std::map<std::string, Formula> corels, Formula correctness,
               std::optional<int> declared_k)
    : name_(std::move(name)), source_(std::move(source)),
      target_(std::move(target)), params_(std::move(params)),
      dom_(std::move(dom)), eq_(std::move(eq)), rels_(std::move(rels)),
      corels_(std::move(corels)), correctness_(std::move(correctness)) {
  if (name_.empty()) throw DomainError("scheme needs a name");
  for (size_t i = 0; i < params_.size(); ++i) {
    if (params_[i].empty() || params_[i][0] < 'a' || params_[i][0] > 'z')
      throw DomainError("bad parameter name '" + params_[i] + "'");
    for (size_t j = i + 1; j < params_.size(); ++j)
      if (params_[i] == params_[j])
        throw DomainError("duplicate parameter " + params_[i]);
  }

  check_against(target_, dom_);
  check_component_vars(dom_, "dom", {"x"}, params_);
  if (eq_) {
    check_against(target_, *eq_);
    check_component_vars(*eq_, "eq", {"x", "y"}, params_);
  }
  for (const auto& r : source_.relations()) {
    auto it = rels_.find(r.name);
    if (it == rels_.end())
      throw DomainError("missing rel component for " + r.name);
    check_against(target_, it->second);
    check_component_vars(it->second, "rel " + r.name, rel_formals(r.arity),
                         params_);
  }
  for (const auto& [rname, f] : rels_)
    if (!source_.arity_of(rname))
      throw DomainError("rel component for unknown relation " + rname);
  if (!corels_.empty()) {
    for (const auto& r : source_.relations())
      if (!corels_.count(r.name))
        throw DomainError("missing corel component for " + r.name);
    for (const auto& [rname, f] : corels_) {
      auto ar = source_.arity_of(rname);
      if (!ar)
        throw DomainError("corel component for unknown relation " + rname);
      check_against(target_, f);
      check_component_vars(f, "corel " + rname, rel_formals(*ar), params_);
    }
  }
  check_against(target_, correctness_);
  check_component_vars(correctness_, "correctness", {}, params_);

  if (!corels_.empty()) {
    // Sigma_k scheme: k is part of the contract, components must fit it
    if (!declared_k)
      throw DomainError("schemes with corels must declare k");
    if (*declared_k < 1) throw DomainError("declared k must be >= 1");
    k_ = *declared_k;
    PrenexClass sk{ClassKind::Sigma, k_};
    auto demand = [&](const Formula& f, const std::string& what) {
      if (!subsumed_by(classify(f), sk))
        throw DomainError(what + " is not within Sigma_" +
                          std::to_string(k_));
    };
    demand(dom_, "dom");
    if (eq_) demand(*eq_, "eq");
    for (const auto& [rname, f] : rels_) demand(f, "rel " + rname);
    for (const auto& [rname, f] : corels_) demand(f, "corel " + rname);
    if (!subsumed_by(classify(correctness_), {ClassKind::Pi, k_ + 1}))
      throw DomainError("correctness is not within Pi_" +
                        std::to_string(k_ + 1));
  } else if (declared_k) {
    if (*declared_k < 1) throw DomainError("declared k must be >= 1");
    k_ = *declared_k;
  } else {
    // general scheme: k is descriptive, the max class over the components
    int k = 1;
    k = std::max(k, classify(dom_).k);
    if (eq_) k = std::max(k, classify(*eq_).k);
    for (const auto& [rname, f] : rels_) k = std::max(k, classify(f).k);
    k_ = k;
  }
}

namespace {

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Scheme read_scheme(std::istream& in) {
  std::string line;
  int lineno = 0;

  // header: scheme NAME from SIG to SIG [params p1,p2] [k N]
  std::string name;
  std::optional<Signature> src, tgt;
  std::vector<std::string> params;
  std::optional<int> declared_k;
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word != "scheme")
      throw ParseError("expected 'scheme' header", lineno, 1);
    std::string kw, srctext, tgttext;
    if (!(ls >> name) || name.empty())
      throw ParseError("scheme needs a name", lineno, 1);
    if (!(ls >> kw) || kw != "from" || !(ls >> srctext))
      throw ParseError("expected 'from SIG'", lineno, 1);
    if (!(ls >> kw) || kw != "to" || !(ls >> tgttext))
      throw ParseError("expected 'to SIG'", lineno, 1);
    src = Signature::parse_descriptor(srctext);
    tgt = Signature::parse_descriptor(tgttext);
    while (ls >> kw) {
      if (kw == "params") {
        std::string list;
        if (!(ls >> list))
          throw ParseError("'params' needs a name list", lineno, 1);
        params = split_commas(list);
      } else if (kw == "k") {
        int k;
        if (!(ls >> k)) throw ParseError("'k' needs a number", lineno, 1);
        declared_k = k;
      } else {
        throw ParseError("unexpected token '" + kw + "' in scheme header",
                         lineno, 1);
      }
    }
    have_header = true;
  }
  if (!have_header) throw ParseError("missing 'scheme' header", lineno + 1, 1);

  std::optional<Formula> dom, eq, correctness;
  std::map<std::string, Formula> rels, corels;
  bool ended = false;
  while (!ended && std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string text = strip(line);
    if (text.empty()) continue;
    if (text == "end") {
      ended = true;
      break;
    }
    size_t colon = text.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected 'section: formula'", lineno, 1);
    std::string head = strip(text.substr(0, colon));
    std::string body = strip(text.substr(colon + 1));
    Formula f = parse(body, *tgt);
    if (head == "dom") {
      if (dom) throw DomainError("duplicate dom section");
      dom = f;
    } else if (head == "eq") {
      if (eq) throw DomainError("duplicate eq section");
      eq = f;
    } else if (head == "correctness") {
      if (correctness) throw DomainError("duplicate correctness section");
      correctness = f;
    } else if (head.rfind("rel ", 0) == 0) {
      std::string rname = strip(head.substr(4));
      if (!rels.emplace(rname, f).second)
        throw DomainError("duplicate rel section for " + rname);
    } else if (head.rfind("corel ", 0) == 0) {
      std::string rname = strip(head.substr(6));
      if (!corels.emplace(rname, f).second)
        throw DomainError("duplicate corel section for " + rname);
    } else {
      throw ParseError("unknown section '" + head + "'", lineno, 1);
    }
  }
  if (!ended) throw ParseError("missing 'end'", lineno + 1, 1);
  if (!dom) throw DomainError("missing dom section");
  return Scheme(name, *src, *tgt, params, *dom, eq, rels, corels,
                correctness.value_or(f_true()), declared_k);
}

Scheme read_scheme_text(const std::string& text) {
  std::istringstream in(text);
  return read_scheme(in);
}

Scheme read_scheme_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return read_scheme(in);
}

std::string write_scheme(const Scheme& s) {
  std::string out = "scheme " + s.name() + " from " + s.source().descriptor() +
                    " to " + s.target().descriptor();
  if (!s.params().empty()) {
    out += " params ";
    for (size_t i = 0; i < s.params().size(); ++i) {
      if (i) out += ',';
      out += s.params()[i];
    }
  }
  if (s.is_sigma_scheme()) out += " k " + std::to_string(s.k());
  out += "\n";
  out += "dom: " + render(s.dom()) + "\n";
  if (s.eq()) out += "eq: " + render(*s.eq()) + "\n";
  for (const auto& r : s.source().relations())
    out += "rel " + r.name + ": " + render(s.rels().at(r.name)) + "\n";
  if (s.is_sigma_scheme())
    for (const auto& r : s.source().relations())
      out += "corel " + r.name + ": " + render(s.corels().at(r.name)) + "\n";
  out += "correctness: " + render(s.correctness()) + "\n";
  out += "end\n";
  return out;
}

Scheme identity_scheme(const Signature& sig, const std::string& name) {
  std::map<std::string, Formula> rels, corels;
  for (const auto& r : sig.relations()) {
    Formula a = atom(r.name, rel_formals(r.arity));
    rels.emplace(r.name, a);
    corels.emplace(r.name, lnot(a));
  }
  return Scheme(name, sig, sig, {}, f_true(), std::nullopt, rels, corels,
                f_true(), 1);
}

namespace {

// Capture-avoiding variable renaming: binders of `f` are renamed (to fresh
// names outside `taken`) only when they would capture a substituted name.
Formula casubst(const Formula& f, std::map<std::string, std::string> m,
                std::set<std::string>& taken) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::Atom:
    case Kind::Equal: {
      std::vector<std::string> args;
      for (const auto& a : f.args()) {
        auto it = m.find(a);
        args.push_back(it == m.end() ? a : it->second);
      }
      return f.kind() == Kind::Atom ? atom(f.rel(), args)
                                    : equal(args[0], args[1]);
    }
    case Kind::Not:
      return lnot(casubst(f.child(), m, taken));
    case Kind::And:
      return land(casubst(f.left(), m, taken), casubst(f.right(), m, taken));
    case Kind::Or:
      return lor(casubst(f.left(), m, taken), casubst(f.right(), m, taken));
    case Kind::Implies:
      return implies(casubst(f.left(), m, taken),
                     casubst(f.right(), m, taken));
    case Kind::Exists:
    case Kind::Forall: {
      std::string v = f.var();
      m.erase(v);
      bool collides = false;
      for (const auto& [from, to] : m)
        if (to == v) collides = true;
      if (collides) {
        int i = 0;
        std::string w;
        do w = "t" + std::to_string(i++);
        while (taken.count(w));
        taken.insert(w);
        m[v] = w;
        v = w;
      }
      Formula b = casubst(f.body(), m, taken);
      return f.kind() == Kind::Exists ? exists(v, b) : forall(v, b);
    }
  }
  throw DomainError("unreachable");
}

struct Translator {
  const Scheme& s;
  bool exist_polarity;          // innermost block existential (or matrix qf)
  std::set<std::string> taken;  // names fresh binders must avoid

  Formula inst(const Formula& comp, const std::vector<std::string>& formals,
               const std::vector<std::string>& actuals) {
    std::map<std::string, std::string> m;
    for (size_t i = 0; i < formals.size(); ++i) m[formals[i]] = actuals[i];
    return casubst(comp, m, taken);
  }

  Formula positive_atom(const Formula& a) {
    if (a.kind() == Kind::Equal) {
      if (s.is_sigma_scheme())
        throw DomainError("equality atoms are not available in a Sigma_k scheme");
      if (!s.eq())
        throw DomainError("equality atom but the scheme has no eq component");
      return inst(*s.eq(), {"x", "y"}, a.args());
    }
    const Formula& rel = s.rels().at(a.rel());
    auto formals = rel_formals(static_cast<int>(a.args().size()));
    if (!s.is_sigma_scheme() || exist_polarity)
      return inst(rel, formals, a.args());
    return lnot(inst(s.corels().at(a.rel()), formals, a.args()));
  }

  Formula negative_atom(const Formula& a) {
    if (a.kind() == Kind::Equal || !s.is_sigma_scheme())
      throw DomainError("negated atoms need complement components");
    auto formals = rel_formals(static_cast<int>(a.args().size()));
    if (exist_polarity)
      return inst(s.corels().at(a.rel()), formals, a.args());
    return lnot(inst(s.rels().at(a.rel()), formals, a.args()));
  }

  // matrix is in negation normal form
  Formula matrix(const Formula& f) {
    switch (f.kind()) {
      case Kind::True:
      case Kind::False:
        return f;
      case Kind::Atom:
      case Kind::Equal:
        return positive_atom(f);
      case Kind::Not:
        return negative_atom(f.child());
      case Kind::And:
        return land(matrix(f.left()), matrix(f.right()));
      case Kind::Or:
        return lor(matrix(f.left()), matrix(f.right()));
      default:
        throw DomainError("unexpected connective in a prenex matrix");
    }
  }

  Formula go(const Formula& f) {
    if (f.kind() == Kind::Exists || f.kind() == Kind::Forall) {
      Formula guard = inst(s.dom(), {"x"}, {f.var()});
      Formula inner = go(f.body());
      return f.kind() == Kind::Exists ? exists(f.var(), land(guard, inner))
                                      : forall(f.var(), implies(guard, inner));
    }
    return matrix(to_nnf(f));
  }
};

}  // namespace

Formula tilde_translate(const Scheme& s, const Formula& phi) {
  check_against(s.source(), phi);
  if (!is_prenex(phi))
    throw DomainError("tilde translation needs a prenex sentence");
  if (!free_vars(phi).empty())
    throw DomainError("tilde translation needs a sentence (no free variables)");

  bool exist_polarity = true;
  for (Formula cur = phi; cur.is_quantifier(); cur = cur.body()) {
    for (const auto& p : s.params())
      if (cur.var() == p)
        throw DomainError("bound variable " + p +
                          " captures a scheme parameter");
    exist_polarity = cur.kind() == Kind::Exists;
  }

  std::set<std::string> taken = all_vars(phi);
  for (const auto& p : s.params()) taken.insert(p);
  Translator tr{s, exist_polarity, std::move(taken)};
  return tr.go(phi);
}

Formula reduction_F(const Scheme& s, const Formula& phi) {
  Formula f = implies(s.correctness(), tilde_translate(s, phi));
  for (auto it = s.params().rbegin(); it != s.params().rend(); ++it)
    f = forall(*it, f);
  return f;
}

TranslationReport complexity_report(const Scheme& s, const Formula& phi) {
  if (!s.is_sigma_scheme())
    throw DomainError("complexity accounting needs a Sigma_k scheme");
  TranslationReport rep;
  rep.input_class = classify(phi);
  rep.output = reduction_F(s, phi);
  rep.output_class = classify(rep.output);

  int k = s.k();
  int kin = rep.input_class.k;
  bool sigma_like = rep.input_class.kind != ClassKind::Pi;
  if (s.params().empty()) {
    // case (i): parameterless, Sigma_r input with r >= 2 -> Sigma_{r+k-1}
    rep.hypotheses_met = rep.input_class.kind == ClassKind::Sigma && kin >= 2;
    // correctness contributes Sigma_{k+1} after flipping; a Sigma-like input
    // absorbs it into the leading block, a Pi input costs one alternation
    int b = sigma_like ? std::max(k + 1, kin + k - 1) : std::max(k + 1, kin + k);
    rep.bound = {ClassKind::Sigma, b};
  } else {
    // case (ii): with parameters, Pi_{r+1} input with r >= 2 -> Pi_{r+k}
    rep.hypotheses_met = rep.input_class.kind == ClassKind::Pi && kin >= 3;
    if (rep.hypotheses_met) {
      rep.bound = {ClassKind::Pi, kin + k - 1};
    } else {
      // the leading forall-parameter block adds one block unless the merged
      // body already leads universally
      int b = sigma_like ? std::max(k + 2, kin + k)
                         : std::max(k + 2, kin + k + 1);
      rep.bound = {ClassKind::Pi, b};
    }
  }
  rep.within_bound = subsumed_by(rep.output_class, rep.bound);
  return rep;
}

std::string CorrectnessReport::describe() const {
  std::string out;
  out += std::string("alpha: ") + (alpha_holds ? "holds" : "fails") + "\n";
  out += std::string("dom: ") + (dom_nonempty ? "nonempty" : "empty") + "\n";
  out += std::string("eq: ") +
         (eq_is_equivalence ? "equivalence" : "not an equivalence") + "\n";
  out += std::string("rels: ") +
         (rels_compatible ? "eq-compatible" : "not eq-compatible") + "\n";
  out += std::string("corels: ") + (corels_disjoint ? "disjoint" : "overlap") +
         "\n";
  return out;
}

namespace {

std::map<std::string, int> with_params(const Scheme& s,
                                       const std::map<std::string, int>& pvals) {
  std::map<std::string, int> out;
  for (const auto& p : s.params()) {
    auto it = pvals.find(p);
    if (it == pvals.end())
      throw DomainError("missing value for parameter " + p);
    out[p] = it->second;
  }
  return out;
}

std::vector<int> dom_elements(const Scheme& s, const FiniteStructure& a,
                              const std::map<std::string, int>& pv) {
  std::vector<int> d;
  auto asg = pv;
  for (int e = 0; e < a.size(); ++e) {
    asg["x"] = e;
    if (eval(a, s.dom(), asg)) d.push_back(e);
  }
  return d;
}

}  // namespace

CorrectnessReport correctness_report(const Scheme& s, const FiniteStructure& a,
                                     const std::map<std::string, int>& pvals) {
  auto pv = with_params(s, pvals);
  CorrectnessReport rep;
  rep.alpha_holds = eval(a, s.correctness(), pv);
  std::vector<int> d = dom_elements(s, a, pv);
  rep.dom_nonempty = !d.empty();

  // eq must be an equivalence on the domain
  std::vector<std::vector<char>> eqt;
  if (s.eq()) {
    int nd = static_cast<int>(d.size());
    eqt.assign(nd, std::vector<char>(nd, 0));
    auto asg = pv;
    for (int i = 0; i < nd; ++i)
      for (int j = 0; j < nd; ++j) {
        asg["x"] = d[i];
        asg["y"] = d[j];
        eqt[i][j] = eval(a, *s.eq(), asg) ? 1 : 0;
      }
    for (int i = 0; i < nd && rep.eq_is_equivalence; ++i) {
      if (!eqt[i][i]) rep.eq_is_equivalence = false;
      for (int j = 0; j < nd && rep.eq_is_equivalence; ++j) {
        if (eqt[i][j] != eqt[j][i]) rep.eq_is_equivalence = false;
        if (!eqt[i][j]) continue;
        for (int l = 0; l < nd; ++l)
          if (eqt[j][l] && !eqt[i][l]) {
            rep.eq_is_equivalence = false;
            break;
          }
      }
    }
  }

  // scan every domain tuple once per relation: eq-compatibility is checked
  // against the tuple of class representatives, corel disjointness directly
  if (!d.empty()) {
    int nd = static_cast<int>(d.size());
    for (const auto& r : s.source().relations()) {
      int m = r.arity;
      auto asg = pv;
      auto asg2 = pv;
      std::vector<int> idx(m, 0);
      while (true) {
        for (int i = 0; i < m; ++i)
          asg["x" + std::to_string(i + 1)] = d[idx[i]];
        bool rv = eval(a, s.rels().at(r.name), asg);
        if (s.eq() && rep.eq_is_equivalence) {
          for (int i = 0; i < m; ++i) {
            int rep_i = idx[i];
            for (int j = 0; j < nd; ++j)
              if (eqt[idx[i]][j]) {
                rep_i = j;
                break;
              }
            asg2["x" + std::to_string(i + 1)] = d[rep_i];
          }
          if (eval(a, s.rels().at(r.name), asg2) != rv)
            rep.rels_compatible = false;
        }
        if (s.is_sigma_scheme() && rv && eval(a, s.corels().at(r.name), asg))
          rep.corels_disjoint = false;
        int i = m - 1;
        while (i >= 0 && ++idx[i] == nd) idx[i--] = 0;
        if (i < 0) break;
      }
    }
  }
  return rep;
}

bool check_correctness(const Scheme& s, const FiniteStructure& a,
                       const std::map<std::string, int>& pvals) {
  return correctness_report(s, a, pvals).ok();
}

FiniteStructure decode(const Scheme& s, const FiniteStructure& a,
                       const std::map<std::string, int>& pvals) {
  if (!check_correctness(s, a, pvals))
    throw DomainError("decode precondition failed: scheme " + s.name() +
                      " is not correct on " + a.name());
  auto pv = with_params(s, pvals);
  std::vector<int> d = dom_elements(s, a, pv);
  int nd = static_cast<int>(d.size());

  std::map<std::string, std::set<std::vector<int>>> tables;
  for (const auto& r : s.source().relations()) {
    std::set<std::vector<int>> tuples;
    int m = r.arity;
    auto asg = pv;
    std::vector<int> idx(m, 0);
    while (true) {
      for (int i = 0; i < m; ++i) asg["x" + std::to_string(i + 1)] = d[idx[i]];
      if (eval(a, s.rels().at(r.name), asg)) tuples.insert(idx);
      int i = m - 1;
      while (i >= 0 && ++idx[i] == nd) idx[i--] = 0;
      if (i < 0) break;
    }
    tables[r.name] = tuples;
  }
  FiniteStructure induced(a.name() + "_dec", s.source(), nd, tables);

  Partition p;
  if (s.eq()) {
    std::vector<int> block_of(nd, -1);
    auto asg = pv;
    for (int i = 0; i < nd; ++i) {
      if (block_of[i] >= 0) continue;
      block_of[i] = static_cast<int>(p.size());
      p.push_back({i});
      for (int j = i + 1; j < nd; ++j) {
        if (block_of[j] >= 0) continue;
        asg["x"] = d[i];
        asg["y"] = d[j];
        if (eval(a, *s.eq(), asg)) {
          block_of[j] = block_of[i];
          p[block_of[i]].push_back(j);
        }
      }
    }
  } else {
    p = eq_congruence(induced);
  }
  return quotient(induced, p);
}

}  // namespace foil
