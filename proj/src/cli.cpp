#include "foil/cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "foil/codings.hpp"
#include "foil/errors.hpp"
#include "foil/parse.hpp"
#include "foil/prenex.hpp"
#include "foil/product.hpp"
#include "foil/scheme.hpp"
#include "foil/structure.hpp"
#include "foil/suites.hpp"

namespace foil {

namespace {

const char* kUsage =
    "usage: foil VERB [flags]\n"
    "verbs:\n"
    "  parse         --formula F                  print the canonical rendering\n"
    "  classify      --formula F                  print the Sigma/Pi class\n"
    "  translate     --scheme S --formula F [--with-F]\n"
    "  eval          --structure A --formula F [--params x=0,y=2]\n"
    "  encode-graph  --graph G                    graph -> order encoding\n"
    "  decode        --scheme S --structure A [--params ...]\n"
    "  vn-fragment   --n N                        arithmetic fragment order\n"
    "  fv-decompose  --formula F --k K            product decomposition\n"
    "  fv-verify     --formula F --k K --structure A\n"
    "  check         --suite NAME [--report human|tsv]\n"
    "flags: --formula takes text, or a file path when one exists;\n"
    "       --formula-file always names a file; --scheme takes a file path\n"
    "       or a builtin name (fpo, vn).\n";

struct Usage {
  std::string message;
};

struct Args {
  std::string verb;
  std::map<std::string, std::string> values;
  std::set<std::string> switches;
};

Args parse_args(const std::vector<std::string>& argv) {
  static const std::set<std::string> value_flags = {
      "formula", "formula-file", "scheme", "structure", "graph",
      "params",  "n",            "k",      "report",    "suite"};
  static const std::set<std::string> switch_flags = {"with-F"};
  if (argv.empty()) throw Usage{"missing verb"};
  Args a;
  a.verb = argv[0];
  for (size_t i = 1; i < argv.size(); ++i) {
    const std::string& tok = argv[i];
    if (tok.rfind("--", 0) != 0) throw Usage{"unexpected argument: " + tok};
    std::string name = tok.substr(2);
    std::string inline_value;
    bool has_inline = false;
    if (auto eq = name.find('='); eq != std::string::npos) {
      inline_value = name.substr(eq + 1);
      name = name.substr(0, eq);
      has_inline = true;
    }
    if (switch_flags.count(name)) {
      if (has_inline) throw Usage{"--" + name + " takes no value"};
      a.switches.insert(name);
      continue;
    }
    if (!value_flags.count(name)) throw Usage{"unknown flag: --" + name};
    if (has_inline) {
      a.values[name] = inline_value;
    } else {
      if (i + 1 >= argv.size()) throw Usage{"--" + name + " needs a value"};
      a.values[name] = argv[++i];
    }
  }
  return a;
}

std::string need(const Args& a, const std::string& flag) {
  auto it = a.values.find(flag);
  if (it == a.values.end()) throw Usage{a.verb + " needs --" + flag};
  return it->second;
}

int need_int(const Args& a, const std::string& flag) {
  std::string v = need(a, flag);
  try {
    size_t used = 0;
    int n = std::stoi(v, &used);
    if (used != v.size()) throw Usage{"--" + flag + " needs an integer"};
    return n;
  } catch (const Usage&) {
    throw;
  } catch (...) {
    throw Usage{"--" + flag + " needs an integer"};
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Formula text from --formula-file, or --formula (read as a file when the
// argument names one). '#' comments stripped.
std::string formula_text(const Args& a) {
  std::string raw;
  if (auto it = a.values.find("formula-file"); it != a.values.end()) {
    raw = read_file(it->second);
  } else if (auto f = a.values.find("formula"); f != a.values.end()) {
    std::error_code ec;
    raw = std::filesystem::is_regular_file(f->second, ec)
              ? read_file(f->second)
              : f->second;
  } else {
    throw Usage{a.verb + " needs --formula or --formula-file"};
  }
  std::istringstream lines(raw);
  std::string line, text;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    text += line + "\n";
  }
  return text;
}

Scheme scheme_arg(const Args& a) {
  std::string v = need(a, "scheme");
  std::error_code ec;
  if (std::filesystem::is_regular_file(v, ec)) return read_scheme_file(v);
  if (v == "fpo") return fpo_scheme();
  if (v == "vn") return vn_scheme();
  throw DomainError("cannot open scheme: " + v + " (not a file or builtin)");
}

std::map<std::string, int> params_arg(const Args& a) {
  std::map<std::string, int> out;
  auto it = a.values.find("params");
  if (it == a.values.end()) return out;
  std::istringstream in(it->second);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Usage{"--params entries look like name=value"};
    try {
      size_t used = 0;
      int v = std::stoi(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1)
        throw Usage{"--params entries look like name=value"};
      out[item.substr(0, eq)] = v;
    } catch (const Usage&) {
      throw;
    } catch (...) {
      throw Usage{"--params entries look like name=value"};
    }
  }
  return out;
}

std::string yn(bool b) { return b ? "yes" : "no"; }

int cmd_parse(const Args& a, std::ostream& out) {
  out << render(parse_infer(formula_text(a)).first) << "\n";
  return 0;
}

int cmd_classify(const Args& a, std::ostream& out) {
  out << to_string(classify(parse_infer(formula_text(a)).first)) << "\n";
  return 0;
}

int cmd_translate(const Args& a, std::ostream& out) {
  Scheme s = scheme_arg(a);
  Formula phi = parse(formula_text(a), s.source());
  Formula tilde = tilde_translate(s, phi);
  out << "input-class: " << to_string(classify(phi)) << "\n";
  out << "tilde: " << render(tilde) << "\n";
  out << "tilde-class: " << to_string(classify(tilde)) << "\n";
  if (a.switches.count("with-F")) {
    TranslationReport rep = complexity_report(s, phi);
    out << "F: " << render(rep.output) << "\n";
    out << "F-class: " << to_string(rep.output_class) << "\n";
    out << "bound: " << to_string(rep.bound) << "\n";
    out << "within-bound: " << yn(rep.within_bound) << "\n";
    out << "hypotheses-met: " << yn(rep.hypotheses_met) << "\n";
  }
  return 0;
}

int cmd_eval(const Args& a, std::ostream& out) {
  FiniteStructure s = read_structure_file(need(a, "structure"));
  Formula phi = parse(formula_text(a), s.sig());
  out << (eval(s, phi, params_arg(a)) ? "true" : "false") << "\n";
  return 0;
}

int cmd_encode_graph(const Args& a, std::ostream& out) {
  Graph g = read_graph_file(need(a, "graph"));
  out << write_structure(encode_graph_as_poset(g).structure());
  return 0;
}

int cmd_decode(const Args& a, std::ostream& out) {
  Scheme s = scheme_arg(a);
  FiniteStructure host = read_structure_file(need(a, "structure"));
  out << write_structure(decode(s, host, params_arg(a)));
  return 0;
}

int cmd_vn_fragment(const Args& a, std::ostream& out) {
  int n = need_int(a, "n");
  if (n < 0) throw DomainError("--n must be >= 0");
  out << write_structure(vn_fragment(n).structure());
  return 0;
}

int cmd_fv_decompose(const Args& a, std::ostream& out) {
  Formula phi = parse_infer(formula_text(a)).first;
  FVDecomposition dec = fv_decompose(phi, need_int(a, "k"));
  out << "components: " << dec.components << "\n";
  out << "clauses: " << dec.clauses.size() << "\n";
  for (size_t i = 0; i < dec.clauses.size(); ++i) {
    out << "clause " << i + 1 << ":";
    for (size_t c = 0; c < dec.clauses[i].size(); ++c)
      out << (c ? " || " : " ") << render(dec.clauses[i][c]);
    out << "\n";
  }
  return 0;
}

int cmd_fv_verify(const Args& a, std::ostream& out) {
  FiniteStructure s = read_structure_file(need(a, "structure"));
  Formula phi = parse(formula_text(a), s.sig());
  bool ok = fv_verify(phi, need_int(a, "k"), s);
  out << (ok ? "pass" : "fail") << "\n";
  return ok ? 0 : 1;
}

int cmd_check(const Args& a, std::ostream& out, std::ostream& err) {
  std::string report = "human";
  if (auto it = a.values.find("report"); it != a.values.end())
    report = it->second;
  if (report != "human" && report != "tsv")
    throw Usage{"--report takes human or tsv"};
  std::vector<CheckRow> rows = run_suite(need(a, "suite"));
  int passed = 0;
  for (const auto& r : rows) {
    if (r.pass) ++passed;
    if (report == "tsv") {
      out << r.name << "\t" << r.expected << "\t" << r.got << "\t"
          << (r.pass ? "pass" : "fail") << "\n";
    } else if (r.pass) {
      out << "pass  " << r.name << ": " << r.got << "\n";
    } else {
      out << "FAIL  " << r.name << ": expected " << r.expected << ", got "
          << r.got << "\n";
    }
  }
  if (report == "human")
    out << passed << "/" << rows.size() << " checks passed\n";
  if (passed != static_cast<int>(rows.size())) {
    err << (rows.size() - passed) << " checks failed\n";
    return 1;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& argv, std::ostream& out,
            std::ostream& err) {
  try {
    Args a = parse_args(argv);
    if (a.verb == "parse") return cmd_parse(a, out);
    if (a.verb == "classify") return cmd_classify(a, out);
    if (a.verb == "translate") return cmd_translate(a, out);
    if (a.verb == "eval") return cmd_eval(a, out);
    if (a.verb == "encode-graph") return cmd_encode_graph(a, out);
    if (a.verb == "decode") return cmd_decode(a, out);
    if (a.verb == "vn-fragment") return cmd_vn_fragment(a, out);
    if (a.verb == "fv-decompose") return cmd_fv_decompose(a, out);
    if (a.verb == "fv-verify") return cmd_fv_verify(a, out);
    if (a.verb == "check") return cmd_check(a, out, err);
    throw Usage{"unknown verb: " + a.verb};
  } catch (const Usage& u) {
    err << "error: " << u.message << "\n" << kUsage;
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace foil
