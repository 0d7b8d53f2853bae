#include "foil/signature.hpp"

#include <set>

#include "foil/errors.hpp"

namespace foil {

Signature::Signature(std::vector<Rel> rels, bool has_equality)
    : rels_(std::move(rels)), has_equality_(has_equality) {
  std::set<std::string> seen;
  for (const auto& r : rels_) {
    if (r.arity < 1)
      throw DomainError("relation " + r.name + " must have arity >= 1");
    if (!seen.insert(r.name).second)
      throw DomainError("duplicate relation " + r.name);
  }
}

std::optional<int> Signature::arity_of(const std::string& rel) const {
  for (const auto& r : rels_)
    if (r.name == rel) return r.arity;
  return std::nullopt;
}

std::string Signature::descriptor() const {
  std::string out;
  for (const auto& r : rels_) {
    if (!out.empty()) out += ',';
    out += r.name + ":" + std::to_string(r.arity);
  }
  if (has_equality_) {
    if (!out.empty()) out += ',';
    out += "eq";
  }
  return out;
}

Signature Signature::parse_descriptor(const std::string& text) {
  std::vector<Rel> rels;
  bool eq = false;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    std::string item = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? text.size() : comma + 1;
    if (item.empty()) throw DomainError("empty item in signature descriptor");
    if (item == "eq") {
      eq = true;
      continue;
    }
    size_t colon = item.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= item.size())
      throw DomainError("bad signature item '" + item + "'");
    std::string name = item.substr(0, colon);
    int arity = 0;
    for (size_t i = colon + 1; i < item.size(); ++i) {
      if (item[i] < '0' || item[i] > '9')
        throw DomainError("bad arity in signature item '" + item + "'");
      arity = arity * 10 + (item[i] - '0');
    }
    rels.push_back({name, arity});
  }
  return Signature(rels, eq);
}

Signature graph_signature() { return Signature({{"E", 2}}, false); }
Signature poset_signature() { return Signature({{"Le", 2}}, true); }
Signature arithmetic_signature() {
  return Signature({{"Plus", 3}, {"Times", 3}}, true);
}

}  // namespace foil
