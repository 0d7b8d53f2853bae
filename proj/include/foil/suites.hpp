#pragma once

#include <string>
#include <vector>

namespace foil {

// One executable invariant check: a named property with the expected and
// observed summary values (rendered deterministically).
struct CheckRow {
  std::string name;
  std::string expected;
  std::string got;
  bool pass = false;
};

// Suite names: formula, models, scheme, codings, fv  (or "all").
// Unknown names throw DomainError. Deterministic output, reduced corpora
// sized for interactive use; the full-size corpora live in the test binaries.
std::vector<CheckRow> run_suite(const std::string& name);
std::vector<std::string> suite_names();

}  // namespace foil
