#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace foil {

// Batch CLI. Verbs: parse, classify, translate, eval, encode-graph, decode,
// vn-fragment, fv-decompose, fv-verify, check.
// Exit codes: 0 success, 1 domain error (bad input semantics), 2 usage error.
// Reports are deterministic: byte-identical across runs for equal inputs.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace foil
