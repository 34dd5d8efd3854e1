#pragma once

#include <set>
#include <string>
#include <vector>

#include "hplp/ast.hpp"
#include "hplp/diagnostics.hpp"

namespace hplp {

// Density outputs and density parameters seed the table; continuity then flows upward
// from clause bodies and `=:=` targets into head positions until nothing changes.
// `:- continuous/2` directives fix a predicate's signature outright.
// Positions that are continuous and also hold a term constant are reported as SIG_CONFLICT.
SignatureTable infer_signatures(const Program& program, std::vector<Diagnostic>* conflicts = nullptr);

// Variables of a clause that hold continuous values under `table`.
std::set<std::string> continuous_variables(const Clause& clause, const SignatureTable& table);

// Variables of a density fact template that hold continuous values (output and parameters).
std::set<std::string> continuous_variables(const DensityFact& fact);

}  // namespace hplp
