#pragma once

#include <string>

#include "hplp/ast.hpp"

namespace hplp {

// Source-syntax rendering; parse_program(to_text(p)) is structurally identical to p.
std::string to_text(const Term& term);
std::string to_text(const ArithExpr& expr);
std::string to_text(const Literal& literal);
std::string to_text(const Clause& clause);
std::string to_text(const DiscreteFact& fact);
std::string to_text(const DensityFact& fact);
std::string to_text(const ContinuousDecl& decl);
std::string to_text(const Program& program);

std::string format_real(double value);

}  // namespace hplp
