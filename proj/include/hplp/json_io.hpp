#pragma once

#include <string>

#include <json.hpp>

#include "hplp/analysis.hpp"
#include "hplp/ast.hpp"
#include "hplp/explanations.hpp"
#include "hplp/sampler.hpp"

namespace hplp {

using Json = nlohmann::ordered_json;

// AST dump: every node carries its kind and source span. Argument positions are 1-based.
Json to_json(const Span& span);
Json to_json(const Term& term);
Json to_json(const ArithExpr& expr);
Json to_json(const Literal& literal);
Json to_json(const Program& program);
Json to_json(const SignatureTable& table);

// {verdict, diagnostics: [{rule, severity, line, col, message}]}
Json to_json(const Report& report);
// {p_hat, ci_low, ci_high, n, n_completed, depth_exceeded, seed}
Json to_json(const Estimate& estimate);
// {lower: {exact, float}, delta: {exact, float}, exhausted, iterations}
Json to_json(const ProbabilityBound& bound);

// Line-oriented text forms carrying the same values as the JSON forms.
std::string to_text(const Report& report);
std::string to_text(const Estimate& estimate);
std::string to_text(const ProbabilityBound& bound);

}  // namespace hplp
