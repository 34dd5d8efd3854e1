#pragma once

#include <map>
#include <string>
#include <vector>

#include "hplp/ast.hpp"
#include "hplp/rng.hpp"

namespace hplp {

using Valuation = std::map<std::string, double>;

// +, -, *, / over reals. Throws UnboundVariable or DivisionByZero.
double eval_arith(const ArithExpr& expr, const Valuation& bindings);
bool eval_compare(CompareOp op, double lhs, double rhs);

// gaussian: {mean, variance}; uniform_dens: {low, high}.
// Throws InvalidParameter when variance <= 0 or low >= high.
void check_parameters(DensityFamily family, const std::vector<double>& params);
double sample(DensityFamily family, const std::vector<double>& params, RngStream& rng);
double pdf(DensityFamily family, const std::vector<double>& params, double x);

// Parameter expressions are evaluated under `bindings`; a missing variable raises UnboundDensityParameter.
std::vector<double> eval_parameters(const DensitySpec& spec, const Valuation& bindings);
double sample(const DensitySpec& spec, const Valuation& bindings, RngStream& rng);
double pdf(const DensitySpec& spec, const Valuation& bindings, double x);

// Upper tail of N(mean, variance) above x.
double normal_sf(double x, double mean, double variance);

}  // namespace hplp
