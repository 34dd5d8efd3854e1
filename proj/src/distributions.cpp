#include "hplp/distributions.hpp"

#include <cmath>
#include <numbers>

#include "hplp/error.hpp"
#include "hplp/printer.hpp"

namespace hplp {

double eval_arith(const ArithExpr& expr, const Valuation& bindings) {
    using K = ArithExpr::Kind;
    switch (expr.kind) {
        case K::Number: return expr.value;
        case K::Variable: {
            auto it = bindings.find(expr.text);
            if (it == bindings.end())
                throw Error(ErrorKind::UnboundVariable, "variable " + expr.text + " is unbound in arithmetic");
            return it->second;
        }
        case K::Neg: return -eval_arith(expr.operands.at(0), bindings);
        case K::Add: return eval_arith(expr.operands.at(0), bindings) + eval_arith(expr.operands.at(1), bindings);
        case K::Sub: return eval_arith(expr.operands.at(0), bindings) - eval_arith(expr.operands.at(1), bindings);
        case K::Mul: return eval_arith(expr.operands.at(0), bindings) * eval_arith(expr.operands.at(1), bindings);
        case K::Div: {
            double num = eval_arith(expr.operands.at(0), bindings);
            double den = eval_arith(expr.operands.at(1), bindings);
            if (den == 0.0) throw Error(ErrorKind::DivisionByZero, "division by zero in " + to_text(expr));
            return num / den;
        }
    }
    return 0.0;
}

bool eval_compare(CompareOp op, double lhs, double rhs) {
    switch (op) {
        case CompareOp::Less: return lhs < rhs;
        case CompareOp::Greater: return lhs > rhs;
        case CompareOp::LessEq: return lhs <= rhs;
        case CompareOp::GreaterEq: return lhs >= rhs;
    }
    return false;
}

void check_parameters(DensityFamily family, const std::vector<double>& params) {
    if (params.size() != 2) throw Error(ErrorKind::InvalidParameter, "densities take exactly two parameters");
    if (!std::isfinite(params[0]) || !std::isfinite(params[1]))
        throw Error(ErrorKind::InvalidParameter, "density parameters must be finite");
    if (family == DensityFamily::Gaussian && !(params[1] > 0.0))
        throw Error(ErrorKind::InvalidParameter, "gaussian variance must be positive, got " + format_real(params[1]));
    if (family == DensityFamily::UniformDens && !(params[0] < params[1]))
        throw Error(ErrorKind::InvalidParameter,
                    "uniform_dens needs low < high, got " + format_real(params[0]) + " and " + format_real(params[1]));
}

double sample(DensityFamily family, const std::vector<double>& params, RngStream& rng) {
    check_parameters(family, params);
    if (family == DensityFamily::Gaussian) return params[0] + std::sqrt(params[1]) * rng.normal();
    double x = params[0] + (params[1] - params[0]) * rng.uniform();
    return x < params[1] ? x : params[0];
}

double pdf(DensityFamily family, const std::vector<double>& params, double x) {
    check_parameters(family, params);
    if (family == DensityFamily::Gaussian) {
        double d = x - params[0];
        return std::exp(-d * d / (2.0 * params[1])) / std::sqrt(2.0 * std::numbers::pi * params[1]);
    }
    if (x < params[0] || x > params[1]) return 0.0;
    return 1.0 / (params[1] - params[0]);
}

std::vector<double> eval_parameters(const DensitySpec& spec, const Valuation& bindings) {
    std::vector<double> out;
    for (const auto& p : spec.params) {
        try {
            out.push_back(eval_arith(p, bindings));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::UnboundVariable) throw;
            throw Error(ErrorKind::UnboundDensityParameter,
                        std::string("parameter ") + to_text(p) + " of " + to_string(spec.family) + " is unbound");
        }
    }
    return out;
}

double sample(const DensitySpec& spec, const Valuation& bindings, RngStream& rng) {
    return sample(spec.family, eval_parameters(spec, bindings), rng);
}

double pdf(const DensitySpec& spec, const Valuation& bindings, double x) {
    return pdf(spec.family, eval_parameters(spec, bindings), x);
}

double normal_sf(double x, double mean, double variance) {
    return 0.5 * std::erfc((x - mean) / std::sqrt(2.0 * variance));
}

}  // namespace hplp
