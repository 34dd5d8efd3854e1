#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hplp/ast.hpp"
#include "hplp/diagnostics.hpp"

namespace hplp {

enum class Verdict { WellDefined, IllDefined, Unverified };
const char* to_string(Verdict verdict);

struct Report {
    std::vector<Diagnostic> diagnostics;
    Verdict verdict = Verdict::WellDefined;

    bool has_rule(Rule rule) const;
};

inline constexpr std::size_t kDefaultUnfoldDepth = 3;

// Head variables at term positions must occur in a positive body literal.
std::vector<Diagnostic> check_range_restriction(const Program& program);

// Term arguments of probabilistic facts called from a body must already be bound.
std::vector<Diagnostic> check_prev_positive_literal(const Program& program);

// Clauses that define the same continuous random variable must have exclusive bodies.
std::vector<Diagnostic> check_mutual_exclusivity(const Program& program, std::size_t unfold_depth = kDefaultUnfoldDepth);

// Continuous values only as density parameters, in arithmetic, or in continuous positions.
std::vector<Diagnostic> check_continuous_usage(const Program& program);

// Negations and arithmetic whose variables may be unbound when selected (warnings).
std::vector<Diagnostic> check_flounder_risk(const Program& program);

Verdict verdict_of(const std::vector<Diagnostic>& diagnostics);
Report validate(const Program& program, std::size_t unfold_depth = kDefaultUnfoldDepth);

enum class PairVerdict { Exclusive, Overlapping, Unknown };
const char* to_string(PairVerdict verdict);

// One pair of definitions (clauses or density facts) of a predicate with continuous
// arguments. first == second compares two groundings of the same clause.
struct DefinitionPair {
    PredKey pred;
    std::size_t first = 0;
    std::size_t second = 0;
    Span first_span;
    Span second_span;
    PairVerdict verdict = PairVerdict::Unknown;
};

std::vector<DefinitionPair> mutual_exclusion_pairs(const Program& program, std::size_t unfold_depth);

// Groundness analysis of a query: every probabilistic fact is called with ground term
// arguments, every negation and comparison is ground when selected, and answers are ground.
struct QueryCheck {
    bool ground_instantiable = true;
    std::string reason;
};

QueryCheck check_query(const Program& program, const std::vector<Literal>& query);

}  // namespace hplp
