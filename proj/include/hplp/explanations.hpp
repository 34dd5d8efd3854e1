#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hplp/ast.hpp"
#include "hplp/choices.hpp"
#include "hplp/rational.hpp"

namespace hplp {

// Splits K into a pairwise incompatible set covering the same worlds.
// Each new member is cut against the members already emitted, branching on the
// missing atomic choices in (instance, fact, bit) order.
std::vector<CompositeChoice> make_pairwise_incompatible(const std::vector<CompositeChoice>& set);
bool is_pairwise_incompatible(const std::vector<CompositeChoice>& set);

// Sum of member probabilities; only meaningful for a pairwise incompatible set.
Rational total_probability(const std::vector<CompositeChoice>& set, const Program& program);

struct ProbabilityBound {
    Rational lower = 0;
    Rational delta = 0;
    bool exhausted = false;
    std::size_t iterations = 0;
    std::size_t depth = 0;  // depth bound of the last round
};

struct ExactOptions {
    Rational epsilon = Rational(1, 10000000);
    std::size_t max_iterations = 64;
    std::size_t initial_depth = 16;
    std::size_t max_depth = 10000;
};

// Iterative deepening over explanations. Stops when the search is exhaustive (exact answer)
// or when a doubling of the depth bound adds less than epsilon (lower bound).
// Throws ProgramHasDensityFacts or NonGroundableQuery.
ProbabilityBound exact_query(const Program& program, const std::vector<Literal>& query, const ExactOptions& options = {});

// Explanations found within one depth bound: deduplicated and with supersets removed.
struct ExplanationSet {
    std::vector<CompositeChoice> explanations;
    bool exhausted = false;
};
ExplanationSet collect_explanations(const Program& program, const std::vector<Literal>& query, std::size_t depth_bound);

struct GroundFact {
    std::size_t fact = 0;
    std::string instance;
    Rational probability;
};

// Every ground instance of every probabilistic fact over the constants of program and query.
// Throws UniverseTooLarge when the universe is infinite or holds more than max_facts instances.
std::vector<GroundFact> ground_fact_universe(const Program& program, const std::vector<Literal>& query,
                                             std::size_t max_facts = 20);

// Probability by enumerating all 2^n worlds and running the query in each.
Rational brute_force_worlds(const Program& program, const std::vector<Literal>& query, std::size_t max_facts = 20);

}  // namespace hplp
