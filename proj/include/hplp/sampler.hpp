#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hplp/ast.hpp"
#include "hplp/knowledge_base.hpp"
#include "hplp/rng.hpp"
#include "hplp/sample.hpp"
#include "hplp/solver.hpp"

namespace hplp {

struct Estimate {
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t samples_requested = 0;
    std::size_t samples_completed = 0;
    std::size_t successes = 0;
    std::size_t depth_exceeded = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;
};

struct SamplerOptions {
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    std::size_t depth_bound = kDefaultSamplingDepth;
    int workers = 0;  // 0: OpenMP default
};

// One world drawn lazily while resolving the query. `sample` is cleared first.
Outcome draw_outcome(Solver& solver, Sample& sample, RngStream& rng, std::size_t depth_bound);

// Sample i uses stream (seed, i), so the estimate does not depend on the worker count.
Estimate estimate(const Program& program, const std::vector<Literal>& query, const SamplerOptions& options);
Estimate estimate(const KnowledgeBase& kb, const std::vector<Literal>& query, const SamplerOptions& options);

// Single-threaded reference for `estimate`.
Estimate estimate_serial(const KnowledgeBase& kb, const std::vector<Literal>& query, const SamplerOptions& options);

// `estimate` restricted to purely discrete programs, for cross-checking against exact inference.
Estimate estimate_discrete_crosscheck(const Program& program, const std::vector<Literal>& query,
                                      std::size_t samples, std::uint64_t seed);

// 95% interval: normal approximation, Clopper-Pearson when fewer than 10 successes or failures.
std::pair<double, double> confidence_interval(std::size_t successes, std::size_t n);

}  // namespace hplp
