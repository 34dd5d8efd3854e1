#include "hplp/sampler.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "hplp/error.hpp"

namespace hplp {

Outcome draw_outcome(Solver& solver, Sample& sample, RngStream& rng, std::size_t depth_bound) {
    sample.clear();
    sample.fixed = false;
    return solver.solve(sample, &rng, depth_bound);
}

namespace {

double binomial_cdf(std::size_t k, std::size_t n, double p) {
    if (p <= 0.0) return 1.0;
    if (p >= 1.0) return k >= n ? 1.0 : 0.0;
    auto term = [&](std::size_t j) {
        double lg = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
        return std::exp(lg + j * std::log(p) + (n - j) * std::log1p(-p));
    };
    double s = 0.0;
    if (k < n / 2) {
        for (std::size_t j = 0; j <= k; ++j) s += term(j);
        return std::min(1.0, s);
    }
    for (std::size_t j = k + 1; j <= n; ++j) s += term(j);
    return std::max(0.0, 1.0 - s);
}

// Smallest p with f(p) <= target for a decreasing f.
template <class F>
double bisect(F f, double target) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > target) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

Estimate finish(std::size_t successes, std::size_t completed, std::size_t exceeded, const SamplerOptions& options) {
    if (completed == 0)
        throw Error(ErrorKind::AllSamplesDepthExceeded,
                    "all " + std::to_string(options.samples) + " samples exceeded the depth bound");
    Estimate e;
    e.samples_requested = options.samples;
    e.samples_completed = completed;
    e.successes = successes;
    e.depth_exceeded = exceeded;
    e.seed = options.seed;
    e.p_hat = static_cast<double>(successes) / static_cast<double>(completed);
    auto [lo, hi] = confidence_interval(successes, completed);
    e.ci_low = std::min(lo, e.p_hat);
    e.ci_high = std::max(hi, e.p_hat);
    if (exceeded * 1000 > options.samples)
        e.warnings.push_back(std::to_string(exceeded) + " of " + std::to_string(options.samples) +
                             " samples exceeded the depth bound and were left out");
    return e;
}

void check_options(const SamplerOptions& options) {
    if (options.samples == 0) throw Error(ErrorKind::InvalidArgument, "the number of samples must be at least 1");
}

}  // namespace

std::pair<double, double> confidence_interval(std::size_t successes, std::size_t n) {
    if (n == 0) return {0.0, 1.0};
    double p = static_cast<double>(successes) / static_cast<double>(n);
    if (successes >= 10 && n - successes >= 10) {
        double half = 1.959963984540054 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
        return {std::max(0.0, p - half), std::min(1.0, p + half)};
    }
    const double alpha = 0.025;
    double lo = 0.0, hi = 1.0;
    if (successes > 0)  // P(X >= k; lo) = alpha
        lo = bisect([&](double q) { return binomial_cdf(successes - 1, n, q); }, 1.0 - alpha);
    if (successes < n)  // P(X <= k; hi) = alpha
        hi = bisect([&](double q) { return binomial_cdf(successes, n, q); }, alpha);
    return {lo, hi};
}

Estimate estimate_serial(const KnowledgeBase& kb, const std::vector<Literal>& query, const SamplerOptions& options) {
    check_options(options);
    Solver solver(kb, kb.compile_query(query));
    Sample sample;
    std::size_t successes = 0, exceeded = 0;
    for (std::size_t i = 0; i < options.samples; ++i) {
        RngStream rng(options.seed, i);
        Outcome o = draw_outcome(solver, sample, rng, options.depth_bound);
        if (o == Outcome::True) ++successes;
        if (o == Outcome::DepthExceeded) ++exceeded;
    }
    return finish(successes, options.samples - exceeded, exceeded, options);
}

Estimate estimate(const KnowledgeBase& kb, const std::vector<Literal>& query, const SamplerOptions& options) {
    check_options(options);
    auto compiled = kb.compile_query(query);
    const auto n = static_cast<std::int64_t>(options.samples);
    const int threads = options.workers > 0 ? options.workers : omp_get_max_threads();

    std::size_t successes = 0, exceeded = 0;
    std::int64_t failed_at = std::numeric_limits<std::int64_t>::max();
    std::exception_ptr failure;

#pragma omp parallel num_threads(threads) reduction(+ : successes, exceeded)
    {
        Solver solver(kb, compiled);
        Sample sample;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            try {
                RngStream rng(options.seed, static_cast<std::uint64_t>(i));
                Outcome o = draw_outcome(solver, sample, rng, options.depth_bound);
                if (o == Outcome::True) ++successes;
                if (o == Outcome::DepthExceeded) ++exceeded;
            } catch (...) {
#pragma omp critical(hplp_sampler_error)
                {
                    if (i < failed_at) {
                        failed_at = i;
                        failure = std::current_exception();
                    }
                }
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    return finish(successes, options.samples - exceeded, exceeded, options);
}

Estimate estimate(const Program& program, const std::vector<Literal>& query, const SamplerOptions& options) {
    KnowledgeBase kb(program);
    return estimate(kb, query, options);
}

Estimate estimate_discrete_crosscheck(const Program& program, const std::vector<Literal>& query,
                                      std::size_t samples, std::uint64_t seed) {
    if (program.has_density_facts())
        throw Error(ErrorKind::ProgramHasDensityFacts, "the cross-check needs a purely discrete program");
    SamplerOptions options;
    options.samples = samples;
    options.seed = seed;
    return estimate(program, query, options);
}

}  // namespace hplp
