#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "hplp/knowledge_base.hpp"
#include "hplp/parser.hpp"
#include "hplp/sampler.hpp"

namespace {

struct Case {
    const char* file;
    const char* query;
};

const Case kCases[] = {
    {"card_cont.hpl", "at_least_once_spades"},
    {"gaussian_mixture.hpl", "mix"},
    {"widget.hpl", "ok_widget"},
    {"wheel_joint.hpl", "success(0)"},
};

hplp::Program load(const char* file) {
    std::ifstream in(std::string(HPLP_PROGRAMS_DIR) + "/" + file);
    std::stringstream ss;
    ss << in.rdbuf();
    return hplp::parse_program(ss.str());
}

template <bool Parallel>
void run(benchmark::State& state) {
    const Case& c = kCases[state.range(0)];
    hplp::Program program = load(c.file);
    hplp::KnowledgeBase kb(program);
    auto query = hplp::parse_query(c.query);
    hplp::SamplerOptions o;
    o.samples = static_cast<std::size_t>(state.range(1));
    o.seed = 42;
    for (auto _ : state) {
        auto e = Parallel ? hplp::estimate(kb, query, o) : hplp::estimate_serial(kb, query, o);
        benchmark::DoNotOptimize(e.p_hat);
    }
    state.SetLabel(c.file);
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

void args(benchmark::internal::Benchmark* b) {
    for (int i = 0; i < 4; ++i) b->Args({i, 20000});
    b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(run<false>)->Name("estimate_serial")->Apply(args);
BENCHMARK(run<true>)->Name("estimate_openmp")->Apply(args);

BENCHMARK_MAIN();
