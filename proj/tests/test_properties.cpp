#include <doctest.h>

#include <cmath>
#include <random>

#include "hplp/explanations.hpp"
#include "hplp/json_io.hpp"
#include "hplp/printer.hpp"
#include "hplp/sampler.hpp"
#include "hplp/unify.hpp"
#include "random_programs.hpp"
#include "support.hpp"

using namespace hplp;
using testing::q;

namespace {

constexpr int kPrograms = 50;

struct World {
    CompositeChoice choice;
    Sample sample;
};

std::vector<World> all_worlds(const std::vector<GroundFact>& universe) {
    std::vector<World> out;
    for (std::uint64_t mask = 0; mask < (1ull << universe.size()); ++mask) {
        World w;
        w.sample.fixed = true;
        for (std::size_t i = 0; i < universe.size(); ++i) {
            bool bit = (mask >> i) & 1;
            w.choice.push_back({universe[i].fact, universe[i].instance, bit});
            w.sample.discrete[choice_key(universe[i].fact, universe[i].instance)] = bit;
        }
        normalize(w.choice);
        out.push_back(std::move(w));
    }
    return out;
}

bool covered(const std::vector<CompositeChoice>& set, const CompositeChoice& world) {
    for (const auto& k : set)
        if (subsumes(k, world)) return true;
    return false;
}

struct Case {
    testing::RandomProgram source;
    Program program;
};

const std::vector<Case>& corpus() {
    static const std::vector<Case> cases = [] {
        std::vector<Case> out;
        for (int i = 0; i < kPrograms; ++i) {
            auto src = testing::random_discrete_program(1000 + i);
            Program p = parse_program(src.text);
            out.push_back({src, p});
        }
        return out;
    }();
    return cases;
}

Term random_term(std::mt19937_64& gen, int depth) {
    static const char* vars[] = {"X", "Y", "Z"};
    int pick = std::uniform_int_distribution<int>(0, depth > 0 ? 5 : 3)(gen);
    switch (pick) {
        case 0:
        case 1: return Term::variable(vars[std::uniform_int_distribution<int>(0, 2)(gen)]);
        case 2: return Term::symbol("a");
        case 3: return Term::symbol("b");
        case 4: return Term::compound("f", {random_term(gen, depth - 1)});
        default: return Term::compound("g", {random_term(gen, depth - 1), random_term(gen, depth - 1)});
    }
}

}  // namespace

TEST_CASE("the generator stays within the fact budget") {
    for (const auto& c : corpus()) {
        CHECK(c.source.ground_facts <= 12);
        CHECK(ground_fact_universe(c.program, q(c.source.queries[0])).size() <= 12);
    }
}

TEST_CASE("world probabilities sum to one") {
    for (const auto& c : corpus()) {
        auto universe = ground_fact_universe(c.program, q(c.source.queries[0]));
        Rational total = 0;
        for (const auto& w : all_worlds(universe)) total += prob_composite(w.choice, c.program);
        CHECK_MESSAGE(total == 1, c.source.text);
    }
}

TEST_CASE("exact inference equals brute force") {
    for (const auto& c : corpus()) {
        for (const auto& query : c.source.queries) {
            auto b = exact_query(c.program, q(query));
            CHECK_MESSAGE(b.exhausted, c.source.text, query);
            CHECK_MESSAGE(b.lower == brute_force_worlds(c.program, q(query)), c.source.text, query);
        }
    }
}

TEST_CASE("sampler agrees with exact inference") {
    std::size_t checked = 0;
    for (const auto& c : corpus()) {
        for (const auto& query : c.source.queries) {
            double p = to_double(brute_force_worlds(c.program, q(query)));
            Estimate e = estimate_discrete_crosscheck(c.program, q(query), 10000, 77);
            double sigma = std::sqrt(p * (1 - p) / 10000);
            CHECK_MESSAGE(std::abs(e.p_hat - p) <= 6 * sigma, c.source.text, query);
            ++checked;
        }
    }
    CHECK(checked >= kPrograms * 4);
}

TEST_CASE("splitting preserves the covered worlds") {
    std::mt19937_64 gen(5);
    for (const auto& c : corpus()) {
        auto universe = ground_fact_universe(c.program, q(c.source.queries[0]));
        auto worlds = all_worlds(universe);
        std::vector<std::vector<CompositeChoice>> sets;
        for (const auto& query : c.source.queries)
            sets.push_back(collect_explanations(c.program, q(query), kDefaultExactDepth).explanations);
        for (int r = 0; r < 3 && !universe.empty(); ++r) {  // arbitrary overlapping sets
            std::vector<CompositeChoice> set;
            int members = std::uniform_int_distribution<int>(1, 4)(gen);
            for (int m = 0; m < members; ++m) {
                CompositeChoice k;
                for (const auto& g : universe)
                    if (std::uniform_int_distribution<int>(0, 2)(gen) == 0)
                        k.push_back({g.fact, g.instance, std::uniform_int_distribution<int>(0, 1)(gen) == 1});
                normalize(k);
                set.push_back(k);
            }
            sets.push_back(set);
        }
        for (const auto& set : sets) {
            auto split = make_pairwise_incompatible(set);
            CHECK(is_pairwise_incompatible(split));
            Rational mass = 0;
            for (const auto& w : worlds) {
                bool before = covered(set, w.choice);
                CHECK(before == covered(split, w.choice));
                if (before) mass += prob_composite(w.choice, c.program);
            }
            CHECK(mass == total_probability(split, c.program));
        }
    }
}

TEST_CASE("explanations entail the query in every compatible world") {
    for (const auto& c : corpus()) {
        KnowledgeBase kb(c.program);
        for (const auto& query : c.source.queries) {
            auto universe = ground_fact_universe(c.program, q(query));
            auto worlds = all_worlds(universe);
            auto expl = collect_explanations(c.program, q(query), kDefaultExactDepth).explanations;
            Solver s(kb, kb.compile_query(q(query)));
            for (const auto& k : expl)
                for (auto& w : worlds)
                    if (subsumes(k, w.choice)) CHECK(s.solve(w.sample, nullptr) == Outcome::True);
        }
    }
}

TEST_CASE("a goal and its negation never agree in one world") {
    for (const auto& c : corpus()) {
        KnowledgeBase kb(c.program);
        const std::string& query = c.source.queries[0];
        auto worlds = all_worlds(ground_fact_universe(c.program, q(query)));
        Solver pos(kb, kb.compile_query(q(query)));
        Solver neg(kb, kb.compile_query(q("\\+ " + query)));
        for (auto& w : worlds) CHECK(pos.solve(w.sample, nullptr) != neg.solve(w.sample, nullptr));
    }
    // also on lazily drawn worlds of a hybrid program
    Program p = testing::load("card_cont.hpl");
    KnowledgeBase kb(p);
    Solver pos(kb, kb.compile_query(q("at_least_once_spades")));
    Solver neg(kb, kb.compile_query(q("never_spades")));
    for (std::uint64_t i = 0; i < 500; ++i) {
        Sample world;
        RngStream rng(3, i);
        Outcome a = pos.solve(world, &rng);
        Outcome b = neg.solve(world, &rng);
        CHECK(a != b);
    }
}

TEST_CASE("answers are ground") {
    for (const auto& c : corpus()) {
        if (c.program.discrete_facts.size() < 2 || c.source.text.find("g0(") == std::string::npos) continue;
        auto r = [&] {
            KnowledgeBase kb(c.program);
            Solver s(kb, kb.compile_query(q("d(X), g0(X)")));
            return s.explain();
        }();
        for (const auto& a : r.answers)
            for (const auto& b : a.bindings) CHECK(b.is_ground());
    }
    for (const char* query : {"pick(R, C)", "pick(R, spades)"}) {
        KnowledgeBase kb(testing::load("card_inf.hpl"));
        Solver s(kb, kb.compile_query(q(query)));
        auto r = s.explain(60);
        CHECK_FALSE(r.answers.empty());
        for (const auto& a : r.answers)
            for (const auto& b : a.bindings) CHECK(b.is_ground());
    }
}

TEST_CASE("seeded runs are byte-identical") {
    for (const auto& [file, query] : std::vector<std::pair<std::string, std::string>>{
             {"card_cont.hpl", "at_least_once_spades"}, {"widget.hpl", "ok_widget"}, {"wheel_joint.hpl", "success(0)"}}) {
        SamplerOptions o;
        o.samples = 5000;
        o.seed = 31337;
        Program p = testing::load(file);
        CHECK(to_json(estimate(p, q(query), o)).dump() == to_json(estimate(p, q(query), o)).dump());
    }
}

TEST_CASE("unifiers are most general") {
    std::mt19937_64 gen(17);
    const std::vector<Term> ground = {Term::symbol("a"), Term::symbol("b"), Term::compound("f", {Term::symbol("a")}),
                                      Term::compound("g", {Term::symbol("a"), Term::symbol("b")})};
    int unifiable = 0;
    for (int trial = 0; trial < 400; ++trial) {
        Term a = random_term(gen, 2), b = random_term(gen, 2);
        auto sigma = unify(a, b);
        if (!sigma) continue;
        ++unifiable;
        Term as = sigma->apply(a);
        CHECK(as == sigma->apply(b));
        CHECK(sigma->apply(as) == as);
        for (const auto& x : ground)
            for (const auto& y : ground)
                for (const auto& z : ground) {
                    auto mu = Substitution::simultaneous({{"X", x}, {"Y", y}, {"Z", z}});
                    if (mu.apply(a) != mu.apply(b)) continue;
                    auto rho = match(as, mu.apply(a));
                    CHECK_MESSAGE(rho.has_value(), to_text(a), " ", to_text(b));
                }
    }
    CHECK(unifiable > 50);
}
