#include <doctest.h>

#include <chrono>

#include "hplp/error.hpp"
#include "hplp/explanations.hpp"
#include "support.hpp"

using namespace hplp;
using testing::load;
using testing::q;

namespace {

ErrorKind error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("probability of composite choices") {
    Program p = load("card_inf.hpl");
    CHECK(prob_composite({{0, "spades(0)", true}}, p) == Rational(1, 3));
    CompositeChoice k1 = {{0, "spades(0)", false}, {1, "clubs(0)", true}, {0, "spades(s(0))", true}};
    normalize(k1);
    CHECK(prob_composite(k1, p) == Rational(1, 9));
    CHECK(prob_composite({}, p) == 1);
    CompositeChoice bad = {{0, "spades(0)", false}, {0, "spades(0)", true}};
    CHECK_FALSE(is_consistent(bad));
    CHECK(error_of([&] { prob_composite(bad, p); }) == ErrorKind::InconsistentChoice);
}

TEST_CASE("composite choice algebra") {
    AtomicChoice a{0, "a", true}, b{1, "b", true};
    CHECK(incompatible({a}, {a.negated()}));
    CHECK_FALSE(incompatible({a}, {b}));
    CHECK(subsumes({a}, {a, b}));
    CHECK_FALSE(subsumes({a, b}, {a}));
    CHECK(merge({a}, {b}) == CompositeChoice{a, b});
    CompositeChoice dup = {b, a, b};
    normalize(dup);
    CHECK(dup == CompositeChoice{a, b});
}

TEST_CASE("already incompatible explanations stay as they are") {
    CompositeChoice k0 = {{0, "spades(0)", true}};
    CompositeChoice k1 = {{0, "spades(0)", false}, {1, "clubs(0)", true}, {0, "spades(s(0))", true}};
    normalize(k1);
    auto out = make_pairwise_incompatible({k0, k1});
    CHECK(out == std::vector<CompositeChoice>{k0, k1});
    CHECK(make_pairwise_incompatible({k1}) == std::vector<CompositeChoice>{k1});
    CHECK(make_pairwise_incompatible({}).empty());
}

TEST_CASE("splitting two independent facts") {
    Program p = parse_program("0.3 :: a.\n0.6 :: b.\n");
    AtomicChoice a{0, "a", true}, b{1, "b", true};
    auto out = make_pairwise_incompatible({{a}, {b}});
    CHECK(is_pairwise_incompatible(out));
    CHECK(out == std::vector<CompositeChoice>{{a}, {a.negated(), b}});
    Rational expect = Rational(3, 10) + Rational(7, 10) * Rational(3, 5);
    CHECK(total_probability(out, p) == expect);
    // brute force over the four worlds of the same program
    Program either = parse_program("0.3 :: a.\n0.6 :: b.\nq :- a.\nq :- b.\n");
    CHECK(brute_force_worlds(either, q("q")) == expect);
}

TEST_CASE("exact inference on the three cards") {
    Program p = load("card.hpl");
    for (const char* query : {"pick(0,spades)", "pick(0,clubs)", "pick(0,hearts)"}) {
        auto b = exact_query(p, q(query));
        CHECK(b.exhausted);
        CHECK(b.lower == Rational(1, 3));
    }
    CHECK(exact_query(p, q("pick(1,spades)")).lower == 0);
    CHECK(exact_query(p, q("pick(0,C)")).lower == 1);
}

TEST_CASE("exact inference on the infinite game") {
    Program p = load("card_inf.hpl");
    ExactOptions opts;
    opts.epsilon = Rational(1, 10000000);
    auto yes = exact_query(p, q("at_least_once_spades"), opts);
    auto no = exact_query(p, q("never_spades"), opts);
    CHECK_FALSE(yes.exhausted);
    CHECK(yes.lower <= Rational(1, 2));
    CHECK(yes.lower >= Rational(1, 2) - Rational(1, 1000000));
    CHECK(no.lower <= Rational(1, 2));
    CHECK(no.lower >= Rational(1, 2) - Rational(1, 1000000));
    CHECK(yes.lower + no.lower <= 1);
    CHECK(yes.delta < opts.epsilon);
}

TEST_CASE("the lower bound tightens as epsilon shrinks") {
    Program p = load("card_inf.hpl");
    Rational prev = 0;
    for (int e = 1; e <= 8; ++e) {
        ExactOptions opts;
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, e);
        opts.epsilon = Rational(mpz_class(1), den);
        auto yes = exact_query(p, q("at_least_once_spades"), opts);
        auto no = exact_query(p, q("never_spades"), opts);
        CHECK(yes.lower >= prev);
        CHECK(yes.lower + no.lower <= 1);
        prev = yes.lower;
    }
    CHECK(prev >= Rational(1, 2) - Rational(1, 1000000));
}

TEST_CASE("the lower bound is monotone in the depth") {
    Program p = load("card_inf.hpl");
    Rational prev = 0;
    for (std::size_t depth : {4, 8, 16, 32, 64, 128, 256}) {
        auto set = collect_explanations(p, q("never_spades"), depth);
        auto split = make_pairwise_incompatible(set.explanations);
        Rational now = total_probability(split, p);
        CHECK(now >= prev);
        prev = now;
    }
}

TEST_CASE("brute force over worlds") {
    CHECK(brute_force_worlds(load("card.hpl"), q("pick(0,hearts)")) == Rational(1, 3));
    CHECK(brute_force_worlds(parse_program("0.7 :: a.\n"), q("a")) == Rational(7, 10));
    CHECK(brute_force_worlds(parse_program("0.7 :: a.\n"), q("\\+ a")) == Rational(3, 10));
    auto u = ground_fact_universe(load("card.hpl"), q("pick(0,hearts)"));
    CHECK(u.size() == 8);  // spades and clubs over {0, spades, clubs, hearts}
}

TEST_CASE("exact inference errors") {
    CHECK(error_of([] { exact_query(load("widget.hpl"), q("ok_widget")); }) == ErrorKind::ProgramHasDensityFacts);
    CHECK(error_of([] { exact_query(load("card_inf_literal.hpl"), q("at_least_once_spades")); }) ==
          ErrorKind::NonGroundableQuery);
    CHECK(error_of([] { brute_force_worlds(load("card_inf.hpl"), q("never_spades")); }) == ErrorKind::UniverseTooLarge);
    std::string many;
    for (int i = 0; i < 21; ++i) many += "0.5 :: f" + std::to_string(i) + ".\n";
    CHECK(error_of([&] { brute_force_worlds(parse_program(many), q("f0")); }) == ErrorKind::UniverseTooLarge);
    ExactOptions zero;
    zero.epsilon = 0;
    CHECK(error_of([&] { exact_query(load("card.hpl"), q("pick(0,spades)"), zero); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("exact equals brute force on the finite card game") {
    Program p = load("card.hpl");
    for (const char* query : {"pick(0,spades)", "pick(0,clubs)", "pick(0,hearts)", "\\+ pick(0,hearts)",
                              "pick(0,spades), pick(0,clubs)"}) {
        auto b = exact_query(p, q(query));
        CHECK(b.exhausted);
        CHECK_MESSAGE(b.lower == brute_force_worlds(p, q(query)), query);
    }
}

TEST_CASE("timing of the acceptance queries") {
    auto start = std::chrono::steady_clock::now();
    exact_query(load("card_inf.hpl"), q("at_least_once_spades"));
    exact_query(load("card_inf.hpl"), q("never_spades"));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(secs < 10.0);
}
