#include <doctest.h>

#include "hplp/error.hpp"
#include "hplp/parser.hpp"
#include "hplp/printer.hpp"
#include "hplp/solver.hpp"
#include "hplp/unify.hpp"
#include "support.hpp"

using namespace hplp;
using testing::load;
using testing::q;

namespace {

Term t(const std::string& text) { return parse_term(text); }

ExplainResult explain(const Program& p, const std::string& query, std::size_t depth = kDefaultExactDepth) {
    KnowledgeBase kb(p);
    Solver s(kb, kb.compile_query(q(query)));
    return s.explain(depth);
}

CompositeChoice choices(const Program& p, std::initializer_list<std::pair<const char*, bool>> cs) {
    CompositeChoice out;
    for (auto [inst, bit] : cs) {
        std::string name = parse_term(inst).name;
        std::size_t idx = 0;
        for (; idx < p.discrete_facts.size(); ++idx)
            if (p.discrete_facts[idx].atom.name == name) break;
        out.push_back({idx, inst, bit});
    }
    normalize(out);
    return out;
}

ErrorKind solve_error(const std::string& program, const std::string& query) {
    Program p = parse_program(program);
    KnowledgeBase kb(p);
    Solver s(kb, kb.compile_query(q(query)));
    Sample sample;
    RngStream rng(1, 0);
    try {
        s.solve(sample, &rng);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("unify binds variables to constants") {
    auto s = unify(t("pick(0,spades)"), t("pick(X,Y)"));
    REQUIRE(s);
    CHECK(to_text(*s) == "{X/0, Y/spades}");
}

TEST_CASE("unify through successor terms") {
    auto s = unify(t("s(X)"), t("s(s(0))"));
    REQUIRE(s);
    CHECK(to_text(s->apply(t("X"))) == "s(0)");
}

TEST_CASE("occurs check") {
    CHECK_FALSE(unify(t("f(X)"), t("X")));
    CHECK_FALSE(unify(t("g(X, f(X))"), t("g(Y, Y)")));
    CHECK(unify(t("g(X, Y)"), t("g(Y, X)")));
}

TEST_CASE("unify failure is not an error") {
    CHECK_FALSE(unify(t("a"), t("b")));
    CHECK_FALSE(unify(t("f(a)"), t("f(a, b)")));
    CHECK_FALSE(unify(t("f(1)"), t("f(1.0)")));
}

TEST_CASE("unifiers are idempotent") {
    auto s = unify(t("h(X, Y, Z)"), t("h(f(Y), g(Z), a)"));
    REQUIRE(s);
    Term once = s->apply(t("h(X, Y, Z)"));
    CHECK(s->apply(once) == once);
    CHECK(once == s->apply(t("h(f(Y), g(Z), a)")));
    CHECK(to_text(once) == "h(f(g(a)),g(a),a)");
}

TEST_CASE("matching and variants") {
    auto m = match(t("p(X, X)"), t("p(a, a)"));
    REQUIRE(m);
    CHECK_FALSE(match(t("p(X, X)"), t("p(a, b)")));
    CHECK_FALSE(match(t("p(a)"), t("p(X)")));
    CHECK(is_variant(t("p(X, Y)"), t("p(A, B)")));
    CHECK_FALSE(is_variant(t("p(X, X)"), t("p(A, B)")));
}

TEST_CASE("explanation of a single spade") {
    Program p = load("card.hpl");
    auto r = explain(p, "pick(0,spades)");
    REQUIRE(r.answers.size() == 1);
    CHECK(r.answers[0].choices == choices(p, {{"spades(0)", true}}));
    CHECK(r.frontier.empty());
}

TEST_CASE("explanation through negation") {
    Program p = load("card.hpl");
    auto r = explain(p, "pick(0,clubs)");
    REQUIRE(r.answers.size() == 1);
    CHECK(r.answers[0].choices == choices(p, {{"spades(0)", false}, {"clubs(0)", true}}));
    CHECK(prob_composite(r.answers[0].choices, p) == Rational(1, 3));
}

TEST_CASE("answers are ground and enumerated in source order") {
    Program p = load("card.hpl");
    auto r = explain(p, "pick(R, C)");
    REQUIRE(r.answers.size() == 3);
    CHECK(r.variables == std::vector<std::string>{"R", "C"});
    CHECK(to_text(r.answers[0].bindings[1]) == "spades");
    CHECK(to_text(r.answers[1].bindings[1]) == "clubs");
    CHECK(to_text(r.answers[2].bindings[1]) == "hearts");
    for (const auto& a : r.answers)
        for (const auto& b : a.bindings) CHECK(b.is_ground());
}

TEST_CASE("the infinite game yields the series of explanations") {
    Program p = load("card_inf.hpl");
    auto r = explain(p, "at_least_once_spades", 40);
    REQUIRE(r.answers.size() >= 2);
    CHECK(r.answers[0].choices == choices(p, {{"spades(0)", true}}));
    CHECK(r.answers[1].choices == choices(p, {{"spades(0)", false}, {"clubs(0)", true}, {"spades(s(0))", true}}));
    CHECK(prob_composite(r.answers[1].choices, p) == Rational(1, 9));
    CHECK_FALSE(r.frontier.empty());
}

TEST_CASE("the depth bound counts resolution steps") {
    Program p = load("card.hpl");
    auto shallow = explain(p, "pick(0,spades)", 1);
    CHECK(shallow.answers.empty());
    CHECK_FALSE(shallow.frontier.empty());
    auto enough = explain(p, "pick(0,spades)", 2);
    CHECK(enough.answers.size() == 1);
}

TEST_CASE("sampling against a fixed world") {
    Program p = load("gaussian_mixture.hpl");
    KnowledgeBase kb(p);
    Solver s(kb, kb.compile_query(q("mix(X)")));
    Sample world;
    world.fixed = true;
    world.discrete[choice_key(0, "h")] = true;
    world.continuous["d0:"] = 0.3;
    std::vector<Term> bindings;
    CHECK(s.solve(world, nullptr, kDefaultSamplingDepth, &bindings) == Outcome::True);
    REQUIRE(bindings.size() == 1);
    CHECK(bindings[0].kind == Term::Kind::Real);
    CHECK(bindings[0].real == 0.3);

    Solver tail(kb, kb.compile_query(q("mix")));
    CHECK(tail.solve(world, nullptr) == Outcome::False);
    world.discrete[choice_key(0, "h")] = false;
    world.continuous["d1:"] = 4.5;
    CHECK(tail.solve(world, nullptr) == Outcome::True);
}

TEST_CASE("a fixed world must decide every fact it meets") {
    Program p = load("card.hpl");
    KnowledgeBase kb(p);
    Solver s(kb, kb.compile_query(q("pick(0,clubs)")));
    Sample world;
    world.fixed = true;
    world.discrete[choice_key(0, "spades(0)")] = false;
    CHECK_THROWS_AS(s.solve(world, nullptr), Error);
}

TEST_CASE("depth exceeded is not failure") {
    Program p = parse_program("p :- p.\nq :- fail_here.\n");
    KnowledgeBase kb(p);
    Sample sample;
    RngStream rng(1, 0);
    Solver loop(kb, kb.compile_query(q("p")));
    CHECK(loop.solve(sample, &rng, 1000) == Outcome::DepthExceeded);
    Solver fails(kb, kb.compile_query(q("q")));
    CHECK(fails.solve(sample, &rng, 1000) == Outcome::False);
    Solver neg(kb, kb.compile_query(q("\\+ p")));
    CHECK(neg.solve(sample, &rng, 1000) == Outcome::DepthExceeded);
}

TEST_CASE("runtime errors") {
    CHECK(solve_error("0.5 :: q(_).\np :- \\+ q(X).\n", "p") == ErrorKind::FloundedNegation);
    CHECK(solve_error("0.5 :: q(_).\np :- q(X).\n", "p") == ErrorKind::NonGroundFact);
    CHECK(solve_error("m(_,X,Y) : gaussian(Y, X, 1).\np :- m(a, Z, Y).\n", "p") == ErrorKind::UnboundDensityParameter);
    CHECK(solve_error("p :- X > 1.\n", "p") == ErrorKind::UnboundVariable);
    CHECK(solve_error("v(X) : gaussian(X,1,5).\nw(_,M) : gaussian(M,2,2).\nr(M) :- v(X), w(X,M).\n", "r(M)") ==
          ErrorKind::ContinuousIndex);
    CHECK(solve_error("m(X) : gaussian(X,0,V).\nd(0).\np :- d(V), m(X).\n", "p") == ErrorKind::UnboundDensityParameter);
    CHECK(solve_error("m(V,X) : gaussian(X,0,V).\nd(0).\np :- d(V), m(V, X).\n", "p") == ErrorKind::InvalidParameter);
}

TEST_CASE("exact mode refuses density facts") {
    Program p = load("widget.hpl");
    KnowledgeBase kb(p);
    Solver s(kb, kb.compile_query(q("ok_widget")));
    CHECK_THROWS_AS(s.explain(), Error);
}

TEST_CASE("definitions and comparisons") {
    Program p = parse_program("two(X) :- X =:= 1 + 1.\nbig :- two(X), X > 1.5.\nsmall :- two(X), X =< 1.\n");
    KnowledgeBase kb(p);
    Sample sample;
    RngStream rng(1, 0);
    std::vector<Term> b;
    Solver s(kb, kb.compile_query(q("two(X)")));
    CHECK(s.solve(sample, &rng, 100, &b) == Outcome::True);
    CHECK(to_text(b[0]) == "2");
    Solver big(kb, kb.compile_query(q("big")));
    CHECK(big.solve(sample, &rng) == Outcome::True);
    Solver small(kb, kb.compile_query(q("small")));
    CHECK(small.solve(sample, &rng) == Outcome::False);
    Solver bound(kb, kb.compile_query(q("two(2)")));
    CHECK(bound.solve(sample, &rng) == Outcome::True);
}

TEST_CASE("duals of explanation sets") {
    AtomicChoice a{0, "a", true}, b{1, "b", true}, c{2, "c", true};
    auto d = dual_choices({{a}, {b, c}});
    // every dual contradicts every member, and none is redundant
    REQUIRE(d.size() == 2);
    for (const auto& k : d) {
        CHECK(incompatible(k, {a}));
        CHECK(incompatible(k, {b, c}));
    }
    CHECK(dual_choices({}) == std::vector<CompositeChoice>{CompositeChoice{}});
    CHECK(dual_choices({{}}).empty());
}
