#include <doctest.h>

#include "hplp/error.hpp"
#include "hplp/lexer.hpp"
#include "hplp/parser.hpp"
#include "hplp/printer.hpp"
#include "hplp/signatures.hpp"
#include "support.hpp"

using namespace hplp;
using testing::load;

namespace {

std::vector<TokenKind> kinds(const std::string& text) {
    std::vector<TokenKind> out;
    for (const auto& t : tokenize(text)) out.push_back(t.kind);
    return out;
}

std::set<std::size_t> cont(const Program& p, const std::string& name, std::size_t arity) {
    return p.signatures.continuous_positions({name, arity});
}

int parse_error_line(const std::string& text) {
    try {
        parse_program(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

void check_spans(const Term& t, std::size_t size) {
    CHECK(t.span.begin <= t.span.end);
    CHECK(t.span.end <= size);
    for (const auto& a : t.args) {
        CHECK(a.span.begin >= t.span.begin);
        CHECK(a.span.end <= t.span.end);
        check_spans(a, size);
    }
}

}  // namespace

TEST_CASE("tokenize a discrete fact") {
    auto toks = tokenize("1/3 :: spades(X).");
    std::vector<TokenKind> expect = {TokenKind::Rational, TokenKind::DoubleColon, TokenKind::Atom, TokenKind::LParen,
                                     TokenKind::Var,      TokenKind::RParen,      TokenKind::Dot};
    CHECK(kinds("1/3 :: spades(X).") == expect);
    CHECK(toks[0].text == "1/3");
    CHECK(toks[2].text == "spades");
    CHECK(toks[4].text == "X");
    CHECK(toks[2].span.line == 1);
    CHECK(toks[2].span.col == 8);
}

TEST_CASE("tokenize edge cases") {
    CHECK(tokenize("").empty());
    CHECK(tokenize("% only a comment\n").empty());
    CHECK(kinds("\\+ h") == std::vector<TokenKind>{TokenKind::Naf, TokenKind::Atom});
    CHECK(kinds("X =:= Y + Z") ==
          std::vector<TokenKind>{TokenKind::Var, TokenKind::ArithEq, TokenKind::Var, TokenKind::Plus, TokenKind::Var});
    CHECK(kinds("V =< 3.14") == std::vector<TokenKind>{TokenKind::Var, TokenKind::LessEq, TokenKind::Real});
    auto toks = tokenize("a.\n  b.");
    CHECK(toks[2].span.line == 2);
    CHECK(toks[2].span.col == 3);
}

TEST_CASE("illegal characters are lexical errors with a location") {
    try {
        tokenize("a.\nb :- c & d.");
        FAIL("expected a lexical error");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ErrorKind::Lexical);
        CHECK(e.line() == 2);
        CHECK(e.col() == 8);
    }
}

TEST_CASE("parse the gaussian mixture") {
    Program p = load("gaussian_mixture.hpl");
    REQUIRE(p.discrete_facts.size() == 1);
    CHECK(to_text(p.discrete_facts[0].atom) == "h");
    CHECK(p.discrete_facts[0].probability == Rational(3, 5));
    REQUIRE(p.density_facts.size() == 2);
    CHECK(p.density_facts[0].density.family == DensityFamily::Gaussian);
    CHECK(to_text(p.density_facts[0].atom) == "g(X)");
    CHECK(to_text(p.density_facts[1].atom) == "h(X)");
    CHECK(p.clauses.size() == 5);
}

TEST_CASE("a single ground fact is a deterministic clause") {
    Program p = parse_program("a.");
    CHECK(p.clauses.size() == 1);
    CHECK(p.clauses[0].body.empty());
    CHECK(p.discrete_facts.empty());
    CHECK(p.density_facts.empty());
}

TEST_CASE("definition literals") {
    Program p = parse_program("widget(X) :- machine(M), st(M,Z), pt(Y), X =:= Y + Z.");
    REQUIRE(p.clauses.size() == 1);
    const auto& body = p.clauses[0].body;
    REQUIRE(body.size() == 4);
    CHECK(body[3].kind == Literal::Kind::Definition);
    CHECK(body[3].target() == "X");
    CHECK(body[3].rhs.kind == ArithExpr::Kind::Add);
    CHECK(to_text(body[3].rhs) == "Y + Z");
    CHECK(body[0].kind == Literal::Kind::Positive);
    CHECK(to_text(body[1].atom) == "st(M,Z)");
}

TEST_CASE("both discrete fact forms give exact rationals") {
    Program p = parse_program("1/3 :: a.\nb : 0.6.\n0.25 :: c(X).\n");
    REQUIRE(p.discrete_facts.size() == 3);
    CHECK(p.discrete_facts[0].probability == Rational(1, 3));
    CHECK(p.discrete_facts[1].probability == Rational(3, 5));
    CHECK(p.discrete_facts[2].probability == Rational(1, 4));
    CHECK(p.discrete_facts[0].prefix_form);
    CHECK_FALSE(p.discrete_facts[1].prefix_form);
}

TEST_CASE("anonymous variables are renamed apart") {
    Program p = parse_program("q(_, _) :- r(_).");
    const auto& h = p.clauses[0].head;
    CHECK(h.args[0].is_anonymous());
    CHECK(h.args[1].is_anonymous());
    CHECK(h.args[0].name != h.args[1].name);
    CHECK(h.args[0].name != p.clauses[0].body[0].atom.args[0].name);
}

TEST_CASE("body order is preserved") {
    Program p = parse_program("g1(X):- f(X,V), V > 1, a(X).");
    const auto& b = p.clauses[0].body;
    REQUIRE(b.size() == 3);
    CHECK(b[0].kind == Literal::Kind::Positive);
    CHECK(b[1].kind == Literal::Kind::Comparison);
    CHECK(b[2].kind == Literal::Kind::Positive);
    CHECK(b[2].atom.name == "a");
}

TEST_CASE("syntax errors carry a location") {
    CHECK(parse_error_line("a.\nb :- c,\n") == 2);
    CHECK(parse_error_line("a :- b, !.") == 1);
    CHECK(parse_error_line("a :- X = 1.") == 1);
    CHECK(parse_error_line("p(X) : gaussian(Y, 0, 1).") == 1);
    CHECK(parse_error_line("1.5 :: a.") == 1);
    CHECK(parse_error_line("0 :: a.") == 1);
    CHECK(parse_error_line("a :- \\+ (b, c).") == 1);
    CHECK(parse_error_line("p(X) : poisson(X, 1).") == 1);
    try {
        parse_program("a(1) :- b(1)");
        FAIL("expected a syntax error");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ErrorKind::Syntax);
        CHECK(std::string(e.what()).find("expected") != std::string::npos);
    }
}

TEST_CASE("contradictory annotations are rejected") {
    CHECK(parse_error_line("0.3 :: a(X).\n0.5 :: a(Y).\n") == 2);
    CHECK(parse_error_line("p(X) : gaussian(X,0,1).\np(Y) : gaussian(Y,1,1).\n") == 2);
    CHECK_NOTHROW(parse_program("0.3 :: a(1).\n0.5 :: a(2).\n"));
}

TEST_CASE("signatures of the widget program") {
    Program p = load("widget.hpl");
    CHECK(cont(p, "st", 2) == std::set<std::size_t>{1});
    CHECK(cont(p, "pt", 1) == std::set<std::size_t>{0});
    CHECK(cont(p, "widget", 1) == std::set<std::size_t>{0});
    CHECK(cont(p, "machine", 1).empty());
    CHECK(cont(p, "ok_widget", 0).empty());
}

TEST_CASE("signatures of the continuous card game") {
    Program p = load("card_cont.hpl");
    CHECK(cont(p, "angle", 2) == std::set<std::size_t>{1});
    CHECK(cont(p, "pick", 2).empty());
}

TEST_CASE("signatures of discrete programs are all term positions") {
    Program p = load("card_inf.hpl");
    for (const auto& [k, ps] : p.signatures.predicates()) CHECK_MESSAGE(ps.empty(), to_string(k));
    for (const auto& [k, ps] : p.signatures.functors()) CHECK(ps.empty());
    CHECK(p.signatures.has_predicate({"pick", 2}));
    CHECK(p.signatures.has_predicate({"never_spades", 0}));
}

TEST_CASE("continuity flows through function symbols and definitions") {
    Program q = parse_program(
        "m(X) : gaussian(X, 0, 1).\n"
        "w(pair(k, X)) :- m(X).\n"
        "d(Y) :- m(X), Y =:= 2 * X.\n");
    CHECK(q.signatures.functor_is_continuous({"pair", 2}, 1));
    CHECK_FALSE(q.signatures.functor_is_continuous({"pair", 2}, 0));
    CHECK(q.signatures.is_continuous({"d", 1}, 0));
    CHECK(q.signatures.continuous_positions({"w", 1}).empty());
}

TEST_CASE("a directive fixes the signature") {
    Program p = parse_program(":- continuous(obs/2, [2]).\nobs(1, 0.5).\n");
    CHECK(p.signatures.continuous_positions({"obs", 2}) == std::set<std::size_t>{1});
}

TEST_CASE("signature conflicts are reported") {
    Program p = parse_program("m(X) : gaussian(X, 0, 1).\nm(a).\n");
    std::vector<Diagnostic> conflicts;
    infer_signatures(p, &conflicts);
    REQUIRE(conflicts.size() == 1);
    CHECK(conflicts[0].rule == Rule::SigConflict);
    CHECK(conflicts[0].location.line == 2);
}

TEST_CASE("signature inference is idempotent") {
    for (const auto& name : testing::corpus()) {
        Program p = load(name);
        SignatureTable once = infer_signatures(p);
        Program copy = p;
        copy.signatures = once;
        CHECK_MESSAGE(infer_signatures(copy) == once, name);
        CHECK(once == p.signatures);
    }
}

TEST_CASE("pretty printing round-trips the corpus") {
    for (const auto& name : testing::corpus()) {
        Program p = load(name);
        Program again = parse_program(to_text(p));
        CHECK_MESSAGE(same_structure(p, again), name);
        CHECK(to_text(again) == to_text(p));
    }
    Program odd = parse_program("'hello world'(1, -2, 3.0e0) :- 'x y'.\n:- continuous(o/1, [1]).\no(1.5).\n");
    CHECK(same_structure(odd, parse_program(to_text(odd))));
}

TEST_CASE("every node span lies inside the input") {
    for (const auto& name : testing::corpus()) {
        std::string text = testing::read_text(name);
        Program p = parse_program(text);
        for (const auto& f : p.discrete_facts) check_spans(f.atom, text.size());
        for (const auto& f : p.density_facts) check_spans(f.atom, text.size());
        for (const auto& c : p.clauses) {
            CHECK(c.span.end <= text.size());
            check_spans(c.head, text.size());
            for (const auto& l : c.body) {
                CHECK(l.span.begin >= c.span.begin);
                CHECK(l.span.end <= c.span.end);
                if (l.is_atom()) check_spans(l.atom, text.size());
            }
        }
    }
}

TEST_CASE("queries") {
    auto lits = parse_query("pick(0,spades), \\+ h, X > 1");
    REQUIRE(lits.size() == 3);
    CHECK(lits[1].kind == Literal::Kind::Negative);
    CHECK(lits[2].kind == Literal::Kind::Comparison);
    CHECK(parse_query("never_spades.").size() == 1);
    CHECK_THROWS_AS(parse_query(""), ParseError);
    CHECK_THROWS_AS(parse_query("p(X"), ParseError);
}
