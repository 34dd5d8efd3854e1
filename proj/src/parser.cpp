#include "hplp/parser.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <map>
#include <optional>

#include "hplp/error.hpp"
#include "hplp/lexer.hpp"
#include "hplp/printer.hpp"
#include "hplp/signatures.hpp"
#include "hplp/unify.hpp"

namespace hplp {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text), tokens_(tokenize(text)) {}

    Program program() {
        Program prog;
        std::size_t order = 0;
        while (!at_end()) item(prog, order++);
        check_fact_annotations(prog);
        prog.signatures = infer_signatures(prog);
        return prog;
    }

    std::vector<Literal> query() {
        std::vector<Literal> body;
        if (at_end()) fail("empty query");
        body.push_back(literal());
        while (accept(TokenKind::Comma)) body.push_back(literal());
        accept(TokenKind::Dot);
        if (!at_end()) fail("unexpected " + describe(cur()) + " after query");
        return body;
    }

    Term single_term() {
        Term t = term();
        accept(TokenKind::Dot);
        if (!at_end()) fail("unexpected " + describe(cur()) + " after term");
        return t;
    }

private:
    std::string_view text_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int anonymous_ = 0;

    bool at_end() const { return pos_ >= tokens_.size(); }
    const Token& cur() const { return tokens_[pos_]; }
    bool is(TokenKind k, std::size_t ahead = 0) const {
        return pos_ + ahead < tokens_.size() && tokens_[pos_ + ahead].kind == k;
    }

    Span here() const {
        if (!at_end()) return cur().span;
        if (tokens_.empty()) return Span{};
        Span s = tokens_.back().span;
        s.begin = s.end;
        s.col += 1;
        return s;
    }

    [[noreturn]] void fail(const std::string& message) const {
        Span s = here();
        throw ParseError(ErrorKind::Syntax, message, s.line, s.col);
    }

    [[noreturn]] void fail_at(const Span& s, const std::string& message) const {
        throw ParseError(ErrorKind::Syntax, message, s.line, s.col);
    }

    static std::string describe(const Token& t) {
        return std::string(to_string(t.kind)) + " '" + t.text + "'";
    }

    std::string found() const { return at_end() ? "end of input" : describe(cur()); }

    bool accept(TokenKind k) {
        if (is(k)) {
            ++pos_;
            return true;
        }
        return false;
    }

    const Token& expect(TokenKind k, const char* hint) {
        if (!is(k)) fail(std::string("expected ") + hint + ", found " + found());
        return tokens_[pos_++];
    }

    Span prev_span() const { return tokens_[pos_ - 1].span; }

    static bool is_number(TokenKind k) {
        return k == TokenKind::Integer || k == TokenKind::Real || k == TokenKind::Rational;
    }

    // ---- items -------------------------------------------------------------

    void item(Program& prog, std::size_t order) {
        Span start = here();
        if (is(TokenKind::Neck)) {
            directive(prog, order);
            return;
        }
        if (!at_end() && is_number(cur().kind) && is(TokenKind::DoubleColon, 1)) {
            Token prob = tokens_[pos_++];
            ++pos_;
            DiscreteFact f;
            f.probability = probability(prob);
            f.probability_text = prob.text;
            f.prefix_form = true;
            f.atom = atom();
            expect(TokenKind::Dot, "'.' after probabilistic fact");
            f.span = join(start, prev_span());
            f.order = order;
            prog.discrete_facts.push_back(std::move(f));
            return;
        }

        Term head = atom();
        if (accept(TokenKind::Colon)) {
            if (!at_end() && is_number(cur().kind)) {
                Token prob = tokens_[pos_++];
                DiscreteFact f;
                f.probability = probability(prob);
                f.probability_text = prob.text;
                f.prefix_form = false;
                f.atom = std::move(head);
                expect(TokenKind::Dot, "'.' after probabilistic fact");
                f.span = join(start, prev_span());
                f.order = order;
                prog.discrete_facts.push_back(std::move(f));
                return;
            }
            DensityFact f;
            f.atom = std::move(head);
            f.density = density();
            expect(TokenKind::Dot, "'.' after density fact");
            f.span = join(start, prev_span());
            f.order = order;
            auto vars = variables_of(f.atom);
            if (!vars.count(f.density.variable))
                fail_at(f.density.span, "density variable " + f.density.variable + " does not occur in " +
                                            to_text(f.atom));
            prog.density_facts.push_back(std::move(f));
            return;
        }

        Clause c;
        c.head = std::move(head);
        if (accept(TokenKind::Neck)) {
            c.body.push_back(literal());
            while (accept(TokenKind::Comma)) c.body.push_back(literal());
        }
        expect(TokenKind::Dot, "',' or '.' in clause");
        c.span = join(start, prev_span());
        c.order = order;
        prog.clauses.push_back(std::move(c));
    }

    Rational probability(const Token& t) {
        Rational p;
        try {
            p = parse_rational(t.text);
        } catch (const Error&) {
            fail_at(t.span, "malformed probability '" + t.text + "'");
        }
        if (p <= 0 || p > 1) fail_at(t.span, "probability " + t.text + " is outside ]0,1]");
        return p;
    }

    DensitySpec density() {
        Span start = here();
        if (!is(TokenKind::Atom)) fail("expected probability or density (gaussian/uniform_dens), found " + found());
        const Token& name = cur();
        DensitySpec d;
        if (name.text == "gaussian") {
            d.family = DensityFamily::Gaussian;
        } else if (name.text == "uniform_dens") {
            d.family = DensityFamily::UniformDens;
        } else {
            fail("unknown density '" + name.text + "' (supported: gaussian, uniform_dens)");
        }
        ++pos_;
        expect(TokenKind::LParen, "'(' after density name");
        d.variable = expect(TokenKind::Var, "density variable").text;
        if (d.variable == "_") fail_at(prev_span(), "density variable cannot be anonymous");
        for (int i = 0; i < 2; ++i) {
            expect(TokenKind::Comma, "',' between density arguments");
            d.params.push_back(expression());
        }
        expect(TokenKind::RParen, "')' closing density (expected exactly 3 arguments)");
        d.span = join(start, prev_span());
        return d;
    }

    void directive(Program& prog, std::size_t order) {
        Span start = here();
        ++pos_;
        const Token& name = expect(TokenKind::Atom, "directive name");
        if (name.text != "continuous") fail_at(name.span, "unknown directive '" + name.text + "'");
        expect(TokenKind::LParen, "'('");
        ContinuousDecl decl;
        decl.name = expect(TokenKind::Atom, "predicate name").text;
        expect(TokenKind::Slash, "'/' in predicate indicator");
        decl.arity = static_cast<std::size_t>(integer_value(expect(TokenKind::Integer, "arity")));
        expect(TokenKind::Comma, "','");
        expect(TokenKind::LBracket, "'[' starting position list");
        if (!is(TokenKind::RBracket)) {
            do {
                const Token& p = expect(TokenKind::Integer, "argument position");
                auto v = integer_value(p);
                if (v < 1 || static_cast<std::size_t>(v) > decl.arity)
                    fail_at(p.span, "position " + p.text + " is outside 1.." + std::to_string(decl.arity));
                decl.positions.push_back(static_cast<std::size_t>(v - 1));
            } while (accept(TokenKind::Comma));
        }
        expect(TokenKind::RBracket, "']'");
        expect(TokenKind::RParen, "')'");
        expect(TokenKind::Dot, "'.' after directive");
        decl.span = join(start, prev_span());
        decl.order = order;
        prog.continuous_decls.push_back(std::move(decl));
    }

    std::int64_t integer_value(const Token& t) const {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{}) fail_at(t.span, "integer out of range: " + t.text);
        return v;
    }

    // ---- literals ----------------------------------------------------------

    Literal literal() {
        Span start = here();
        if (at_end()) fail("expected a body literal, found end of input");
        switch (cur().kind) {
            case TokenKind::Naf: {
                ++pos_;
                if (is(TokenKind::LParen)) fail("negation of a conjunction is not supported; negate a single atom");
                Term a = atom();
                return Literal::negative(std::move(a), join(start, a.span));
            }
            case TokenKind::Cut: fail("cut (!) is not supported");
            case TokenKind::Atom: {
                Term a = atom();
                if (!at_end() && comparison_like(cur().kind))
                    fail("comparison operands must be arithmetic expressions, not atoms");
                Span s = a.span;
                return Literal::positive(std::move(a), s);
            }
            default: break;
        }
        ArithExpr lhs = expression();
        if (at_end()) fail("expected comparison operator, found end of input");
        const Token& op = cur();
        if (op.kind == TokenKind::ArithEq) {
            ++pos_;
            if (lhs.kind != ArithExpr::Kind::Variable)
                fail_at(lhs.span, "left side of =:= must be a single variable");
            ArithExpr rhs = expression();
            Span s = join(start, rhs.span);
            return Literal::definition(std::move(lhs), std::move(rhs), s);
        }
        std::optional<CompareOp> cmp;
        switch (op.kind) {
            case TokenKind::Less: cmp = CompareOp::Less; break;
            case TokenKind::Greater: cmp = CompareOp::Greater; break;
            case TokenKind::LessEq: cmp = CompareOp::LessEq; break;
            case TokenKind::GreaterEq: cmp = CompareOp::GreaterEq; break;
            case TokenKind::UnsupportedOp:
                fail("unsupported comparison operator '" + op.text + "' (use <, >, =<, >= or =:=)");
            default: fail("expected comparison operator, found " + found());
        }
        ++pos_;
        ArithExpr rhs = expression();
        Span s = join(start, rhs.span);
        return Literal::comparison(*cmp, std::move(lhs), std::move(rhs), s);
    }

    static bool comparison_like(TokenKind k) {
        return k == TokenKind::Less || k == TokenKind::Greater || k == TokenKind::LessEq ||
               k == TokenKind::GreaterEq || k == TokenKind::ArithEq || k == TokenKind::UnsupportedOp;
    }

    // ---- terms -------------------------------------------------------------

    Term atom() {
        if (!is(TokenKind::Atom)) {
            if (is(TokenKind::Var)) fail("expected an atom, found variable '" + cur().text + "'");
            fail("expected an atom, found " + found());
        }
        Term t = term();
        return t;
    }

    Term term() {
        if (at_end()) fail("expected a term, found end of input");
        const Token& t = cur();
        switch (t.kind) {
            case TokenKind::Var: {
                ++pos_;
                if (t.text == "_") return Term::variable("_#" + std::to_string(++anonymous_), t.span);
                return Term::variable(t.text, t.span);
            }
            case TokenKind::Atom: {
                ++pos_;
                if (!accept(TokenKind::LParen)) return Term::symbol(t.text, t.span);
                std::vector<Term> args;
                args.push_back(term());
                while (accept(TokenKind::Comma)) args.push_back(term());
                expect(TokenKind::RParen, "',' or ')' in argument list");
                return Term::compound(t.text, std::move(args), join(t.span, prev_span()));
            }
            case TokenKind::Integer: {
                ++pos_;
                return Term::int_constant(integer_value(t), t.span);
            }
            case TokenKind::Real: {
                ++pos_;
                return Term::real_constant(std::strtod(t.text.c_str(), nullptr), t.text, t.span);
            }
            case TokenKind::Minus: {
                if (is(TokenKind::Integer, 1) || is(TokenKind::Real, 1)) {
                    ++pos_;
                    const Token& n = tokens_[pos_++];
                    Span s = join(t.span, n.span);
                    if (n.kind == TokenKind::Integer) return Term::int_constant(-integer_value(n), s);
                    return Term::real_constant(-std::strtod(n.text.c_str(), nullptr), "-" + n.text, s);
                }
                break;
            }
            case TokenKind::Rational:
                fail("rational literal '" + t.text + "' is only allowed as a probability or inside arithmetic");
            case TokenKind::LBracket: fail("lists are not supported");
            default: break;
        }
        fail("expected a term, found " + found());
    }

    // ---- arithmetic --------------------------------------------------------

    ArithExpr expression() {
        ArithExpr lhs = product();
        while (is(TokenKind::Plus) || is(TokenKind::Minus)) {
            auto op = cur().kind == TokenKind::Plus ? ArithExpr::Kind::Add : ArithExpr::Kind::Sub;
            ++pos_;
            lhs = ArithExpr::binary(op, std::move(lhs), product());
        }
        return lhs;
    }

    ArithExpr product() {
        ArithExpr lhs = factor();
        while (is(TokenKind::Star) || is(TokenKind::Slash)) {
            auto op = cur().kind == TokenKind::Star ? ArithExpr::Kind::Mul : ArithExpr::Kind::Div;
            ++pos_;
            lhs = ArithExpr::binary(op, std::move(lhs), factor());
        }
        return lhs;
    }

    ArithExpr factor() {
        if (at_end()) fail("expected an arithmetic expression, found end of input");
        const Token& t = cur();
        switch (t.kind) {
            case TokenKind::Minus: {
                ++pos_;
                return ArithExpr::negate(factor(), t.span);
            }
            case TokenKind::Integer:
            case TokenKind::Real: {
                ++pos_;
                return ArithExpr::number(std::strtod(t.text.c_str(), nullptr), t.text, t.span);
            }
            case TokenKind::Rational: {
                ++pos_;
                return ArithExpr::number(to_double(parse_rational(t.text)), t.text, t.span);
            }
            case TokenKind::Var: {
                ++pos_;
                if (t.text == "_") fail_at(t.span, "anonymous variable in arithmetic expression");
                return ArithExpr::variable(t.text, t.span);
            }
            case TokenKind::LParen: {
                ++pos_;
                ArithExpr inner = expression();
                expect(TokenKind::RParen, "')'");
                inner.span = join(t.span, prev_span());
                return inner;
            }
            case TokenKind::Atom:
                fail_at(t.span, "atom '" + t.text + "' in arithmetic expression (only numbers and variables)");
            default: break;
        }
        fail("expected an arithmetic expression, found " + found());
    }

    // ---- program-level checks ---------------------------------------------

    void check_fact_annotations(const Program& prog) const {
        std::map<PredKey, const Span*> discrete_preds;
        for (const auto& f : prog.discrete_facts) discrete_preds.emplace(key_of(f.atom), &f.span);
        for (const auto& f : prog.density_facts) {
            if (auto it = discrete_preds.find(key_of(f.atom)); it != discrete_preds.end())
                fail_at(f.span, "predicate " + to_string(key_of(f.atom)) +
                                    " is defined both by a discrete fact and a density fact");
        }
        for (std::size_t i = 0; i < prog.discrete_facts.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                const auto& a = prog.discrete_facts[j];
                const auto& b = prog.discrete_facts[i];
                if (is_variant(a.atom, b.atom) && a.probability != b.probability)
                    fail_at(b.span, "contradictory annotation for " + to_text(b.atom) + ": " + a.probability_text +
                                        " (line " + std::to_string(a.span.line) + ") vs " + b.probability_text);
            }
        }
        for (std::size_t i = 0; i < prog.density_facts.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                const auto& a = prog.density_facts[j];
                const auto& b = prog.density_facts[i];
                if (is_variant(a.atom, b.atom) &&
                    (a.density.family != b.density.family || !(a.density.params == b.density.params)))
                    fail_at(b.span, "contradictory density for " + to_text(b.atom) + " (see line " +
                                        std::to_string(a.span.line) + ")");
            }
        }
    }
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).program(); }

std::vector<Literal> parse_query(std::string_view text) { return Parser(text).query(); }

Term parse_term(std::string_view text) { return Parser(text).single_term(); }

}  // namespace hplp
