#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hplp/rational.hpp"

namespace hplp {

// Byte range [begin, end) into the program text plus the 1-based position of begin.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 1;
    int col = 1;
};

Span join(const Span& a, const Span& b);

struct Term {
    enum class Kind { Variable, Symbol, Integer, Real, Compound };

    Kind kind = Kind::Symbol;
    std::string name;  // variable name, symbol, or functor
    std::int64_t integer = 0;
    double real = 0.0;
    std::string lexeme;  // source text of a real constant
    std::vector<Term> args;
    Span span;

    static Term variable(std::string name, Span span = {});
    static Term symbol(std::string name, Span span = {});
    static Term int_constant(std::int64_t value, Span span = {});
    static Term real_constant(double value, std::string lexeme = {}, Span span = {});
    static Term compound(std::string functor, std::vector<Term> args, Span span = {});

    bool is_variable() const { return kind == Kind::Variable; }
    bool is_compound() const { return kind == Kind::Compound; }
    bool is_atom_shaped() const { return kind == Kind::Symbol || kind == Kind::Compound; }
    bool is_ground() const;
    std::size_t arity() const { return args.size(); }

    // Anonymous `_` occurrences are renamed apart at parse time.
    bool is_anonymous() const { return is_variable() && name.rfind("_#", 0) == 0; }
};

// Structural equality; spans and lexemes are ignored.
bool operator==(const Term& a, const Term& b);
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }

void collect_variables(const Term& term, std::vector<std::string>& out);
std::set<std::string> variables_of(const Term& term);

struct ArithExpr {
    enum class Kind { Number, Variable, Add, Sub, Mul, Div, Neg };

    Kind kind = Kind::Number;
    double value = 0.0;
    std::string text;  // number lexeme or variable name
    std::vector<ArithExpr> operands;
    Span span;

    static ArithExpr number(double value, std::string lexeme, Span span = {});
    static ArithExpr variable(std::string name, Span span = {});
    static ArithExpr binary(Kind op, ArithExpr lhs, ArithExpr rhs);
    static ArithExpr negate(ArithExpr operand, Span span = {});
};

bool operator==(const ArithExpr& a, const ArithExpr& b);
void collect_variables(const ArithExpr& expr, std::vector<std::string>& out);
std::set<std::string> variables_of(const ArithExpr& expr);

enum class CompareOp { Less, Greater, LessEq, GreaterEq };
const char* to_string(CompareOp op);

struct Literal {
    enum class Kind { Positive, Negative, Comparison, Definition };

    Kind kind = Kind::Positive;
    Term atom;        // Positive / Negative
    CompareOp op = CompareOp::Less;
    ArithExpr lhs;    // Comparison left side; Definition target (a Variable expression)
    ArithExpr rhs;    // Comparison right side; Definition formula
    Span span;

    static Literal positive(Term atom, Span span);
    static Literal negative(Term atom, Span span);
    static Literal comparison(CompareOp op, ArithExpr lhs, ArithExpr rhs, Span span);
    static Literal definition(ArithExpr target, ArithExpr expr, Span span);

    bool is_atom() const { return kind == Kind::Positive || kind == Kind::Negative; }
    const std::string& target() const { return lhs.text; }
};

bool operator==(const Literal& a, const Literal& b);
std::set<std::string> variables_of(const Literal& literal);

struct Clause {
    Term head;
    std::vector<Literal> body;
    Span span;
    std::size_t order = 0;  // position among all program items
};

struct DiscreteFact {
    Term atom;
    Rational probability;
    std::string probability_text;
    bool prefix_form = true;  // `p :: a.` rather than `a : p.`
    Span span;
    std::size_t order = 0;
};

enum class DensityFamily { Gaussian, UniformDens };
const char* to_string(DensityFamily family);

// gaussian(Var, Mean, Variance) or uniform_dens(Var, Low, High).
struct DensitySpec {
    DensityFamily family = DensityFamily::Gaussian;
    std::string variable;
    std::vector<ArithExpr> params;
    Span span;
};

struct DensityFact {
    Term atom;
    DensitySpec density;
    Span span;
    std::size_t order = 0;

    const std::string& output_variable() const { return density.variable; }
};

// `:- continuous(pred/arity, [positions]).` with 1-based positions in the source.
struct ContinuousDecl {
    std::string name;
    std::size_t arity = 0;
    std::vector<std::size_t> positions;  // 0-based
    Span span;
    std::size_t order = 0;
};

struct PredKey {
    std::string name;
    std::size_t arity = 0;

    auto operator<=>(const PredKey&) const = default;
    bool operator==(const PredKey&) const = default;
};

std::string to_string(const PredKey& key);
PredKey key_of(const Term& atom);

// Continuous argument positions (0-based) per predicate and per function symbol.
class SignatureTable {
public:
    void declare_predicate(const PredKey& key);
    void declare_functor(const PredKey& key);
    bool mark_predicate(const PredKey& key, std::size_t position);
    bool mark_functor(const PredKey& key, std::size_t position);

    bool is_continuous(const PredKey& pred, std::size_t position) const;
    bool functor_is_continuous(const PredKey& functor, std::size_t position) const;
    std::set<std::size_t> continuous_positions(const PredKey& pred) const;
    bool has_predicate(const PredKey& key) const { return predicates_.count(key) != 0; }

    const std::map<PredKey, std::set<std::size_t>>& predicates() const { return predicates_; }
    const std::map<PredKey, std::set<std::size_t>>& functors() const { return functors_; }

    bool operator==(const SignatureTable&) const = default;

private:
    std::map<PredKey, std::set<std::size_t>> predicates_;
    std::map<PredKey, std::set<std::size_t>> functors_;
};

struct Program {
    std::vector<DiscreteFact> discrete_facts;
    std::vector<DensityFact> density_facts;
    std::vector<Clause> clauses;
    std::vector<ContinuousDecl> continuous_decls;
    SignatureTable signatures;

    bool has_density_facts() const { return !density_facts.empty(); }
};

// Structural equality of the parsed content (spans ignored).
bool same_structure(const Program& a, const Program& b);

}  // namespace hplp
