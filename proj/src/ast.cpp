#include "hplp/ast.hpp"

#include <algorithm>

namespace hplp {

Span join(const Span& a, const Span& b) {
    Span s = a.begin <= b.begin ? a : b;
    s.begin = std::min(a.begin, b.begin);
    s.end = std::max(a.end, b.end);
    return s;
}

Term Term::variable(std::string name, Span span) {
    Term t;
    t.kind = Kind::Variable;
    t.name = std::move(name);
    t.span = span;
    return t;
}

Term Term::symbol(std::string name, Span span) {
    Term t;
    t.kind = Kind::Symbol;
    t.name = std::move(name);
    t.span = span;
    return t;
}

Term Term::int_constant(std::int64_t value, Span span) {
    Term t;
    t.kind = Kind::Integer;
    t.integer = value;
    t.span = span;
    return t;
}

Term Term::real_constant(double value, std::string lexeme, Span span) {
    Term t;
    t.kind = Kind::Real;
    t.real = value;
    t.lexeme = std::move(lexeme);
    t.span = span;
    return t;
}

Term Term::compound(std::string functor, std::vector<Term> args, Span span) {
    Term t;
    t.kind = args.empty() ? Kind::Symbol : Kind::Compound;
    t.name = std::move(functor);
    t.args = std::move(args);
    t.span = span;
    return t;
}

bool Term::is_ground() const {
    if (kind == Kind::Variable) return false;
    return std::all_of(args.begin(), args.end(), [](const Term& a) { return a.is_ground(); });
}

bool operator==(const Term& a, const Term& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Term::Kind::Variable:
        case Term::Kind::Symbol: return a.name == b.name;
        case Term::Kind::Integer: return a.integer == b.integer;
        case Term::Kind::Real: return a.real == b.real;
        case Term::Kind::Compound: return a.name == b.name && a.args == b.args;
    }
    return false;
}

void collect_variables(const Term& term, std::vector<std::string>& out) {
    if (term.is_variable()) {
        if (std::find(out.begin(), out.end(), term.name) == out.end()) out.push_back(term.name);
        return;
    }
    for (const auto& a : term.args) collect_variables(a, out);
}

std::set<std::string> variables_of(const Term& term) {
    std::vector<std::string> v;
    collect_variables(term, v);
    return {v.begin(), v.end()};
}

ArithExpr ArithExpr::number(double value, std::string lexeme, Span span) {
    ArithExpr e;
    e.kind = Kind::Number;
    e.value = value;
    e.text = std::move(lexeme);
    e.span = span;
    return e;
}

ArithExpr ArithExpr::variable(std::string name, Span span) {
    ArithExpr e;
    e.kind = Kind::Variable;
    e.text = std::move(name);
    e.span = span;
    return e;
}

ArithExpr ArithExpr::binary(Kind op, ArithExpr lhs, ArithExpr rhs) {
    ArithExpr e;
    e.kind = op;
    e.span = join(lhs.span, rhs.span);
    e.operands.push_back(std::move(lhs));
    e.operands.push_back(std::move(rhs));
    return e;
}

ArithExpr ArithExpr::negate(ArithExpr operand, Span span) {
    ArithExpr e;
    e.kind = Kind::Neg;
    e.span = join(span, operand.span);
    e.operands.push_back(std::move(operand));
    return e;
}

bool operator==(const ArithExpr& a, const ArithExpr& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == ArithExpr::Kind::Number) return a.value == b.value;
    if (a.kind == ArithExpr::Kind::Variable) return a.text == b.text;
    return a.operands == b.operands;
}

void collect_variables(const ArithExpr& expr, std::vector<std::string>& out) {
    if (expr.kind == ArithExpr::Kind::Variable) {
        if (std::find(out.begin(), out.end(), expr.text) == out.end()) out.push_back(expr.text);
        return;
    }
    for (const auto& o : expr.operands) collect_variables(o, out);
}

std::set<std::string> variables_of(const ArithExpr& expr) {
    std::vector<std::string> v;
    collect_variables(expr, v);
    return {v.begin(), v.end()};
}

const char* to_string(CompareOp op) {
    switch (op) {
        case CompareOp::Less: return "<";
        case CompareOp::Greater: return ">";
        case CompareOp::LessEq: return "=<";
        case CompareOp::GreaterEq: return ">=";
    }
    return "?";
}

Literal Literal::positive(Term atom, Span span) {
    Literal l;
    l.kind = Kind::Positive;
    l.atom = std::move(atom);
    l.span = span;
    return l;
}

Literal Literal::negative(Term atom, Span span) {
    Literal l;
    l.kind = Kind::Negative;
    l.atom = std::move(atom);
    l.span = span;
    return l;
}

Literal Literal::comparison(CompareOp op, ArithExpr lhs, ArithExpr rhs, Span span) {
    Literal l;
    l.kind = Kind::Comparison;
    l.op = op;
    l.lhs = std::move(lhs);
    l.rhs = std::move(rhs);
    l.span = span;
    return l;
}

Literal Literal::definition(ArithExpr target, ArithExpr expr, Span span) {
    Literal l;
    l.kind = Kind::Definition;
    l.lhs = std::move(target);
    l.rhs = std::move(expr);
    l.span = span;
    return l;
}

bool operator==(const Literal& a, const Literal& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Literal::Kind::Positive:
        case Literal::Kind::Negative: return a.atom == b.atom;
        case Literal::Kind::Comparison: return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
        case Literal::Kind::Definition: return a.lhs == b.lhs && a.rhs == b.rhs;
    }
    return false;
}

std::set<std::string> variables_of(const Literal& literal) {
    if (literal.is_atom()) return variables_of(literal.atom);
    auto vars = variables_of(literal.lhs);
    auto more = variables_of(literal.rhs);
    vars.insert(more.begin(), more.end());
    return vars;
}

const char* to_string(DensityFamily family) {
    switch (family) {
        case DensityFamily::Gaussian: return "gaussian";
        case DensityFamily::UniformDens: return "uniform_dens";
    }
    return "?";
}

std::string to_string(const PredKey& key) { return key.name + "/" + std::to_string(key.arity); }

PredKey key_of(const Term& atom) { return {atom.name, atom.args.size()}; }

void SignatureTable::declare_predicate(const PredKey& key) { predicates_[key]; }
void SignatureTable::declare_functor(const PredKey& key) { functors_[key]; }

bool SignatureTable::mark_predicate(const PredKey& key, std::size_t position) {
    return predicates_[key].insert(position).second;
}

bool SignatureTable::mark_functor(const PredKey& key, std::size_t position) {
    return functors_[key].insert(position).second;
}

bool SignatureTable::is_continuous(const PredKey& pred, std::size_t position) const {
    auto it = predicates_.find(pred);
    return it != predicates_.end() && it->second.count(position) != 0;
}

bool SignatureTable::functor_is_continuous(const PredKey& functor, std::size_t position) const {
    auto it = functors_.find(functor);
    return it != functors_.end() && it->second.count(position) != 0;
}

std::set<std::size_t> SignatureTable::continuous_positions(const PredKey& pred) const {
    auto it = predicates_.find(pred);
    return it == predicates_.end() ? std::set<std::size_t>{} : it->second;
}

namespace {

bool same_density(const DensitySpec& a, const DensitySpec& b) {
    return a.family == b.family && a.variable == b.variable && a.params == b.params;
}

}  // namespace

bool same_structure(const Program& a, const Program& b) {
    if (a.discrete_facts.size() != b.discrete_facts.size() ||
        a.density_facts.size() != b.density_facts.size() || a.clauses.size() != b.clauses.size() ||
        a.continuous_decls.size() != b.continuous_decls.size())
        return false;
    for (std::size_t i = 0; i < a.discrete_facts.size(); ++i) {
        const auto& x = a.discrete_facts[i];
        const auto& y = b.discrete_facts[i];
        if (!(x.atom == y.atom) || x.probability != y.probability || x.order != y.order) return false;
    }
    for (std::size_t i = 0; i < a.density_facts.size(); ++i) {
        const auto& x = a.density_facts[i];
        const auto& y = b.density_facts[i];
        if (!(x.atom == y.atom) || !same_density(x.density, y.density) || x.order != y.order) return false;
    }
    for (std::size_t i = 0; i < a.clauses.size(); ++i) {
        const auto& x = a.clauses[i];
        const auto& y = b.clauses[i];
        if (!(x.head == y.head) || !(x.body == y.body) || x.order != y.order) return false;
    }
    for (std::size_t i = 0; i < a.continuous_decls.size(); ++i) {
        const auto& x = a.continuous_decls[i];
        const auto& y = b.continuous_decls[i];
        if (x.name != y.name || x.arity != y.arity || x.positions != y.positions) return false;
    }
    return a.signatures == b.signatures;
}

}  // namespace hplp
