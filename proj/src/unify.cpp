#include "hplp/unify.hpp"

#include <functional>
#include <vector>

#include "hplp/printer.hpp"

namespace hplp {

const Term* Substitution::lookup(const std::string& var) const {
    auto it = bindings_.find(var);
    return it == bindings_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& term) const {
    if (term.is_variable()) {
        const Term* t = lookup(term.name);
        return t ? *t : term;
    }
    if (term.args.empty()) return term;
    Term out = term;
    for (auto& a : out.args) a = apply(a);
    return out;
}

ArithExpr Substitution::apply(const ArithExpr& expr) const {
    if (expr.kind == ArithExpr::Kind::Variable) {
        const Term* t = lookup(expr.text);
        if (!t) return expr;
        switch (t->kind) {
            case Term::Kind::Variable: return ArithExpr::variable(t->name, expr.span);
            case Term::Kind::Integer:
                return ArithExpr::number(static_cast<double>(t->integer), std::to_string(t->integer), expr.span);
            case Term::Kind::Real: return ArithExpr::number(t->real, to_text(*t), expr.span);
            default: return expr;  // non-numeric binding: left for evaluation to reject
        }
    }
    ArithExpr out = expr;
    for (auto& o : out.operands) o = apply(o);
    return out;
}

Literal Substitution::apply(const Literal& literal) const {
    Literal out = literal;
    if (literal.is_atom()) {
        out.atom = apply(literal.atom);
    } else {
        out.lhs = apply(literal.lhs);
        out.rhs = apply(literal.rhs);
    }
    return out;
}

void Substitution::bind(const std::string& var, const Term& value) {
    Substitution single;
    single.bindings_.emplace(var, value);
    for (auto& [name, t] : bindings_) t = single.apply(t);
    bindings_[var] = value;
}

Substitution Substitution::simultaneous(Map bindings) {
    Substitution s;
    s.bindings_ = std::move(bindings);
    return s;
}

bool occurs_in(const std::string& var, const Term& term) {
    if (term.is_variable()) return term.name == var;
    for (const auto& a : term.args)
        if (occurs_in(var, a)) return true;
    return false;
}

std::optional<Substitution> unify(const Term& a, const Term& b) { return unify(a, b, Substitution{}); }

std::optional<Substitution> unify(const Term& a, const Term& b, Substitution subst) {
    std::vector<std::pair<Term, Term>> work;
    work.emplace_back(a, b);
    while (!work.empty()) {
        auto [x, y] = std::move(work.back());
        work.pop_back();
        x = subst.apply(x);
        y = subst.apply(y);
        if (x == y) continue;
        if (!x.is_variable() && y.is_variable()) std::swap(x, y);
        if (x.is_variable()) {
            if (occurs_in(x.name, y)) return std::nullopt;
            subst.bind(x.name, y);
            continue;
        }
        if (x.kind != y.kind || x.name != y.name || x.args.size() != y.args.size()) return std::nullopt;
        if (x.kind != Term::Kind::Compound) return std::nullopt;  // distinct constants
        for (std::size_t i = x.args.size(); i-- > 0;) work.emplace_back(x.args[i], y.args[i]);
    }
    return subst;
}

std::optional<Substitution> match(const Term& pattern, const Term& instance) {
    std::map<std::string, Term> seen;
    std::function<bool(const Term&, const Term&)> go = [&](const Term& p, const Term& i) {
        if (p.is_variable()) {
            auto [it, fresh] = seen.emplace(p.name, i);
            return fresh || it->second == i;
        }
        if (p.kind != i.kind || p.name != i.name || p.args.size() != i.args.size()) return false;
        if (p.kind == Term::Kind::Integer) return p.integer == i.integer;
        if (p.kind == Term::Kind::Real) return p.real == i.real;
        for (std::size_t k = 0; k < p.args.size(); ++k)
            if (!go(p.args[k], i.args[k])) return false;
        return true;
    };
    if (!go(pattern, instance)) return std::nullopt;
    for (auto it = seen.begin(); it != seen.end();) {
        if (it->second.is_variable() && it->second.name == it->first) {
            it = seen.erase(it);
        } else {
            ++it;
        }
    }
    return Substitution::simultaneous(std::move(seen));
}

bool is_variant(const Term& a, const Term& b) {
    std::map<std::string, std::string> ab, ba;
    std::function<bool(const Term&, const Term&)> go = [&](const Term& x, const Term& y) {
        if (x.is_variable() || y.is_variable()) {
            if (!x.is_variable() || !y.is_variable()) return false;
            auto [i1, f1] = ab.emplace(x.name, y.name);
            auto [i2, f2] = ba.emplace(y.name, x.name);
            return i1->second == y.name && i2->second == x.name;
        }
        if (!(x.kind == y.kind && x.name == y.name && x.args.size() == y.args.size())) return false;
        if (x.kind == Term::Kind::Integer) return x.integer == y.integer;
        if (x.kind == Term::Kind::Real) return x.real == y.real;
        for (std::size_t k = 0; k < x.args.size(); ++k)
            if (!go(x.args[k], y.args[k])) return false;
        return true;
    };
    return go(a, b);
}

Term rename(const Term& term, const std::string& suffix) {
    if (term.is_variable()) {
        Term t = term;
        t.name += suffix;
        return t;
    }
    if (term.args.empty()) return term;
    Term out = term;
    for (auto& a : out.args) a = rename(a, suffix);
    return out;
}

ArithExpr rename(const ArithExpr& expr, const std::string& suffix) {
    ArithExpr out = expr;
    if (out.kind == ArithExpr::Kind::Variable) out.text += suffix;
    for (auto& o : out.operands) o = rename(o, suffix);
    return out;
}

Literal rename(const Literal& literal, const std::string& suffix) {
    Literal out = literal;
    if (literal.is_atom()) {
        out.atom = rename(literal.atom, suffix);
    } else {
        out.lhs = rename(literal.lhs, suffix);
        out.rhs = rename(literal.rhs, suffix);
    }
    return out;
}

std::string to_text(const Substitution& subst) {
    std::string out = "{";
    bool first = true;
    for (const auto& [name, t] : subst) {
        if (!first) out += ", ";
        first = false;
        out += name + "/" + to_text(t);
    }
    return out + "}";
}

}  // namespace hplp
