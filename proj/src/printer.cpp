#include "hplp/printer.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>

namespace hplp {

namespace {

bool plain_atom(const std::string& name) {
    if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

std::string atom_name(const std::string& name) {
    if (plain_atom(name)) return name;
    std::string out = "'";
    for (char c : name) {
        if (c == '\'') out += '\'';
        out += c;
    }
    return out + "'";
}

int precedence(ArithExpr::Kind k) {
    switch (k) {
        case ArithExpr::Kind::Add:
        case ArithExpr::Kind::Sub: return 1;
        case ArithExpr::Kind::Mul:
        case ArithExpr::Kind::Div: return 2;
        default: return 3;
    }
}

const char* op_text(ArithExpr::Kind k) {
    switch (k) {
        case ArithExpr::Kind::Add: return " + ";
        case ArithExpr::Kind::Sub: return " - ";
        case ArithExpr::Kind::Mul: return " * ";
        case ArithExpr::Kind::Div: return " / ";
        default: return "?";
    }
}

}  // namespace

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    std::string s = buf;
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

std::string to_text(const Term& term) {
    switch (term.kind) {
        case Term::Kind::Variable: return term.is_anonymous() ? "_" : term.name;
        case Term::Kind::Symbol: return atom_name(term.name);
        case Term::Kind::Integer: return std::to_string(term.integer);
        case Term::Kind::Real: return term.lexeme.empty() ? format_real(term.real) : term.lexeme;
        case Term::Kind::Compound: {
            std::string out = atom_name(term.name) + "(";
            for (std::size_t i = 0; i < term.args.size(); ++i) {
                if (i) out += ",";
                out += to_text(term.args[i]);
            }
            return out + ")";
        }
    }
    return "?";
}

std::string to_text(const ArithExpr& expr) {
    switch (expr.kind) {
        case ArithExpr::Kind::Number: return expr.text.empty() ? format_real(expr.value) : expr.text;
        case ArithExpr::Kind::Variable: return expr.text;
        case ArithExpr::Kind::Neg: {
            const auto& o = expr.operands[0];
            bool wrap = precedence(o.kind) < 3;
            return wrap ? "-(" + to_text(o) + ")" : "-" + to_text(o);
        }
        default: {
            int p = precedence(expr.kind);
            const auto& l = expr.operands[0];
            const auto& r = expr.operands[1];
            std::string ls = to_text(l);
            std::string rs = to_text(r);
            if (precedence(l.kind) < p) ls = "(" + ls + ")";
            if (precedence(r.kind) <= p) rs = "(" + rs + ")";
            return ls + op_text(expr.kind) + rs;
        }
    }
}

std::string to_text(const Literal& literal) {
    switch (literal.kind) {
        case Literal::Kind::Positive: return to_text(literal.atom);
        case Literal::Kind::Negative: return "\\+ " + to_text(literal.atom);
        case Literal::Kind::Comparison:
            return to_text(literal.lhs) + " " + to_string(literal.op) + " " + to_text(literal.rhs);
        case Literal::Kind::Definition: return to_text(literal.lhs) + " =:= " + to_text(literal.rhs);
    }
    return "?";
}

std::string to_text(const Clause& clause) {
    std::string out = to_text(clause.head);
    if (!clause.body.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < clause.body.size(); ++i) {
            if (i) out += ", ";
            out += to_text(clause.body[i]);
        }
    }
    return out + ".";
}

std::string to_text(const DiscreteFact& fact) {
    std::string p = fact.probability_text.empty() ? to_string(fact.probability) : fact.probability_text;
    if (fact.prefix_form) return p + " :: " + to_text(fact.atom) + ".";
    return to_text(fact.atom) + " : " + p + ".";
}

std::string to_text(const DensityFact& fact) {
    std::string out = to_text(fact.atom) + " : " + to_string(fact.density.family) + "(" + fact.density.variable;
    for (const auto& p : fact.density.params) out += ", " + to_text(p);
    return out + ").";
}

std::string to_text(const ContinuousDecl& decl) {
    std::string out = ":- continuous(" + atom_name(decl.name) + "/" + std::to_string(decl.arity) + ", [";
    for (std::size_t i = 0; i < decl.positions.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(decl.positions[i] + 1);
    }
    return out + "]).";
}

std::string to_text(const Program& program) {
    std::map<std::size_t, std::string> lines;
    for (const auto& f : program.discrete_facts) lines[f.order] = to_text(f);
    for (const auto& f : program.density_facts) lines[f.order] = to_text(f);
    for (const auto& c : program.clauses) lines[c.order] = to_text(c);
    for (const auto& d : program.continuous_decls) lines[d.order] = to_text(d);
    std::string out;
    for (const auto& [order, line] : lines) out += line + "\n";
    return out;
}

}  // namespace hplp
