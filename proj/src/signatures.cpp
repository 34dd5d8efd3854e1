#include "hplp/signatures.hpp"

#include "hplp/printer.hpp"

namespace hplp {

namespace {

void declare_functors(const Term& t, SignatureTable& table) {
    if (t.is_compound()) {
        table.declare_functor(key_of(t));
        for (const auto& a : t.args) declare_functors(a, table);
    }
}

void declare_atom(const Term& atom, SignatureTable& table) {
    table.declare_predicate(key_of(atom));
    for (const auto& a : atom.args) declare_functors(a, table);
}

// Marks functor positions holding a variable from `vars` anywhere inside `t`.
bool mark_nested(const Term& t, const std::set<std::string>& vars, SignatureTable& table) {
    bool changed = false;
    if (!t.is_compound()) return false;
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        const Term& a = t.args[i];
        if (a.is_variable() && vars.count(a.name)) changed |= table.mark_functor(key_of(t), i);
        changed |= mark_nested(a, vars, table);
    }
    return changed;
}

// Collects variables sitting in continuous positions of functors nested in `t`.
void nested_continuous(const Term& t, const SignatureTable& table, std::set<std::string>& out) {
    if (!t.is_compound()) return;
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        const Term& a = t.args[i];
        if (a.is_variable() && table.functor_is_continuous(key_of(t), i)) out.insert(a.name);
        nested_continuous(a, table, out);
    }
}

void atom_continuous(const Term& atom, const SignatureTable& table, std::set<std::string>& out) {
    PredKey key = key_of(atom);
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
        const Term& a = atom.args[i];
        if (a.is_variable() && table.is_continuous(key, i)) out.insert(a.name);
        nested_continuous(a, table, out);
    }
}

bool term_constant(const Term& t) { return !t.is_variable() && t.kind != Term::Kind::Real; }

void conflicts_in(const Term& atom, bool is_pred, const SignatureTable& table, const char* where,
                  std::vector<Diagnostic>& out) {
    PredKey key = key_of(atom);
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
        const Term& a = atom.args[i];
        bool cont = is_pred ? table.is_continuous(key, i) : table.functor_is_continuous(key, i);
        if (cont && term_constant(a)) {
            out.push_back({Rule::SigConflict, Severity::Error, a.span,
                           std::string(is_pred ? "predicate " : "function symbol ") + to_string(key) +
                               " argument " + std::to_string(i + 1) + " is continuous but " + where + " holds term " +
                               to_text(a)});
        }
        if (a.is_compound()) conflicts_in(a, false, table, where, out);
    }
}

}  // namespace

std::set<std::string> continuous_variables(const DensityFact& fact) {
    std::set<std::string> vars{fact.density.variable};
    for (const auto& p : fact.density.params) {
        auto pv = variables_of(p);
        vars.insert(pv.begin(), pv.end());
    }
    return vars;
}

std::set<std::string> continuous_variables(const Clause& clause, const SignatureTable& table) {
    std::set<std::string> out;
    atom_continuous(clause.head, table, out);
    for (const auto& lit : clause.body) {
        if (lit.kind == Literal::Kind::Positive) atom_continuous(lit.atom, table, out);
        if (lit.kind == Literal::Kind::Definition) out.insert(lit.target());
    }
    return out;
}

SignatureTable infer_signatures(const Program& program, std::vector<Diagnostic>* conflicts) {
    SignatureTable table;
    std::set<PredKey> fixed;

    for (const auto& f : program.discrete_facts) declare_atom(f.atom, table);
    for (const auto& f : program.density_facts) declare_atom(f.atom, table);
    for (const auto& c : program.clauses) {
        declare_atom(c.head, table);
        for (const auto& l : c.body)
            if (l.is_atom()) declare_atom(l.atom, table);
    }

    for (const auto& d : program.continuous_decls) {
        PredKey key{d.name, d.arity};
        table.declare_predicate(key);
        fixed.insert(key);
        for (auto p : d.positions) table.mark_predicate(key, p);
    }

    for (const auto& f : program.density_facts) {
        PredKey key = key_of(f.atom);
        auto vars = continuous_variables(f);
        if (!fixed.count(key)) {
            for (std::size_t i = 0; i < f.atom.args.size(); ++i) {
                const Term& a = f.atom.args[i];
                if (a.is_variable() && vars.count(a.name)) table.mark_predicate(key, i);
            }
        }
        for (const auto& a : f.atom.args) mark_nested(a, vars, table);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : program.clauses) {
            auto vars = continuous_variables(c, table);
            PredKey key = key_of(c.head);
            for (std::size_t i = 0; i < c.head.args.size(); ++i) {
                const Term& a = c.head.args[i];
                if (a.is_variable() && vars.count(a.name) && !fixed.count(key)) changed |= table.mark_predicate(key, i);
                changed |= mark_nested(a, vars, table);
            }
        }
    }

    if (conflicts) {
        for (const auto& f : program.discrete_facts) conflicts_in(f.atom, true, table, "a probabilistic fact", *conflicts);
        for (const auto& f : program.density_facts) conflicts_in(f.atom, true, table, "a density fact", *conflicts);
        for (const auto& c : program.clauses) {
            conflicts_in(c.head, true, table, "a clause head", *conflicts);
            for (const auto& l : c.body)
                if (l.is_atom()) conflicts_in(l.atom, true, table, "a body literal", *conflicts);
        }
        for (const auto& f : program.discrete_facts) {
            for (auto p : table.continuous_positions(key_of(f.atom)))
                conflicts->push_back({Rule::SigConflict, Severity::Error, f.span,
                                      "discrete probabilistic fact " + to_text(f.atom) + " has continuous argument " +
                                          std::to_string(p + 1)});
        }
    }
    return table;
}

}  // namespace hplp
