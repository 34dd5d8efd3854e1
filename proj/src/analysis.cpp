#include "hplp/analysis.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "hplp/printer.hpp"
#include "hplp/signatures.hpp"
#include "hplp/unify.hpp"

namespace hplp {

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::WellDefined: return "well_defined";
        case Verdict::IllDefined: return "ill_defined";
        case Verdict::Unverified: return "unverified";
    }
    return "?";
}

bool Report::has_rule(Rule rule) const {
    return std::any_of(diagnostics.begin(), diagnostics.end(), [&](const Diagnostic& d) { return d.rule == rule; });
}

namespace {

std::string shown(const std::string& var) { return var.rfind("_#", 0) == 0 ? "_" : var; }

// First occurrence of a variable inside a term, for diagnostic locations.
const Term* find_var(const Term& t, const std::string& name) {
    if (t.is_variable()) return t.name == name ? &t : nullptr;
    for (const auto& a : t.args)
        if (const Term* f = find_var(a, name)) return f;
    return nullptr;
}

Span var_span(const Term& t, const std::string& name, const Span& fallback) {
    const Term* f = find_var(t, name);
    return f ? f->span : fallback;
}

struct ProgramIndex {
    std::set<PredKey> with_clauses;
    std::map<PredKey, std::vector<const DiscreteFact*>> discrete;
    std::map<PredKey, std::vector<const DensityFact*>> density;

    explicit ProgramIndex(const Program& p) {
        for (const auto& c : p.clauses) with_clauses.insert(key_of(c.head));
        for (const auto& f : p.discrete_facts) discrete[key_of(f.atom)].push_back(&f);
        for (const auto& f : p.density_facts) density[key_of(f.atom)].push_back(&f);
    }

    bool probabilistic(const PredKey& k) const { return discrete.count(k) || density.count(k); }
};

// Variables of `t` sitting at term (non-continuous) positions.
void term_position_vars(const Term& t, const SignatureTable& sig, std::vector<std::string>& out) {
    if (t.is_variable()) {
        out.push_back(t.name);
        return;
    }
    if (!t.is_compound()) return;
    PredKey f = key_of(t);
    for (std::size_t i = 0; i < t.args.size(); ++i)
        if (!sig.functor_is_continuous(f, i)) term_position_vars(t.args[i], sig, out);
}

std::vector<std::string> head_term_vars(const Term& head, const SignatureTable& sig) {
    std::vector<std::string> out;
    PredKey key = key_of(head);
    for (std::size_t i = 0; i < head.args.size(); ++i)
        if (!sig.is_continuous(key, i)) term_position_vars(head.args[i], sig, out);
    std::vector<std::string> unique;
    for (auto& v : out)
        if (std::find(unique.begin(), unique.end(), v) == unique.end()) unique.push_back(v);
    return unique;
}

// Head variables the caller may have bound: those with no occurrence in a positive call
// to a predicate that has clauses of its own (such a call is what binds them).
std::set<std::string> caller_bound(const Clause& c, const ProgramIndex& idx) {
    std::set<std::string> binder;
    for (const auto& l : c.body)
        if (l.kind == Literal::Kind::Positive && idx.with_clauses.count(key_of(l.atom))) {
            auto v = variables_of(l.atom);
            binder.insert(v.begin(), v.end());
        }
    std::set<std::string> bound;
    for (const auto& v : variables_of(c.head))
        if (!binder.count(v)) bound.insert(v);
    return bound;
}

// Template argument positions that must be ground when the fact is called.
std::vector<std::size_t> required_positions(const Term& atom, const DensityFact* density) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
        const Term& a = atom.args[i];
        if (a.is_ground()) continue;
        if (density && a.is_variable() && a.name == density->output_variable()) continue;
        out.push_back(i);
    }
    return out;
}

}  // namespace

std::vector<Diagnostic> check_range_restriction(const Program& program) {
    std::vector<Diagnostic> out;
    for (const auto& c : program.clauses) {
        std::set<std::string> positive;
        for (const auto& l : c.body)
            if (l.kind == Literal::Kind::Positive) {
                auto v = variables_of(l.atom);
                positive.insert(v.begin(), v.end());
            }
        for (const auto& v : head_term_vars(c.head, program.signatures)) {
            if (positive.count(v)) continue;
            out.push_back({Rule::RangeRestriction, Severity::Error, var_span(c.head, v, c.span),
                           "head variable " + shown(v) + " of " + to_string(key_of(c.head)) +
                               " does not occur in a positive body literal"});
        }
    }
    return out;
}

std::vector<Diagnostic> check_prev_positive_literal(const Program& program) {
    std::vector<Diagnostic> out;
    ProgramIndex idx(program);
    for (const auto& c : program.clauses) {
        std::set<std::string> bound = caller_bound(c, idx);
        for (const auto& l : c.body) {
            if (l.is_atom()) {
                PredKey key = key_of(l.atom);
                std::set<std::string> reported;
                auto check = [&](const Term& templ, const DensityFact* density) {
                    Term t = rename(templ, "#t");
                    if (!unify(t, l.atom)) return;
                    for (auto i : required_positions(templ, density)) {
                        for (const auto& v : variables_of(l.atom.args[i])) {
                            if (bound.count(v) || !reported.insert(v).second) continue;
                            out.push_back({Rule::PrevPositiveLiteral, Severity::Error, var_span(l.atom, v, l.span),
                                           "variable " + shown(v) + " in the call to probabilistic fact " +
                                               to_string(key) + " is not bound by a previous positive literal"});
                        }
                    }
                };
                if (auto it = idx.discrete.find(key); it != idx.discrete.end())
                    for (const auto* f : it->second) check(f->atom, nullptr);
                if (auto it = idx.density.find(key); it != idx.density.end())
                    for (const auto* f : it->second) check(f->atom, f);
            }
            if (l.kind == Literal::Kind::Positive) {
                auto v = variables_of(l.atom);
                bound.insert(v.begin(), v.end());
            }
            if (l.kind == Literal::Kind::Definition) bound.insert(l.target());
        }
    }
    return out;
}

std::vector<Diagnostic> check_flounder_risk(const Program& program) {
    std::vector<Diagnostic> out;
    ProgramIndex idx(program);
    for (const auto& c : program.clauses) {
        std::set<std::string> bound = caller_bound(c, idx);
        for (const auto& l : c.body) {
            std::set<std::string> vars;
            if (l.kind == Literal::Kind::Negative) vars = variables_of(l.atom);
            if (l.kind == Literal::Kind::Comparison) vars = variables_of(l);
            if (l.kind == Literal::Kind::Definition) vars = variables_of(l.rhs);
            for (const auto& v : vars) {
                if (bound.count(v)) continue;
                const char* what = l.kind == Literal::Kind::Negative ? "negated goal" : "arithmetic";
                out.push_back({Rule::FlounderRisk, Severity::Warning, l.span,
                               "variable " + shown(v) + " may be unbound when the " + what + " " + to_text(l) +
                                   " is selected"});
            }
            if (l.kind == Literal::Kind::Positive) {
                auto v = variables_of(l.atom);
                bound.insert(v.begin(), v.end());
            }
            if (l.kind == Literal::Kind::Definition) bound.insert(l.target());
        }
    }
    return out;
}

namespace {

struct UsageChecker {
    const SignatureTable& sig;
    const ProgramIndex& idx;
    std::vector<Diagnostic>& out;

    void walk(const Term& t, bool continuous_slot, const std::set<std::string>& cont, bool indexes_fact,
              const std::string& where) {
        if (t.is_variable()) {
            if (continuous_slot || !cont.count(t.name)) return;
            if (indexes_fact)
                out.push_back({Rule::ContIndex, Severity::Error, t.span,
                               "continuous variable " + shown(t.name) + " is used as an index of probabilistic fact " +
                                   where});
            else
                out.push_back({Rule::ContUsage, Severity::Error, t.span,
                               "continuous variable " + shown(t.name) + " is used at a term position of " + where});
            return;
        }
        if (t.kind == Term::Kind::Real && !continuous_slot) {
            out.push_back({Rule::ContUsage, Severity::Error, t.span,
                           "real constant " + to_text(t) + " appears at a term position of " + where});
            return;
        }
        if (t.is_compound()) {
            PredKey f = key_of(t);
            for (std::size_t i = 0; i < t.args.size(); ++i)
                walk(t.args[i], continuous_slot || sig.functor_is_continuous(f, i), cont, indexes_fact, where);
        }
    }

    void atom(const Term& a, const std::set<std::string>& cont, bool body) {
        PredKey key = key_of(a);
        bool indexes = body && idx.probabilistic(key);
        for (std::size_t i = 0; i < a.args.size(); ++i)
            walk(a.args[i], sig.is_continuous(key, i), cont, indexes, to_string(key));
    }
};

}  // namespace

std::vector<Diagnostic> check_continuous_usage(const Program& program) {
    std::vector<Diagnostic> out;
    ProgramIndex idx(program);
    UsageChecker check{program.signatures, idx, out};
    for (const auto& c : program.clauses) {
        auto cont = continuous_variables(c, program.signatures);
        check.atom(c.head, cont, false);
        for (const auto& l : c.body)
            if (l.is_atom()) check.atom(l.atom, cont, true);
    }
    for (const auto& f : program.discrete_facts) check.atom(f.atom, {}, false);
    for (const auto& f : program.density_facts) {
        auto cont = continuous_variables(f);
        check.atom(f.atom, cont, false);
        auto in_template = variables_of(f.atom);
        for (const auto& p : f.density.params)
            for (const auto& v : variables_of(p))
                if (!in_template.count(v))
                    out.push_back({Rule::ContUsage, Severity::Error, p.span,
                                   "density parameter variable " + shown(v) + " of " + to_string(key_of(f.atom)) +
                                       " does not occur in the fact"});
    }
    return out;
}

Verdict verdict_of(const std::vector<Diagnostic>& diagnostics) {
    bool unverified = false;
    for (const auto& d : diagnostics) {
        if (d.severity == Severity::Error) return Verdict::IllDefined;
        if (d.severity == Severity::Unverified) unverified = true;
    }
    return unverified ? Verdict::Unverified : Verdict::WellDefined;
}

Report validate(const Program& program, std::size_t unfold_depth) {
    Report r;
    auto add = [&](std::vector<Diagnostic> ds) {
        for (auto& d : ds) r.diagnostics.push_back(std::move(d));
    };
    std::vector<Diagnostic> conflicts;
    infer_signatures(program, &conflicts);
    add(std::move(conflicts));
    add(check_range_restriction(program));
    add(check_prev_positive_literal(program));
    add(check_mutual_exclusivity(program, unfold_depth));
    add(check_continuous_usage(program));
    add(check_flounder_risk(program));
    sort_diagnostics(r.diagnostics);
    r.verdict = verdict_of(r.diagnostics);
    return r;
}

namespace {

// Groundness abstract interpretation: for each (predicate, ground-argument mask) reached
// from the query, the mask of arguments ground on success, or nothing if it cannot succeed.
class GroundnessAnalysis {
public:
    explicit GroundnessAnalysis(const Program& p) : program_(p), idx_(p) {
        for (const auto& c : p.clauses) clauses_[key_of(c.head)].push_back(&c);
    }

    QueryCheck run(const std::vector<Literal>& query) {
        for (int round = 0; round < 1000; ++round) {
            changed_ = false;
            query_pass(query);
            std::vector<Call> calls;
            for (const auto& [k, v] : table_) calls.push_back(k);
            for (const auto& call : calls) {
                auto s = compute(call);
                if (s != table_[call]) {
                    table_[call] = s;
                    changed_ = true;
                }
            }
            if (!changed_) break;
        }
        recording_ = true;
        query_pass(query);
        while (!pending_.empty()) {
            Call call = pending_.back();
            pending_.pop_back();
            compute(call);
        }
        QueryCheck r;
        r.ground_instantiable = reason_.empty();
        r.reason = reason_;
        return r;
    }

private:
    using Mask = std::vector<bool>;
    using Success = std::optional<Mask>;
    using Call = std::pair<PredKey, Mask>;

    void violation(const std::string& why) {
        if (recording_ && reason_.empty()) reason_ = why;
    }

    static bool ground_in(const std::set<std::string>& vars, const std::set<std::string>& g) {
        return std::all_of(vars.begin(), vars.end(), [&](const std::string& v) { return g.count(v) != 0; });
    }

    void query_pass(const std::vector<Literal>& query) {
        std::set<std::string> g;
        if (!walk(query, g)) return;
        for (const auto& l : query)
            for (const auto& v : variables_of(l))
                if (!g.count(v)) violation("answers bind " + shown(v) + " to a non-ground term");
    }

    Success lookup(const PredKey& key, const Mask& mask) {
        Call call{key, mask};
        auto it = table_.find(call);
        if (it == table_.end()) {
            table_.emplace(call, std::nullopt);
            changed_ = true;
            if (recording_) {
                visited_.insert(call);
                pending_.push_back(call);
            }
            return std::nullopt;
        }
        if (recording_ && visited_.insert(call).second) pending_.push_back(call);
        return it->second;
    }

    Success call_atom(const Term& atom, std::set<std::string>& g) {
        PredKey key = key_of(atom);
        Mask mask;
        for (const auto& a : atom.args) mask.push_back(ground_in(variables_of(a), g));
        Success s = lookup(key, mask);
        if (s)
            for (std::size_t i = 0; i < atom.args.size(); ++i)
                if ((*s)[i]) {
                    auto v = variables_of(atom.args[i]);
                    g.insert(v.begin(), v.end());
                }
        return s;
    }

    bool walk(const std::vector<Literal>& body, std::set<std::string>& g) {
        for (const auto& l : body) {
            switch (l.kind) {
                case Literal::Kind::Positive:
                    if (l.atom.kind == Term::Kind::Symbol && l.atom.name == "true" && !defined(key_of(l.atom))) break;
                    if (!call_atom(l.atom, g)) return false;
                    break;
                case Literal::Kind::Negative: {
                    if (!ground_in(variables_of(l.atom), g)) {
                        violation("negation " + to_text(l) + " is selected with unbound variables");
                        break;
                    }
                    std::set<std::string> inner = g;
                    call_atom(l.atom, inner);
                    break;
                }
                case Literal::Kind::Comparison:
                    if (!ground_in(variables_of(l), g)) violation("comparison " + to_text(l) + " has unbound variables");
                    break;
                case Literal::Kind::Definition:
                    if (!ground_in(variables_of(l.rhs), g)) violation("definition " + to_text(l) + " has unbound variables");
                    g.insert(l.target());
                    break;
            }
        }
        return true;
    }

    bool defined(const PredKey& key) const { return clauses_.count(key) || idx_.probabilistic(key); }

    static void meet(Success& acc, const Mask& m) {
        if (!acc) {
            acc = m;
            return;
        }
        for (std::size_t i = 0; i < m.size(); ++i) (*acc)[i] = (*acc)[i] && m[i];
    }

    void check_fact(const Term& templ, const DensityFact* density, const Mask& mask, Success& acc) {
        for (auto i : required_positions(templ, density))
            if (!mask[i])
                violation("probabilistic fact " + to_string(key_of(templ)) + " is called with non-ground argument " +
                          std::to_string(i + 1));
        meet(acc, Mask(mask.size(), true));
    }

    Success compute(const Call& call) {
        const auto& [key, mask] = call;
        Success acc;
        if (auto it = clauses_.find(key); it != clauses_.end()) {
            for (const Clause* c : it->second) {
                std::set<std::string> g;
                for (std::size_t i = 0; i < mask.size(); ++i)
                    if (mask[i]) {
                        auto v = variables_of(c->head.args[i]);
                        g.insert(v.begin(), v.end());
                    }
                if (!walk(c->body, g)) continue;
                Mask s;
                for (const auto& a : c->head.args) s.push_back(ground_in(variables_of(a), g));
                meet(acc, s);
            }
        }
        if (auto it = idx_.discrete.find(key); it != idx_.discrete.end())
            for (const auto* f : it->second) check_fact(f->atom, nullptr, mask, acc);
        if (auto it = idx_.density.find(key); it != idx_.density.end())
            for (const auto* f : it->second) check_fact(f->atom, f, mask, acc);
        return acc;
    }

    const Program& program_;
    ProgramIndex idx_;
    std::map<PredKey, std::vector<const Clause*>> clauses_;
    std::map<Call, Success> table_;
    bool changed_ = false;
    bool recording_ = false;
    std::set<Call> visited_;
    std::vector<Call> pending_;
    std::string reason_;
};

}  // namespace

QueryCheck check_query(const Program& program, const std::vector<Literal>& query) {
    GroundnessAnalysis analysis(program);
    return analysis.run(query);
}

}  // namespace hplp
