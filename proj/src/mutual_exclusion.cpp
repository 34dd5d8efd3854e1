#include <algorithm>
#include <map>
#include <set>

#include "hplp/analysis.hpp"
#include "hplp/printer.hpp"
#include "hplp/signatures.hpp"
#include "hplp/unify.hpp"

namespace hplp {

const char* to_string(PairVerdict verdict) {
    switch (verdict) {
        case PairVerdict::Exclusive: return "exclusive";
        case PairVerdict::Overlapping: return "overlapping";
        case PairVerdict::Unknown: return "unknown";
    }
    return "?";
}

namespace {

constexpr std::size_t kMaxAlternatives = 512;

struct Leaf {
    enum class Kind { Fact, Density, Other, Comparison, Definition };
    Kind kind;
    Literal literal;
};

struct Alt {
    std::vector<Leaf> leaves;
    std::vector<Literal> shadows;  // derived literals implied by the alternative
    Substitution theta;
    bool complete = true;
};

struct Definition {
    Term head;
    std::vector<Literal> body;
    Span span;
    bool is_clause = true;
};

class Unfolder {
public:
    explicit Unfolder(const Program& p) : program_(p) {
        for (std::size_t i = 0; i < p.clauses.size(); ++i) defs_[key_of(p.clauses[i].head)].push_back({Src::Clause, i, p.clauses[i].order});
        for (std::size_t i = 0; i < p.discrete_facts.size(); ++i)
            defs_[key_of(p.discrete_facts[i].atom)].push_back({Src::Discrete, i, p.discrete_facts[i].order});
        for (std::size_t i = 0; i < p.density_facts.size(); ++i)
            defs_[key_of(p.density_facts[i].atom)].push_back({Src::Density, i, p.density_facts[i].order});
        for (auto& [k, v] : defs_)
            std::sort(v.begin(), v.end(), [](const Src& a, const Src& b) { return a.order < b.order; });
    }

    std::vector<Alt> unfold(const std::vector<Literal>& body, const Substitution& theta, std::size_t depth) {
        std::vector<Alt> alts{Alt{{}, {}, theta, true}};
        for (const auto& l : body) {
            std::vector<Alt> next;
            for (const auto& a : alts) {
                auto more = expand(l, a, depth);
                for (auto& m : more) next.push_back(std::move(m));
                if (next.size() > kMaxAlternatives) break;
            }
            if (next.size() > kMaxAlternatives) {
                // give up on this literal; keep it unexpanded
                next.clear();
                for (auto a : alts) {
                    a.leaves.push_back({Leaf::Kind::Other, l});
                    a.complete = false;
                    next.push_back(std::move(a));
                }
            }
            alts = std::move(next);
        }
        return alts;
    }

private:
    struct Src {
        enum Kind { Clause, Discrete, Density } kind;
        std::size_t index;
        std::size_t order;
    };

    std::string fresh() { return "#u" + std::to_string(counter_++); }

    bool only_discrete(const PredKey& k) const {
        auto it = defs_.find(k);
        if (it == defs_.end()) return false;
        return std::all_of(it->second.begin(), it->second.end(), [](const Src& s) { return s.kind == Src::Discrete; });
    }

    std::vector<Alt> expand(const Literal& l, const Alt& a, std::size_t depth) {
        std::vector<Alt> out;
        switch (l.kind) {
            case Literal::Kind::Comparison:
            case Literal::Kind::Definition: {
                Alt b = a;
                b.leaves.push_back({l.kind == Literal::Kind::Comparison ? Leaf::Kind::Comparison : Leaf::Kind::Definition, l});
                out.push_back(std::move(b));
                return out;
            }
            case Literal::Kind::Negative: return expand_negative(l, a, depth);
            case Literal::Kind::Positive: break;
        }
        PredKey key = key_of(l.atom);
        if (l.atom.kind == Term::Kind::Symbol && l.atom.name == "true" && !defs_.count(key)) return {a};
        auto it = defs_.find(key);
        if (it == defs_.end()) return out;
        bool has_rules = std::any_of(it->second.begin(), it->second.end(), [](const Src& s) { return s.kind == Src::Clause; });
        if (has_rules && depth == 0) {
            Alt b = a;
            b.leaves.push_back({Leaf::Kind::Other, l});
            b.complete = false;
            out.push_back(std::move(b));
            return out;
        }
        Term goal = a.theta.apply(l.atom);
        for (const auto& src : it->second) {
            if (src.kind == Src::Clause) {
                const Clause& c = program_.clauses[src.index];
                std::string s = fresh();
                Term head = rename(c.head, s);
                auto theta = unify(head, goal, a.theta);
                if (!theta) continue;
                std::vector<Literal> body;
                for (const auto& bl : c.body) body.push_back(rename(bl, s));
                for (auto& sub : unfold(body, *theta, depth - 1)) {
                    Alt b = a;
                    b.theta = sub.theta;
                    b.complete = a.complete && sub.complete;
                    for (auto& x : sub.leaves) b.leaves.push_back(std::move(x));
                    for (auto& x : sub.shadows) b.shadows.push_back(std::move(x));
                    b.shadows.push_back(l);
                    out.push_back(std::move(b));
                }
            } else {
                const Term& templ = src.kind == Src::Discrete ? program_.discrete_facts[src.index].atom
                                                              : program_.density_facts[src.index].atom;
                auto theta = unify(rename(templ, fresh()), goal, a.theta);
                if (!theta) continue;
                Alt b = a;
                b.theta = *theta;
                if (src.kind == Src::Density) {
                    b.leaves.push_back({Leaf::Kind::Density, l});
                } else if (program_.discrete_facts[src.index].probability != 1) {
                    b.leaves.push_back({Leaf::Kind::Fact, l});
                }
                out.push_back(std::move(b));
            }
        }
        return out;
    }

    std::vector<Alt> expand_negative(const Literal& l, const Alt& a, std::size_t depth) {
        PredKey key = key_of(l.atom);
        Alt b = a;
        if (only_discrete(key)) {
            b.leaves.push_back({Leaf::Kind::Fact, l});
            return {b};
        }
        auto it = defs_.find(key);
        if (it == defs_.end()) return {a};  // negation of an undefined atom always holds
        if (depth > 0 && it->second.size() == 1 && it->second[0].kind == Src::Clause) {
            const Clause& c = program_.clauses[it->second[0].index];
            if (c.body.size() == 1 && c.body[0].kind == Literal::Kind::Positive) {
                auto head_vars = variables_of(c.head);
                auto body_vars = variables_of(c.body[0].atom);
                bool local = std::any_of(body_vars.begin(), body_vars.end(),
                                         [&](const std::string& v) { return !head_vars.count(v); });
                if (!local) {
                    std::string s = fresh();
                    auto theta = unify(rename(c.head, s), a.theta.apply(l.atom), a.theta);
                    if (!theta) return {a};
                    Literal inner = Literal::negative(rename(c.body[0].atom, s), l.span);
                    Alt start = a;
                    start.theta = *theta;
                    auto out = expand_negative(inner, start, depth - 1);
                    for (auto& x : out) x.shadows.push_back(l);
                    return out;
                }
            }
        }
        b.leaves.push_back({Leaf::Kind::Other, l});
        b.complete = false;
        return {b};
    }

    const Program& program_;
    std::map<PredKey, std::vector<Src>> defs_;
    std::size_t counter_ = 0;
};

struct Atomish {
    bool positive;
    Term atom;
};

void collect_atoms(const Alt& a, const Substitution& theta, std::vector<Atomish>& out) {
    for (const auto& leaf : a.leaves)
        if (leaf.literal.is_atom())
            out.push_back({leaf.literal.kind == Literal::Kind::Positive, theta.apply(leaf.literal.atom)});
    for (const auto& s : a.shadows)
        if (s.is_atom()) out.push_back({s.kind == Literal::Kind::Positive, theta.apply(s.atom)});
}

bool complementary(const std::vector<Atomish>& xs, const std::vector<Atomish>& ys) {
    for (const auto& x : xs)
        for (const auto& y : ys)
            if (x.positive != y.positive && x.atom == y.atom) return true;
    return false;
}

bool provable_leaves(const Alt& a, const Substitution& theta, const Program& program) {
    if (!a.complete) return false;
    for (const auto& leaf : a.leaves) {
        switch (leaf.kind) {
            case Leaf::Kind::Fact:
                if (!theta.apply(leaf.literal.atom).is_ground()) return false;
                break;
            case Leaf::Kind::Density: {
                Term atom = theta.apply(leaf.literal.atom);
                PredKey key = key_of(atom);
                for (std::size_t i = 0; i < atom.args.size(); ++i)
                    if (!program.signatures.is_continuous(key, i) && !atom.args[i].is_ground()) return false;
                break;
            }
            case Leaf::Kind::Definition: break;
            case Leaf::Kind::Other:
            case Leaf::Kind::Comparison: return false;
        }
    }
    return true;
}

std::vector<Definition> definitions_of(const Program& p, const PredKey& key) {
    std::vector<std::pair<std::size_t, Definition>> ordered;
    for (const auto& c : p.clauses)
        if (key_of(c.head) == key) ordered.push_back({c.order, {c.head, c.body, c.span, true}});
    for (const auto& f : p.density_facts)
        if (key_of(f.atom) == key) ordered.push_back({f.order, {f.atom, {}, f.span, false}});
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Definition> out;
    for (auto& [o, d] : ordered) out.push_back(std::move(d));
    return out;
}

std::set<std::string> local_term_vars(const Definition& d, const Program& p) {
    if (!d.is_clause) return {};
    Clause c{d.head, d.body, d.span, 0};
    auto cont = continuous_variables(c, p.signatures);
    std::set<std::string> head_terms;
    PredKey key = key_of(d.head);
    for (std::size_t i = 0; i < d.head.args.size(); ++i)
        if (!p.signatures.is_continuous(key, i)) {
            auto v = variables_of(d.head.args[i]);
            head_terms.insert(v.begin(), v.end());
        }
    std::set<std::string> out;
    for (const auto& l : d.body)
        for (const auto& v : variables_of(l))
            if (!cont.count(v) && !head_terms.count(v)) out.insert(v);
    return out;
}

PairVerdict compare(const Program& p, const Definition& d1, const Definition& d2, bool same,
                    const std::set<std::string>& locals, std::size_t depth) {
    Term h1 = rename(d1.head, "#1");
    Term h2 = rename(d2.head, "#2");
    PredKey key = key_of(d1.head);
    Substitution theta;
    for (std::size_t i = 0; i < h1.args.size(); ++i) {
        if (p.signatures.is_continuous(key, i)) continue;
        auto t = unify(h1.args[i], h2.args[i], theta);
        if (!t) return PairVerdict::Exclusive;
        theta = *t;
    }
    std::vector<Literal> b1, b2;
    for (const auto& l : d1.body) b1.push_back(rename(l, "#1"));
    for (const auto& l : d2.body) b2.push_back(rename(l, "#2"));

    Unfolder unfolder(p);
    bool unknown = false;
    for (const auto& a1 : unfolder.unfold(b1, theta, depth)) {
        for (const auto& a2 : unfolder.unfold(b2, a1.theta, depth)) {
            const Substitution& th = a2.theta;
            std::vector<Atomish> x1, x2;
            collect_atoms(a1, th, x1);
            collect_atoms(a2, th, x2);
            if (complementary(x1, x1) || complementary(x2, x2)) continue;  // alternative cannot hold
            if (complementary(x1, x2)) continue;
            if (same) {
                bool differ = false, open = false;
                for (const auto& v : locals) {
                    Term t1 = th.apply(Term::variable(v + "#1"));
                    Term t2 = th.apply(Term::variable(v + "#2"));
                    if (t1 == t2) continue;
                    if (t1.is_ground() && t2.is_ground()) differ = true;
                    else open = true;
                }
                if (!differ && !open) continue;  // the same grounding twice
                if (!differ) {
                    unknown = true;
                    continue;
                }
            }
            if (provable_leaves(a1, th, p) && provable_leaves(a2, th, p)) return PairVerdict::Overlapping;
            unknown = true;
        }
    }
    return unknown ? PairVerdict::Unknown : PairVerdict::Exclusive;
}

}  // namespace

std::vector<DefinitionPair> mutual_exclusion_pairs(const Program& program, std::size_t unfold_depth) {
    std::vector<DefinitionPair> out;
    for (const auto& [key, positions] : program.signatures.predicates()) {
        if (positions.empty()) continue;
        auto defs = definitions_of(program, key);
        bool has_rule = std::any_of(defs.begin(), defs.end(), [](const Definition& d) { return d.is_clause; });
        if (defs.empty() || (defs.size() < 2 && !has_rule)) continue;
        for (std::size_t i = 0; i < defs.size(); ++i) {
            auto locals = local_term_vars(defs[i], program);
            if (!locals.empty())
                out.push_back({key, i, i, defs[i].span, defs[i].span,
                               compare(program, defs[i], defs[i], true, locals, unfold_depth)});
            for (std::size_t j = i + 1; j < defs.size(); ++j)
                out.push_back({key, i, j, defs[i].span, defs[j].span,
                               compare(program, defs[i], defs[j], false, {}, unfold_depth)});
        }
    }
    return out;
}

std::vector<Diagnostic> check_mutual_exclusivity(const Program& program, std::size_t unfold_depth) {
    std::vector<Diagnostic> out;
    for (const auto& pair : mutual_exclusion_pairs(program, unfold_depth)) {
        std::string which = pair.first == pair.second
                                ? "two groundings of the clause for " + to_string(pair.pred) + " at line " +
                                      std::to_string(pair.first_span.line)
                                : "the definitions of " + to_string(pair.pred) + " at lines " +
                                      std::to_string(pair.first_span.line) + " and " +
                                      std::to_string(pair.second_span.line);
        if (pair.verdict == PairVerdict::Overlapping)
            out.push_back({Rule::MutualExclusion, Severity::Error, pair.second_span,
                           which + " can both hold in one world"});
        else if (pair.verdict == PairVerdict::Unknown)
            out.push_back({Rule::MutualExclusion, Severity::Unverified, pair.second_span,
                           "could not show that " + which + " are mutually exclusive (unfold depth " +
                               std::to_string(unfold_depth) + ")"});
    }
    return out;
}

}  // namespace hplp
