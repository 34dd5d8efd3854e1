#include "hplp/explanations.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "hplp/analysis.hpp"
#include "hplp/error.hpp"
#include "hplp/knowledge_base.hpp"
#include "hplp/printer.hpp"
#include "hplp/solver.hpp"
#include "hplp/unify.hpp"

namespace hplp {

std::vector<CompositeChoice> make_pairwise_incompatible(const std::vector<CompositeChoice>& set) {
    std::vector<CompositeChoice> out;
    for (CompositeChoice kappa : set) {
        normalize(kappa);
        std::vector<CompositeChoice> pieces{kappa};
        for (std::size_t j = 0; j < out.size() && !pieces.empty(); ++j) {
            const CompositeChoice& other = out[j];
            std::vector<CompositeChoice> next;
            for (auto& piece : pieces) {
                if (incompatible(piece, other)) {
                    next.push_back(std::move(piece));
                    continue;
                }
                if (subsumes(other, piece)) continue;
                CompositeChoice missing;
                std::set_difference(other.begin(), other.end(), piece.begin(), piece.end(), std::back_inserter(missing));
                CompositeChoice current = piece;
                for (const auto& c : missing) {
                    CompositeChoice branch = current;
                    branch.push_back(c.negated());
                    normalize(branch);
                    next.push_back(std::move(branch));
                    current.push_back(c);
                    normalize(current);
                }
                // `current` now contains `other`, whose worlds are already counted
            }
            pieces = std::move(next);
        }
        for (auto& p : pieces) out.push_back(std::move(p));
    }
    return out;
}

bool is_pairwise_incompatible(const std::vector<CompositeChoice>& set) {
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (!incompatible(set[i], set[j])) return false;
    return true;
}

Rational total_probability(const std::vector<CompositeChoice>& set, const Program& program) {
    Rational sum = 0;
    for (const auto& k : set) sum += prob_composite(k, program);
    sum.canonicalize();
    return sum;
}

namespace {

void drop_supersets(std::vector<CompositeChoice>& set) {
    for (auto& k : set) normalize(k);
    std::sort(set.begin(), set.end(), [](const CompositeChoice& a, const CompositeChoice& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    set.erase(std::unique(set.begin(), set.end()), set.end());
    std::vector<CompositeChoice> kept;
    for (auto& k : set) {
        bool covered = std::any_of(kept.begin(), kept.end(), [&](const CompositeChoice& c) { return subsumes(c, k); });
        if (!covered) kept.push_back(std::move(k));
    }
    set = std::move(kept);
}

void require_discrete(const Program& program) {
    if (program.has_density_facts())
        throw Error(ErrorKind::ProgramHasDensityFacts, "exact inference needs a program without density facts");
}

}  // namespace

ExplanationSet collect_explanations(const Program& program, const std::vector<Literal>& query, std::size_t depth_bound) {
    require_discrete(program);
    KnowledgeBase kb(program);
    Solver solver(kb, kb.compile_query(query));
    ExplainResult r = solver.explain(depth_bound);
    ExplanationSet out;
    for (auto& a : r.answers) out.explanations.push_back(std::move(a.choices));
    drop_supersets(out.explanations);
    out.exhausted = r.frontier.empty();
    return out;
}

ProbabilityBound exact_query(const Program& program, const std::vector<Literal>& query, const ExactOptions& options) {
    require_discrete(program);
    if (options.epsilon <= 0) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
    QueryCheck check = check_query(program, query);
    if (!check.ground_instantiable) throw Error(ErrorKind::NonGroundableQuery, check.reason);

    KnowledgeBase kb(program);
    Solver solver(kb, kb.compile_query(query));
    ProbabilityBound bound;
    std::size_t depth = std::min(std::max<std::size_t>(options.initial_depth, 1), options.max_depth);
    for (;;) {
        ++bound.iterations;
        ExplainResult r = solver.explain(depth);
        std::vector<CompositeChoice> set;
        for (auto& a : r.answers) set.push_back(std::move(a.choices));
        drop_supersets(set);
        Rational lower = total_probability(make_pairwise_incompatible(set), program);
        bound.delta = lower - bound.lower;
        bound.delta.canonicalize();
        bound.lower = lower;
        bound.depth = depth;
        if (r.frontier.empty()) {
            bound.exhausted = true;
            return bound;
        }
        if (bound.iterations >= 2 && bound.delta < options.epsilon) return bound;
        if (depth >= options.max_depth || bound.iterations >= options.max_iterations) return bound;
        depth = std::min(depth * 2, options.max_depth);
    }
}

namespace {

void gather_constants(const Term& t, std::set<std::string>& seen, std::vector<Term>& out, bool& open_functor) {
    switch (t.kind) {
        case Term::Kind::Variable: return;
        case Term::Kind::Compound:
            if (t.is_ground()) {
                Term c = t;
                if (seen.insert(to_text(c)).second) out.push_back(c);
            } else {
                open_functor = true;
            }
            for (const auto& a : t.args) gather_constants(a, seen, out, open_functor);
            return;
        default: {
            Term c = t;
            c.lexeme.clear();
            if (seen.insert(to_text(c)).second) out.push_back(c);
        }
    }
}

void atom_constants(const Term& atom, std::set<std::string>& seen, std::vector<Term>& out, bool& open_functor) {
    for (const auto& a : atom.args) gather_constants(a, seen, out, open_functor);
}

Term strip_lexemes(Term t) {
    t.lexeme.clear();
    for (auto& a : t.args) a = strip_lexemes(std::move(a));
    return t;
}

}  // namespace

std::vector<GroundFact> ground_fact_universe(const Program& program, const std::vector<Literal>& query,
                                             std::size_t max_facts) {
    require_discrete(program);
    std::set<std::string> seen;
    std::vector<Term> constants;
    bool open_functor = false;
    for (const auto& f : program.discrete_facts) atom_constants(f.atom, seen, constants, open_functor);
    for (const auto& c : program.clauses) {
        atom_constants(c.head, seen, constants, open_functor);
        for (const auto& l : c.body)
            if (l.is_atom()) atom_constants(l.atom, seen, constants, open_functor);
    }
    for (const auto& l : query)
        if (l.is_atom()) atom_constants(l.atom, seen, constants, open_functor);
    if (open_functor)
        throw Error(ErrorKind::UniverseTooLarge, "function symbols over variables give an infinite set of ground facts");

    std::vector<GroundFact> universe;
    for (std::size_t id = 0; id < program.discrete_facts.size(); ++id) {
        const DiscreteFact& f = program.discrete_facts[id];
        if (f.probability == 1) continue;
        std::vector<std::string> vars;
        collect_variables(f.atom, vars);
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        std::set<std::string> instances;
        std::vector<std::size_t> index(vars.size(), 0);
        if (!vars.empty() && constants.empty()) continue;
        for (;;) {
            Substitution::Map m;
            for (std::size_t i = 0; i < vars.size(); ++i) m.emplace(vars[i], constants[index[i]]);
            std::string text = to_text(strip_lexemes(Substitution::simultaneous(m).apply(f.atom)));
            if (instances.insert(text).second) {
                universe.push_back({id, text, f.probability});
                if (universe.size() > max_facts)
                    throw Error(ErrorKind::UniverseTooLarge,
                                "more than " + std::to_string(max_facts) + " ground probabilistic facts");
            }
            std::size_t k = 0;
            while (k < vars.size() && ++index[k] == constants.size()) index[k++] = 0;
            if (k == vars.size()) break;
        }
    }
    return universe;
}

Rational brute_force_worlds(const Program& program, const std::vector<Literal>& query, std::size_t max_facts) {
    std::vector<GroundFact> universe = ground_fact_universe(program, query, max_facts);
    KnowledgeBase kb(program);
    Solver solver(kb, kb.compile_query(query));
    std::vector<std::string> keys;
    for (const auto& g : universe) keys.push_back(choice_key(g.fact, g.instance));

    Rational total = 0;
    const std::uint64_t worlds = std::uint64_t{1} << universe.size();
    Sample sample;
    sample.fixed = true;
    for (std::uint64_t w = 0; w < worlds; ++w) {
        sample.clear();
        Rational p = 1;
        for (std::size_t i = 0; i < universe.size(); ++i) {
            bool on = (w >> i) & 1U;
            sample.discrete.emplace(keys[i], on);
            p *= on ? universe[i].probability : Rational(1 - universe[i].probability);
        }
        Outcome o = solver.solve(sample, nullptr);
        if (o == Outcome::DepthExceeded)
            throw Error(ErrorKind::DepthExceeded, "query did not terminate in a finite world");
        if (o == Outcome::True) total += p;
    }
    total.canonicalize();
    return total;
}

}  // namespace hplp
