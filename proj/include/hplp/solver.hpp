#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "hplp/choices.hpp"
#include "hplp/error.hpp"
#include "hplp/knowledge_base.hpp"
#include "hplp/rng.hpp"
#include "hplp/sample.hpp"

namespace hplp {

inline constexpr std::size_t kDefaultExactDepth = 10000;
inline constexpr std::size_t kDefaultSamplingDepth = 100000;

struct Answer {
    std::vector<Term> bindings;  // one per query variable, in first-occurrence order
    CompositeChoice choices;
};

struct ExplainResult {
    std::vector<std::string> variables;
    std::vector<Answer> answers;
    // Partial derivations cut by the depth bound; empty means the search was exhaustive.
    std::vector<CompositeChoice> frontier;
    std::size_t steps = 0;
};

enum class Outcome { True, False, DepthExceeded };
const char* to_string(Outcome outcome);

// SLDNF resolution over a compiled program: leftmost selection, clauses in source order,
// occurs check on. The search is iterative, so deep derivations do not consume native stack.
class Solver {
public:
    Solver(const KnowledgeBase& kb, std::shared_ptr<const CompiledQuery> query);

    // Exact mode: every refutation within `depth_bound` resolution steps together with the
    // composite choice it assumes. Negation contributes the duals of the inner explanations.
    ExplainResult explain(std::size_t depth_bound = kDefaultExactDepth);

    // Sampling mode: truth of the query in the world `sample`, drawing missing values from `rng`.
    // On success `bindings` (if given) receives the first answer.
    Outcome solve(Sample& sample, RngStream* rng, std::size_t depth_bound = kDefaultSamplingDepth,
                  std::vector<Term>* bindings = nullptr);

    std::size_t steps() const { return steps_; }

private:
    struct Ref {
        const Node* node = nullptr;
        std::uint32_t env = 0;
    };
    struct Deref {
        Ref ref;
        std::int64_t slot = -1;  // unbound variable slot, or -1
    };
    enum class GoalKind : std::uint8_t { Literal, NafEnd, QueryEnd };
    struct Goal {
        GoalKind kind;
        const CLiteral* literal;
        std::uint32_t env;
        std::shared_ptr<const Goal> next;
    };
    using GoalPtr = std::shared_ptr<const Goal>;

    struct KappaEntry {
        AtomicChoice choice;
        std::string key;
    };

    enum class CpKind : std::uint8_t { Alternatives, Barrier, Duals };
    struct ChoicePoint {
        CpKind kind = CpKind::Alternatives;
        std::size_t slots = 0, trail = 0, kappa = 0, depth = 0;
        GoalPtr goal;  // Alternatives: goal being resolved; Barrier/Duals: continuation
        std::size_t next = 0;
        // Barrier
        std::vector<CompositeChoice> successes;
        std::vector<CompositeChoice> frontier;
        bool unknown = false;
        bool definite = false;
        // Duals
        std::vector<CompositeChoice> duals;
    };

    enum class Step { Continue, Fail, Done };

    ChoicePoint make_cp(CpKind kind, GoalPtr goal) const;

    void reset(Sample* sample, RngStream* rng, std::size_t depth_bound, bool exact);
    Outcome run();
    Step resolve(GoalPtr& goal);
    Step try_alternatives(std::size_t cp_index, GoalPtr& goal);
    Step attempt(const Alternative& alt, const GoalPtr& goal, std::size_t depth, GoalPtr& out);
    bool backtrack(GoalPtr& goal);
    void restore(const ChoicePoint& cp);
    void cut_to_barrier();
    void depth_exceeded();

    Deref deref(Ref r) const;
    Deref deref_slot(std::uint32_t slot) const;
    bool unify(Ref a, Ref b);
    bool unify_slot(std::uint32_t slot, Ref value);
    bool occurs(std::int64_t slot, Ref t) const;
    void bind(std::int64_t slot, Ref value);
    std::uint32_t allocate(std::uint32_t n);
    bool ground_text(Ref r, std::string& out, bool* has_real) const;
    // A null node means "the variable in slot r.env".
    Term to_term(Ref r) const;
    double eval(const CExpr& e, std::uint32_t env, bool& integral, ErrorKind unbound) const;
    const Node* number_node(double value, bool integral);

    std::size_t kappa_mark() const;
    CompositeChoice kappa_since(std::size_t mark) const;
    void kappa_push(AtomicChoice c);
    void kappa_truncate(std::size_t size);
    std::vector<CompositeChoice>* innermost_frontier();

    const KnowledgeBase& kb_;
    std::shared_ptr<const CompiledQuery> query_;

    bool exact_ = true;
    Sample* sample_ = nullptr;
    RngStream* rng_ = nullptr;
    std::size_t depth_bound_ = 0;
    std::size_t depth_ = 0;
    std::size_t steps_ = 0;

    std::vector<Ref> slots_;
    std::vector<std::uint32_t> trail_;
    std::vector<ChoicePoint> cps_;
    std::vector<std::size_t> barriers_;
    std::vector<KappaEntry> kappa_;
    std::unordered_map<std::string, bool> kappa_index_;
    std::deque<Node> scratch_;

    bool top_unknown_ = false;
    std::vector<CompositeChoice> top_frontier_;
    std::vector<Answer> answers_;
    std::vector<Term>* first_answer_ = nullptr;
};

// Duals of a set of composite choices: minimal sets of negated choices that contradict
// every member. Used for negation as failure in exact mode.
std::vector<CompositeChoice> dual_choices(const std::vector<CompositeChoice>& set);

}  // namespace hplp
