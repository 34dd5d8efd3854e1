#include "hplp/solver.hpp"

#include <algorithm>

#include "hplp/distributions.hpp"
#include "hplp/error.hpp"
#include "hplp/printer.hpp"

namespace hplp {

const char* to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::True: return "true";
        case Outcome::False: return "false";
        case Outcome::DepthExceeded: return "depth_exceeded";
    }
    return "?";
}

namespace {

void minimise(std::vector<CompositeChoice>& set) {
    std::sort(set.begin(), set.end(), [](const CompositeChoice& a, const CompositeChoice& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<CompositeChoice> kept;
    for (auto& c : set) {
        bool covered = false;
        for (const auto& k : kept)
            if (subsumes(k, c)) {
                covered = true;
                break;
            }
        if (!covered) kept.push_back(std::move(c));
    }
    std::sort(kept.begin(), kept.end());
    set = std::move(kept);
}

}  // namespace

std::vector<CompositeChoice> dual_choices(const std::vector<CompositeChoice>& set) {
    std::vector<CompositeChoice> duals{CompositeChoice{}};
    for (const auto& s : set) {
        std::vector<CompositeChoice> next;
        for (const auto& d : duals) {
            if (incompatible(d, s)) {
                next.push_back(d);
                continue;
            }
            for (const auto& c : s) {
                bool mentioned = std::any_of(d.begin(), d.end(), [&](const AtomicChoice& x) { return x.same_fact(c); });
                if (mentioned) continue;
                CompositeChoice e = d;
                e.push_back(c.negated());
                normalize(e);
                next.push_back(std::move(e));
            }
        }
        minimise(next);
        duals = std::move(next);
        if (duals.empty()) break;
    }
    return duals;
}

Solver::Solver(const KnowledgeBase& kb, std::shared_ptr<const CompiledQuery> query)
    : kb_(kb), query_(std::move(query)) {}

void Solver::reset(Sample* sample, RngStream* rng, std::size_t depth_bound, bool exact) {
    exact_ = exact;
    sample_ = sample;
    rng_ = rng;
    depth_bound_ = depth_bound;
    depth_ = 0;
    steps_ = 0;
    slots_.clear();
    trail_.clear();
    cps_.clear();
    barriers_.clear();
    kappa_.clear();
    kappa_index_.clear();
    scratch_.clear();
    top_unknown_ = false;
    top_frontier_.clear();
    answers_.clear();
    first_answer_ = nullptr;
}

ExplainResult Solver::explain(std::size_t depth_bound) {
    reset(nullptr, nullptr, depth_bound, true);
    run();
    ExplainResult r;
    r.variables = query_->var_names;
    r.answers = std::move(answers_);
    r.frontier = std::move(top_frontier_);
    r.steps = steps_;
    answers_.clear();
    top_frontier_.clear();
    return r;
}

Outcome Solver::solve(Sample& sample, RngStream* rng, std::size_t depth_bound, std::vector<Term>* bindings) {
    reset(&sample, rng, depth_bound, false);
    first_answer_ = bindings;
    return run();
}

Outcome Solver::run() {
    std::uint32_t env = allocate(query_->nvars);
    GoalPtr goal = std::make_shared<const Goal>(Goal{GoalKind::QueryEnd, nullptr, env, nullptr});
    for (auto it = query_->body.rbegin(); it != query_->body.rend(); ++it)
        goal = std::make_shared<const Goal>(Goal{GoalKind::Literal, &*it, env, goal});

    for (;;) {
        Step s = resolve(goal);
        if (s == Step::Done) return Outcome::True;
        if (s == Step::Fail && !backtrack(goal)) break;
    }
    if (exact_) return answers_.empty() ? Outcome::False : Outcome::True;
    return top_unknown_ ? Outcome::DepthExceeded : Outcome::False;
}

Solver::Step Solver::resolve(GoalPtr& goal) {
    switch (goal->kind) {
        case GoalKind::QueryEnd: {
            if (exact_) {
                Answer a;
                for (std::uint32_t i = 0; i < query_->nvars; ++i) a.bindings.push_back(to_term(Ref{nullptr, i}));
                a.choices = kappa_since(0);
                answers_.push_back(std::move(a));
                return Step::Fail;
            }
            if (first_answer_) {
                first_answer_->clear();
                for (std::uint32_t i = 0; i < query_->nvars; ++i) first_answer_->push_back(to_term(Ref{nullptr, i}));
            }
            return Step::Done;
        }
        case GoalKind::NafEnd: {
            if (!exact_) {
                cut_to_barrier();
                return Step::Fail;
            }
            ChoicePoint& b = cps_[barriers_.back()];
            CompositeChoice extras = kappa_since(b.kappa);
            if (extras.empty()) {
                b.definite = true;
                cps_.resize(barriers_.back() + 1);
            } else {
                b.successes.push_back(std::move(extras));
            }
            return Step::Fail;
        }
        case GoalKind::Literal: break;
    }

    if (depth_ >= depth_bound_) {
        depth_exceeded();
        return Step::Fail;
    }
    ++steps_;
    const CLiteral& lit = *goal->literal;
    const std::uint32_t env = goal->env;
    switch (lit.kind) {
        case Literal::Kind::Positive: {
            if (lit.is_true) {
                ++depth_;
                goal = goal->next;
                return Step::Continue;
            }
            if (lit.pred == kNoPredicate) return Step::Fail;
            cps_.push_back(make_cp(CpKind::Alternatives, goal));
            return try_alternatives(cps_.size() - 1, goal);
        }
        case Literal::Kind::Negative: {
            std::string text;
            if (!ground_text(Ref{lit.atom, env}, text, nullptr))
                throw Error(ErrorKind::FloundedNegation,
                            "negation selected on non-ground goal \\+ " + to_text(to_term(Ref{lit.atom, env})));
            cps_.push_back(make_cp(CpKind::Barrier, goal->next));
            barriers_.push_back(cps_.size() - 1);
            GoalPtr end = std::make_shared<const Goal>(Goal{GoalKind::NafEnd, nullptr, env, nullptr});
            goal = std::make_shared<const Goal>(Goal{GoalKind::Literal, lit.naf_goal, env, end});
            return Step::Continue;
        }
        case Literal::Kind::Comparison: {
            bool li = false, ri = false;
            double l = eval(lit.lhs, env, li, ErrorKind::UnboundVariable);
            double r = eval(lit.rhs, env, ri, ErrorKind::UnboundVariable);
            if (!eval_compare(lit.op, l, r)) return Step::Fail;
            ++depth_;
            goal = goal->next;
            return Step::Continue;
        }
        case Literal::Kind::Definition: {
            bool integral = false;
            double v = eval(lit.rhs, env, integral, ErrorKind::UnboundVariable);
            if (!unify_slot(env + lit.target, Ref{number_node(v, integral), 0})) {
                // a bound target compares numerically: 2 =:= 2.0 holds
                Deref d = deref_slot(env + lit.target);
                const Node* n = d.ref.node;
                if (d.slot >= 0 || !n) return Step::Fail;
                double have = 0;
                if (n->kind == Node::Kind::Integer) have = static_cast<double>(n->integer);
                else if (n->kind == Node::Kind::Real) have = n->real;
                else return Step::Fail;
                if (have != v) return Step::Fail;
            }
            ++depth_;
            goal = goal->next;
            return Step::Continue;
        }
    }
    return Step::Fail;
}

Solver::Step Solver::try_alternatives(std::size_t cp_index, GoalPtr& goal) {
    for (;;) {
        ChoicePoint& cp = cps_[cp_index];
        const Predicate& pred = kb_.predicates()[cp.goal->literal->pred];
        if (cp.next >= pred.alternatives.size()) {
            cps_.pop_back();
            return Step::Fail;
        }
        restore(cp);
        const Alternative alt = pred.alternatives[cp.next++];
        GoalPtr g = cp.goal;
        std::size_t depth = cp.depth;
        bool last = cp.next == pred.alternatives.size();
        if (last) cps_.pop_back();
        GoalPtr out;
        if (attempt(alt, g, depth, out) == Step::Continue) {
            goal = std::move(out);
            return Step::Continue;
        }
        if (last) return Step::Fail;
    }
}

Solver::Step Solver::attempt(const Alternative& alt, const GoalPtr& goal, std::size_t depth, GoalPtr& out) {
    const CLiteral& lit = *goal->literal;
    const Ref call{lit.atom, goal->env};
    switch (alt.kind) {
        case Alternative::Kind::Rule: {
            const CClause& c = kb_.clauses()[alt.index];
            std::uint32_t env = allocate(c.nvars);
            if (!unify(Ref{c.head, env}, call)) return Step::Fail;
            depth_ = depth + 1;
            GoalPtr next = goal->next;
            for (auto it = c.body.rbegin(); it != c.body.rend(); ++it)
                next = std::make_shared<const Goal>(Goal{GoalKind::Literal, &*it, env, next});
            out = std::move(next);
            return Step::Continue;
        }
        case Alternative::Kind::Discrete: {
            const CDiscrete& f = kb_.discrete()[alt.index];
            std::uint32_t env = allocate(f.nvars);
            if (!unify(Ref{f.atom, env}, call)) return Step::Fail;
            if (!f.certain) {
                std::string text;
                if (!ground_text(Ref{f.atom, env}, text, nullptr))
                    throw Error(ErrorKind::NonGroundFact,
                                "probabilistic fact called with non-ground arguments: " + to_text(to_term(Ref{f.atom, env})));
                std::string key = choice_key(f.id, text);
                if (exact_) {
                    auto it = kappa_index_.find(key);
                    if (it != kappa_index_.end()) {
                        if (!it->second) return Step::Fail;
                    } else {
                        kappa_push(AtomicChoice{f.id, text, true});
                    }
                } else {
                    bool value;
                    auto it = sample_->discrete.find(key);
                    if (it != sample_->discrete.end()) {
                        value = it->second;
                    } else {
                        if (sample_->fixed || !rng_)
                            throw Error(ErrorKind::InvalidArgument, "the world does not fix fact " + text);
                        value = rng_->uniform() < f.probability;
                        sample_->discrete.emplace(std::move(key), value);
                    }
                    if (!value) return Step::Fail;
                }
            }
            depth_ = depth + 1;
            out = goal->next;
            return Step::Continue;
        }
        case Alternative::Kind::Density: {
            if (exact_)
                throw Error(ErrorKind::ProgramHasDensityFacts, "exact inference does not support density facts");
            const CDensity& d = kb_.density()[alt.index];
            std::uint32_t env = allocate(d.nvars);
            if (!unify(Ref{d.atom, env}, call)) return Step::Fail;
            std::string key = "d" + std::to_string(d.id) + ":";
            for (std::size_t k = 0; k < d.key_positions.size(); ++k) {
                Ref arg{d.atom->args[d.key_positions[k]], env};
                bool has_real = false;
                std::string text;
                bool ground = ground_text(arg, text, &has_real);
                if (has_real)
                    throw Error(ErrorKind::ContinuousIndex,
                                "random variable " + to_text(to_term(Ref{d.atom, env})) + " is indexed by a real value");
                if (!ground)
                    throw Error(ErrorKind::NonGroundFact,
                                "density fact called with non-ground index: " + to_text(to_term(Ref{d.atom, env})));
                if (k) key += ',';
                key += text;
            }
            std::vector<double> params;
            for (const auto& p : d.params) {
                bool integral = false;
                params.push_back(eval(p, env, integral, ErrorKind::UnboundDensityParameter));
            }
            check_parameters(d.family, params);
            double value;
            auto it = sample_->continuous.find(key);
            if (it != sample_->continuous.end()) {
                value = it->second;
            } else {
                if (sample_->fixed || !rng_)
                    throw Error(ErrorKind::InvalidArgument, "the world does not fix " + to_text(to_term(Ref{d.atom, env})));
                value = sample(d.family, params, *rng_);
                sample_->continuous.emplace(std::move(key), value);
            }
            if (!unify_slot(env + d.output, Ref{number_node(value, false), 0})) return Step::Fail;
            depth_ = depth + 1;
            out = goal->next;
            return Step::Continue;
        }
    }
    return Step::Fail;
}

bool Solver::backtrack(GoalPtr& goal) {
    while (!cps_.empty()) {
        ChoicePoint& cp = cps_.back();
        switch (cp.kind) {
            case CpKind::Alternatives:
                if (try_alternatives(cps_.size() - 1, goal) == Step::Continue) return true;
                break;
            case CpKind::Duals: {
                restore(cp);
                if (cp.next >= cp.duals.size()) {
                    cps_.pop_back();
                    break;
                }
                CompositeChoice d = cp.duals[cp.next++];
                GoalPtr rest = cp.goal;
                std::size_t depth = cp.depth;
                if (cp.next == cp.duals.size()) cps_.pop_back();
                for (auto& c : d) kappa_push(std::move(c));
                depth_ = depth + 1;
                goal = std::move(rest);
                return true;
            }
            case CpKind::Barrier: {
                restore(cp);
                ChoicePoint b = std::move(cp);
                cps_.pop_back();
                barriers_.pop_back();
                if (!exact_) {
                    if (b.unknown) {
                        if (barriers_.empty()) top_unknown_ = true;
                        else cps_[barriers_.back()].unknown = true;
                        break;
                    }
                    depth_ = b.depth + 1;
                    goal = b.goal;
                    return true;
                }
                if (b.definite) break;
                std::vector<CompositeChoice> all = b.successes;
                all.insert(all.end(), b.frontier.begin(), b.frontier.end());
                if (!b.frontier.empty()) {
                    std::size_t mark = barriers_.empty() ? 0 : cps_[barriers_.back()].kappa;
                    CompositeChoice base = kappa_since(mark);
                    auto* outer = innermost_frontier();
                    for (const auto& f : b.frontier) {
                        CompositeChoice e = merge(base, f);
                        normalize(e);
                        outer->push_back(std::move(e));
                    }
                }
                auto duals = dual_choices(all);
                if (duals.empty()) break;
                ChoicePoint dc = make_cp(CpKind::Duals, b.goal);
                dc.depth = b.depth;
                dc.duals = std::move(duals);
                cps_.push_back(std::move(dc));
                break;
            }
        }
    }
    return false;
}

Solver::ChoicePoint Solver::make_cp(CpKind kind, GoalPtr goal) const {
    ChoicePoint cp;
    cp.kind = kind;
    cp.slots = slots_.size();
    cp.trail = trail_.size();
    cp.kappa = kappa_.size();
    cp.depth = depth_;
    cp.goal = std::move(goal);
    return cp;
}

void Solver::restore(const ChoicePoint& cp) {
    while (trail_.size() > cp.trail) {
        slots_[trail_.back()] = Ref{};
        trail_.pop_back();
    }
    slots_.resize(cp.slots);
    kappa_truncate(cp.kappa);
    depth_ = cp.depth;
}

void Solver::cut_to_barrier() {
    std::size_t b = barriers_.back();
    barriers_.pop_back();
    restore(cps_[b]);
    cps_.resize(b);
}

void Solver::depth_exceeded() {
    if (exact_) {
        std::size_t mark = barriers_.empty() ? 0 : cps_[barriers_.back()].kappa;
        innermost_frontier()->push_back(kappa_since(mark));
    } else if (barriers_.empty()) {
        top_unknown_ = true;
    } else {
        cps_[barriers_.back()].unknown = true;
    }
}

std::vector<CompositeChoice>* Solver::innermost_frontier() {
    return barriers_.empty() ? &top_frontier_ : &cps_[barriers_.back()].frontier;
}

Solver::Deref Solver::deref(Ref r) const {
    while (r.node->kind == Node::Kind::Var) {
        std::uint32_t slot = r.env + r.node->id;
        const Ref& b = slots_[slot];
        if (!b.node) return {r, static_cast<std::int64_t>(slot)};
        r = b;
    }
    return {r, -1};
}

Solver::Deref Solver::deref_slot(std::uint32_t slot) const {
    const Ref& b = slots_[slot];
    if (!b.node) return {Ref{}, static_cast<std::int64_t>(slot)};
    return deref(b);
}

bool Solver::unify_slot(std::uint32_t slot, Ref value) {
    Deref d = deref_slot(slot);
    if (d.slot >= 0) {
        if (occurs(d.slot, value)) return false;
        bind(d.slot, value);
        return true;
    }
    return unify(d.ref, value);
}

bool Solver::unify(Ref a, Ref b) {
    std::vector<std::pair<Ref, Ref>> stack{{a, b}};
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        Deref dx = deref(x);
        Deref dy = deref(y);
        if (dx.slot >= 0 && dy.slot >= 0) {
            if (dx.slot != dy.slot) bind(std::max(dx.slot, dy.slot), dx.slot > dy.slot ? dy.ref : dx.ref);
            continue;
        }
        if (dx.slot >= 0) {
            if (occurs(dx.slot, dy.ref)) return false;
            bind(dx.slot, dy.ref);
            continue;
        }
        if (dy.slot >= 0) {
            if (occurs(dy.slot, dx.ref)) return false;
            bind(dy.slot, dx.ref);
            continue;
        }
        const Node* n = dx.ref.node;
        const Node* m = dy.ref.node;
        if (n->kind != m->kind) return false;
        switch (n->kind) {
            case Node::Kind::Symbol:
                if (n->id != m->id) return false;
                break;
            case Node::Kind::Integer:
                if (n->integer != m->integer) return false;
                break;
            case Node::Kind::Real:
                if (n->real != m->real) return false;
                break;
            case Node::Kind::Compound:
                if (n->id != m->id || n->args.size() != m->args.size()) return false;
                for (std::size_t i = 0; i < n->args.size(); ++i)
                    stack.push_back({Ref{n->args[i], dx.ref.env}, Ref{m->args[i], dy.ref.env}});
                break;
            case Node::Kind::Var: break;
        }
    }
    return true;
}

bool Solver::occurs(std::int64_t slot, Ref t) const {
    std::vector<Ref> stack{t};
    while (!stack.empty()) {
        Deref d = deref(stack.back());
        stack.pop_back();
        if (d.slot == slot) return true;
        if (d.slot < 0 && d.ref.node->kind == Node::Kind::Compound)
            for (const Node* a : d.ref.node->args) stack.push_back(Ref{a, d.ref.env});
    }
    return false;
}

void Solver::bind(std::int64_t slot, Ref value) {
    slots_[static_cast<std::size_t>(slot)] = value;
    trail_.push_back(static_cast<std::uint32_t>(slot));
}

std::uint32_t Solver::allocate(std::uint32_t n) {
    auto base = static_cast<std::uint32_t>(slots_.size());
    slots_.resize(slots_.size() + n);
    return base;
}

bool Solver::ground_text(Ref r, std::string& out, bool* has_real) const {
    Deref d = deref(r);
    if (d.slot >= 0) return false;
    const Node* n = d.ref.node;
    switch (n->kind) {
        case Node::Kind::Symbol: out += kb_.symbol_text(n->id, query_.get()); return true;
        case Node::Kind::Integer: out += std::to_string(n->integer); return true;
        case Node::Kind::Real:
            if (has_real) *has_real = true;
            out += format_real(n->real);
            return true;
        case Node::Kind::Compound: {
            out += kb_.symbol_text(n->id, query_.get());
            out += '(';
            bool ground = true;
            for (std::size_t i = 0; i < n->args.size(); ++i) {
                if (i) out += ',';
                ground = ground_text(Ref{n->args[i], d.ref.env}, out, has_real) && ground;
            }
            out += ')';
            return ground;
        }
        case Node::Kind::Var: break;
    }
    return false;
}

Term Solver::to_term(Ref r) const {
    Deref d = r.node ? deref(r) : deref_slot(r.env);
    if (d.slot >= 0) return Term::variable("_G" + std::to_string(d.slot));
    const Node* n = d.ref.node;
    switch (n->kind) {
        case Node::Kind::Symbol: return Term::symbol(kb_.symbol_name(n->id, query_.get()));
        case Node::Kind::Integer: return Term::int_constant(n->integer);
        case Node::Kind::Real: return Term::real_constant(n->real);
        case Node::Kind::Compound: {
            std::vector<Term> args;
            for (const Node* a : n->args) args.push_back(to_term(Ref{a, d.ref.env}));
            return Term::compound(kb_.symbol_name(n->id, query_.get()), std::move(args));
        }
        case Node::Kind::Var: break;
    }
    return Term::variable("_G");
}

double Solver::eval(const CExpr& e, std::uint32_t env, bool& integral, ErrorKind unbound) const {
    using K = ArithExpr::Kind;
    switch (e.kind) {
        case K::Number: integral = e.integral; return e.value;
        case K::Variable: {
            Deref d = deref_slot(env + e.var);
            if (d.slot >= 0) {
                const char* what = unbound == ErrorKind::UnboundDensityParameter ? "density parameter" : "arithmetic";
                throw Error(unbound, std::string("unbound variable in ") + what);
            }
            const Node* n = d.ref.node;
            if (n->kind == Node::Kind::Integer) {
                integral = true;
                return static_cast<double>(n->integer);
            }
            if (n->kind == Node::Kind::Real) {
                integral = false;
                return n->real;
            }
            throw Error(ErrorKind::InvalidArgument, "non-numeric term " + to_text(to_term(d.ref)) + " in arithmetic");
        }
        case K::Neg: return -eval(e.operands[0], env, integral, unbound);
        case K::Add:
        case K::Sub:
        case K::Mul: {
            bool a = false, b = false;
            double x = eval(e.operands[0], env, a, unbound);
            double y = eval(e.operands[1], env, b, unbound);
            integral = a && b;
            if (e.kind == K::Add) return x + y;
            if (e.kind == K::Sub) return x - y;
            return x * y;
        }
        case K::Div: {
            bool a = false, b = false;
            double x = eval(e.operands[0], env, a, unbound);
            double y = eval(e.operands[1], env, b, unbound);
            if (y == 0.0) throw Error(ErrorKind::DivisionByZero, "division by zero");
            integral = false;
            return x / y;
        }
    }
    return 0.0;
}

const Node* Solver::number_node(double value, bool integral) {
    Node n;
    if (integral && value >= -9.0e18 && value <= 9.0e18) {
        n.kind = Node::Kind::Integer;
        n.integer = static_cast<std::int64_t>(value);
    } else {
        n.kind = Node::Kind::Real;
        n.real = value;
    }
    scratch_.push_back(std::move(n));
    return &scratch_.back();
}

CompositeChoice Solver::kappa_since(std::size_t mark) const {
    CompositeChoice out;
    for (std::size_t i = mark; i < kappa_.size(); ++i) out.push_back(kappa_[i].choice);
    normalize(out);
    return out;
}

void Solver::kappa_push(AtomicChoice c) {
    std::string key = choice_key(c.fact, c.instance);
    kappa_index_[key] = c.selected;
    kappa_.push_back({std::move(c), std::move(key)});
}

void Solver::kappa_truncate(std::size_t size) {
    while (kappa_.size() > size) {
        kappa_index_.erase(kappa_.back().key);
        kappa_.pop_back();
    }
}

}  // namespace hplp
