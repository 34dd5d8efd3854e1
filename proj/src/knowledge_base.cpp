#include "hplp/knowledge_base.hpp"

#include <algorithm>
#include <functional>

#include "hplp/error.hpp"
#include "hplp/printer.hpp"

namespace hplp {

struct KnowledgeBase::Builder {
    std::deque<Node>& nodes;
    std::deque<CLiteral>& naf;
    std::function<std::uint32_t(const std::string&)> intern;
    std::function<std::uint32_t(std::uint32_t, std::size_t)> pred_of;
    std::map<std::string, std::uint32_t> vars;
    std::vector<std::string> names;

    std::uint32_t var(const std::string& name) {
        auto [it, inserted] = vars.emplace(name, static_cast<std::uint32_t>(names.size()));
        if (inserted) names.push_back(name);
        return it->second;
    }

    const Node* term(const Term& t) {
        Node n;
        switch (t.kind) {
            case Term::Kind::Variable:
                n.kind = Node::Kind::Var;
                n.id = var(t.name);
                break;
            case Term::Kind::Symbol:
                n.kind = Node::Kind::Symbol;
                n.id = intern(t.name);
                break;
            case Term::Kind::Integer:
                n.kind = Node::Kind::Integer;
                n.integer = t.integer;
                break;
            case Term::Kind::Real:
                n.kind = Node::Kind::Real;
                n.real = t.real;
                break;
            case Term::Kind::Compound:
                n.kind = Node::Kind::Compound;
                n.id = intern(t.name);
                for (const auto& a : t.args) n.args.push_back(term(a));
                break;
        }
        nodes.push_back(std::move(n));
        return &nodes.back();
    }

    CExpr expr(const ArithExpr& e) {
        CExpr c;
        c.kind = e.kind;
        c.value = e.value;
        if (e.kind == ArithExpr::Kind::Number)
            c.integral = e.text.find_first_of(".eE") == std::string::npos && e.value == static_cast<double>(static_cast<std::int64_t>(e.value));
        if (e.kind == ArithExpr::Kind::Variable) c.var = var(e.text);
        for (const auto& o : e.operands) c.operands.push_back(expr(o));
        return c;
    }

    std::uint32_t pred(const Term& atom) {
        std::uint32_t functor = intern(atom.name);
        return pred_of(functor, atom.args.size());
    }

    CLiteral literal(const Literal& l) {
        CLiteral c;
        c.kind = l.kind;
        switch (l.kind) {
            case Literal::Kind::Positive:
            case Literal::Kind::Negative:
                c.atom = term(l.atom);
                c.pred = pred(l.atom);
                c.is_true = l.atom.kind == Term::Kind::Symbol && l.atom.name == "true" && c.pred == kNoPredicate;
                if (l.kind == Literal::Kind::Negative) {
                    CLiteral inner;
                    inner.kind = Literal::Kind::Positive;
                    inner.atom = c.atom;
                    inner.pred = c.pred;
                    inner.is_true = c.is_true;
                    naf.push_back(std::move(inner));
                    c.naf_goal = &naf.back();
                }
                break;
            case Literal::Kind::Comparison:
                c.op = l.op;
                c.lhs = expr(l.lhs);
                c.rhs = expr(l.rhs);
                break;
            case Literal::Kind::Definition:
                c.target = var(l.target());
                c.rhs = expr(l.rhs);
                break;
        }
        return c;
    }
};

KnowledgeBase::KnowledgeBase(const Program& program) : program_(program) {
    auto intern = [this](const std::string& name) {
        auto [it, inserted] = symbol_ids_.emplace(name, static_cast<std::uint32_t>(symbols_.size()));
        if (inserted) {
            symbols_.push_back(name);
            symbol_texts_.push_back(to_text(Term::symbol(name)));
        }
        return it->second;
    };
    auto define = [&](const Term& atom) {
        std::uint32_t f = intern(atom.name);
        auto key = std::make_pair(f, atom.args.size());
        auto it = pred_ids_.find(key);
        if (it != pred_ids_.end()) return it->second;
        auto id = static_cast<std::uint32_t>(predicates_.size());
        pred_ids_.emplace(key, id);
        predicates_.push_back({key_of(atom), {}});
        return id;
    };

    // Predicates with definitions get ids first; calls to anything else simply fail.
    struct Item {
        std::size_t order;
        Alternative::Kind kind;
        std::size_t index;
    };
    std::vector<Item> items;
    for (std::size_t i = 0; i < program_.clauses.size(); ++i)
        items.push_back({program_.clauses[i].order, Alternative::Kind::Rule, i});
    for (std::size_t i = 0; i < program_.discrete_facts.size(); ++i)
        items.push_back({program_.discrete_facts[i].order, Alternative::Kind::Discrete, i});
    for (std::size_t i = 0; i < program_.density_facts.size(); ++i)
        items.push_back({program_.density_facts[i].order, Alternative::Kind::Density, i});
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.order < b.order; });

    auto pred_of = [this](std::uint32_t f, std::size_t arity) {
        auto it = pred_ids_.find({f, arity});
        return it == pred_ids_.end() ? kNoPredicate : it->second;
    };

    for (const auto& item : items) {
        const Term* head = nullptr;
        if (item.kind == Alternative::Kind::Rule) head = &program_.clauses[item.index].head;
        if (item.kind == Alternative::Kind::Discrete) head = &program_.discrete_facts[item.index].atom;
        if (item.kind == Alternative::Kind::Density) head = &program_.density_facts[item.index].atom;
        define(*head);
    }

    for (const auto& item : items) {
        Builder b{nodes_, naf_, intern, pred_of, {}, {}};
        switch (item.kind) {
            case Alternative::Kind::Rule: {
                const Clause& c = program_.clauses[item.index];
                CClause cc;
                cc.head = b.term(c.head);
                for (const auto& l : c.body) cc.body.push_back(b.literal(l));
                cc.nvars = static_cast<std::uint32_t>(b.names.size());
                cc.source = item.index;
                predicates_[b.pred(c.head)].alternatives.push_back(
                    {Alternative::Kind::Rule, static_cast<std::uint32_t>(clauses_.size())});
                clauses_.push_back(std::move(cc));
                break;
            }
            case Alternative::Kind::Discrete: {
                const DiscreteFact& f = program_.discrete_facts[item.index];
                CDiscrete cd;
                cd.atom = b.term(f.atom);
                cd.probability = to_double(f.probability);
                cd.certain = f.probability == 1;
                cd.nvars = static_cast<std::uint32_t>(b.names.size());
                cd.id = item.index;
                predicates_[b.pred(f.atom)].alternatives.push_back(
                    {Alternative::Kind::Discrete, static_cast<std::uint32_t>(discrete_.size())});
                discrete_.push_back(std::move(cd));
                break;
            }
            case Alternative::Kind::Density: {
                const DensityFact& f = program_.density_facts[item.index];
                CDensity cd;
                cd.atom = b.term(f.atom);
                cd.family = f.density.family;
                for (const auto& p : f.density.params) cd.params.push_back(b.expr(p));
                cd.output = b.var(f.density.variable);
                PredKey key = key_of(f.atom);
                for (std::size_t i = 0; i < f.atom.args.size(); ++i) {
                    const Term& a = f.atom.args[i];
                    bool is_output = a.is_variable() && a.name == f.density.variable;
                    bool is_param = false;
                    if (a.is_variable())
                        for (const auto& p : f.density.params)
                            if (variables_of(p).count(a.name)) is_param = true;
                    if (!is_output && !is_param && !program_.signatures.is_continuous(key, i))
                        cd.key_positions.push_back(i);
                }
                cd.nvars = static_cast<std::uint32_t>(b.names.size());
                cd.id = item.index;
                predicates_[b.pred(f.atom)].alternatives.push_back(
                    {Alternative::Kind::Density, static_cast<std::uint32_t>(density_.size())});
                density_.push_back(std::move(cd));
                break;
            }
        }
    }
}

std::shared_ptr<const CompiledQuery> KnowledgeBase::compile_query(const std::vector<Literal>& query) const {
    auto q = std::make_shared<CompiledQuery>();
    CompiledQuery* raw = q.get();
    auto intern = [this, raw](const std::string& name) -> std::uint32_t {
        auto it = symbol_ids_.find(name);
        if (it != symbol_ids_.end()) return it->second;
        for (std::size_t i = 0; i < raw->extra_symbols.size(); ++i)
            if (raw->extra_symbols[i] == name) return static_cast<std::uint32_t>(symbols_.size() + i);
        raw->extra_symbols.push_back(name);
        raw->extra_texts.push_back(to_text(Term::symbol(name)));
        return static_cast<std::uint32_t>(symbols_.size() + raw->extra_symbols.size() - 1);
    };
    auto pred_of = [this](std::uint32_t f, std::size_t arity) {
        auto it = pred_ids_.find({f, arity});
        return it == pred_ids_.end() ? kNoPredicate : it->second;
    };
    Builder b{q->nodes, q->naf, intern, pred_of, {}, {}};
    for (const auto& l : query) q->body.push_back(b.literal(l));
    q->nvars = static_cast<std::uint32_t>(b.names.size());
    q->var_names = b.names;
    return q;
}

const std::string& KnowledgeBase::symbol_text(std::uint32_t id, const CompiledQuery* query) const {
    if (id < symbol_texts_.size()) return symbol_texts_[id];
    if (!query || id - symbol_texts_.size() >= query->extra_texts.size())
        throw Error(ErrorKind::InvalidArgument, "unknown symbol id " + std::to_string(id));
    return query->extra_texts[id - symbol_texts_.size()];
}

const std::string& KnowledgeBase::symbol_name(std::uint32_t id, const CompiledQuery* query) const {
    if (id < symbols_.size()) return symbols_[id];
    if (!query || id - symbols_.size() >= query->extra_symbols.size())
        throw Error(ErrorKind::InvalidArgument, "unknown symbol id " + std::to_string(id));
    return query->extra_symbols[id - symbols_.size()];
}

}  // namespace hplp
