#include "hplp/json_io.hpp"

#include "hplp/printer.hpp"

namespace hplp {

namespace {

const char* kind_name(Term::Kind k) {
    switch (k) {
        case Term::Kind::Variable: return "variable";
        case Term::Kind::Symbol: return "symbol";
        case Term::Kind::Integer: return "integer";
        case Term::Kind::Real: return "real";
        case Term::Kind::Compound: return "compound";
    }
    return "?";
}

const char* expr_name(ArithExpr::Kind k) {
    switch (k) {
        case ArithExpr::Kind::Number: return "number";
        case ArithExpr::Kind::Variable: return "variable";
        case ArithExpr::Kind::Add: return "add";
        case ArithExpr::Kind::Sub: return "sub";
        case ArithExpr::Kind::Mul: return "mul";
        case ArithExpr::Kind::Div: return "div";
        case ArithExpr::Kind::Neg: return "neg";
    }
    return "?";
}

Json positions(const std::set<std::size_t>& ps) {
    Json a = Json::array();
    for (auto p : ps) a.push_back(p + 1);
    return a;
}

Json rational(const Rational& r) {
    Json j;
    j["exact"] = to_string(r);
    j["float"] = to_double(r);
    return j;
}

std::string number(double v) { return Json(v).dump(); }

}  // namespace

Json to_json(const Span& span) {
    return Json{{"begin", span.begin}, {"end", span.end}, {"line", span.line}, {"col", span.col}};
}

Json to_json(const Term& term) {
    Json j;
    j["kind"] = kind_name(term.kind);
    switch (term.kind) {
        case Term::Kind::Variable: j["name"] = term.is_anonymous() ? "_" : term.name; break;
        case Term::Kind::Symbol: j["name"] = term.name; break;
        case Term::Kind::Integer: j["value"] = term.integer; break;
        case Term::Kind::Real: j["value"] = term.real; break;
        case Term::Kind::Compound: {
            j["functor"] = term.name;
            Json args = Json::array();
            for (const auto& a : term.args) args.push_back(to_json(a));
            j["args"] = std::move(args);
            break;
        }
    }
    j["span"] = to_json(term.span);
    return j;
}

Json to_json(const ArithExpr& expr) {
    Json j;
    j["kind"] = expr_name(expr.kind);
    if (expr.kind == ArithExpr::Kind::Number) j["value"] = expr.value;
    if (expr.kind == ArithExpr::Kind::Variable) j["name"] = expr.text;
    if (!expr.operands.empty()) {
        Json ops = Json::array();
        for (const auto& o : expr.operands) ops.push_back(to_json(o));
        j["operands"] = std::move(ops);
    }
    j["span"] = to_json(expr.span);
    return j;
}

Json to_json(const Literal& literal) {
    Json j;
    switch (literal.kind) {
        case Literal::Kind::Positive:
            j["kind"] = "positive";
            j["atom"] = to_json(literal.atom);
            break;
        case Literal::Kind::Negative:
            j["kind"] = "negative";
            j["atom"] = to_json(literal.atom);
            break;
        case Literal::Kind::Comparison:
            j["kind"] = "comparison";
            j["op"] = to_string(literal.op);
            j["left"] = to_json(literal.lhs);
            j["right"] = to_json(literal.rhs);
            break;
        case Literal::Kind::Definition:
            j["kind"] = "definition";
            j["target"] = literal.target();
            j["expr"] = to_json(literal.rhs);
            break;
    }
    j["span"] = to_json(literal.span);
    return j;
}

Json to_json(const SignatureTable& table) {
    Json preds = Json::array();
    for (const auto& [k, ps] : table.predicates())
        preds.push_back(Json{{"name", k.name}, {"arity", k.arity}, {"continuous", positions(ps)}});
    Json functors = Json::array();
    for (const auto& [k, ps] : table.functors())
        functors.push_back(Json{{"name", k.name}, {"arity", k.arity}, {"continuous", positions(ps)}});
    return Json{{"predicates", preds}, {"functors", functors}};
}

Json to_json(const Program& program) {
    Json j;
    j["kind"] = "program";
    Json facts = Json::array();
    for (const auto& f : program.discrete_facts)
        facts.push_back(Json{{"kind", "discrete_fact"},
                             {"atom", to_json(f.atom)},
                             {"probability", to_string(f.probability)},
                             {"span", to_json(f.span)}});
    j["discrete_facts"] = std::move(facts);
    Json dens = Json::array();
    for (const auto& f : program.density_facts) {
        Json params = Json::array();
        for (const auto& p : f.density.params) params.push_back(to_json(p));
        dens.push_back(Json{{"kind", "density_fact"},
                            {"atom", to_json(f.atom)},
                            {"family", to_string(f.density.family)},
                            {"variable", f.density.variable},
                            {"params", params},
                            {"span", to_json(f.span)}});
    }
    j["density_facts"] = std::move(dens);
    Json clauses = Json::array();
    for (const auto& c : program.clauses) {
        Json body = Json::array();
        for (const auto& l : c.body) body.push_back(to_json(l));
        clauses.push_back(Json{{"kind", "clause"}, {"head", to_json(c.head)}, {"body", body}, {"span", to_json(c.span)}});
    }
    j["clauses"] = std::move(clauses);
    Json decls = Json::array();
    for (const auto& d : program.continuous_decls) {
        Json ps = Json::array();
        for (auto p : d.positions) ps.push_back(p + 1);
        decls.push_back(Json{{"kind", "continuous"}, {"name", d.name}, {"arity", d.arity}, {"positions", ps}, {"span", to_json(d.span)}});
    }
    j["directives"] = std::move(decls);
    j["signatures"] = to_json(program.signatures);
    return j;
}

Json to_json(const Report& report) {
    Json diags = Json::array();
    for (const auto& d : report.diagnostics)
        diags.push_back(Json{{"rule", to_string(d.rule)},
                             {"severity", to_string(d.severity)},
                             {"line", d.location.line},
                             {"col", d.location.col},
                             {"message", d.message}});
    return Json{{"verdict", to_string(report.verdict)}, {"diagnostics", diags}};
}

Json to_json(const Estimate& e) {
    return Json{{"p_hat", e.p_hat},
                {"ci_low", e.ci_low},
                {"ci_high", e.ci_high},
                {"n", e.samples_requested},
                {"n_completed", e.samples_completed},
                {"depth_exceeded", e.depth_exceeded},
                {"seed", e.seed}};
}

Json to_json(const ProbabilityBound& b) {
    return Json{{"lower", rational(b.lower)},
                {"delta", rational(b.delta)},
                {"exhausted", b.exhausted},
                {"iterations", b.iterations}};
}

std::string to_text(const Report& report) {
    std::string out = std::string("verdict: ") + to_string(report.verdict) + "\n";
    for (const auto& d : report.diagnostics)
        out += std::to_string(d.location.line) + ":" + std::to_string(d.location.col) + ": " + to_string(d.severity) +
               " " + to_string(d.rule) + ": " + d.message + "\n";
    return out;
}

std::string to_text(const Estimate& e) {
    return "p_hat: " + number(e.p_hat) + "\nci_low: " + number(e.ci_low) + "\nci_high: " + number(e.ci_high) +
           "\nn: " + std::to_string(e.samples_requested) + "\nn_completed: " + std::to_string(e.samples_completed) +
           "\ndepth_exceeded: " + std::to_string(e.depth_exceeded) + "\nseed: " + std::to_string(e.seed) + "\n";
}

std::string to_text(const ProbabilityBound& b) {
    return "lower: " + to_string(b.lower) + " (" + number(to_double(b.lower)) + ")\ndelta: " + to_string(b.delta) +
           " (" + number(to_double(b.delta)) + ")\nexhausted: " + (b.exhausted ? "true" : "false") +
           "\niterations: " + std::to_string(b.iterations) + "\n";
}

}  // namespace hplp
