#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "hplp/ast.hpp"

namespace hplp {

// Immutable term skeleton. Variables are numbered per clause (or per query);
// at run time a skeleton is paired with the base index of its variable block.
struct Node {
    enum class Kind : std::uint8_t { Var, Symbol, Integer, Real, Compound };

    Kind kind = Kind::Symbol;
    std::uint32_t id = 0;  // variable index, symbol id, or functor symbol id
    std::int64_t integer = 0;
    double real = 0.0;
    std::vector<const Node*> args;
};

struct CExpr {
    ArithExpr::Kind kind = ArithExpr::Kind::Number;
    double value = 0.0;
    bool integral = false;  // number written as an integer
    std::uint32_t var = 0;
    std::vector<CExpr> operands;
};

inline constexpr std::uint32_t kNoPredicate = std::numeric_limits<std::uint32_t>::max();

struct CLiteral {
    Literal::Kind kind = Literal::Kind::Positive;
    const Node* atom = nullptr;
    std::uint32_t pred = kNoPredicate;
    bool is_true = false;             // the builtin `true`
    const CLiteral* naf_goal = nullptr;  // positive form of a negative literal
    CompareOp op = CompareOp::Less;
    CExpr lhs;
    CExpr rhs;
    std::uint32_t target = 0;  // Definition target variable
};

struct CClause {
    const Node* head = nullptr;
    std::vector<CLiteral> body;
    std::uint32_t nvars = 0;
    std::size_t source = 0;  // index into Program::clauses
};

struct CDiscrete {
    const Node* atom = nullptr;
    double probability = 1.0;
    bool certain = false;  // p == 1
    std::uint32_t nvars = 0;
    std::size_t id = 0;  // index into Program::discrete_facts
};

struct CDensity {
    const Node* atom = nullptr;
    DensityFamily family = DensityFamily::Gaussian;
    std::vector<CExpr> params;
    std::uint32_t output = 0;            // output variable index
    std::vector<std::size_t> key_positions;  // term positions identifying the random variable
    std::uint32_t nvars = 0;
    std::size_t id = 0;  // index into Program::density_facts
};

struct Alternative {
    enum class Kind : std::uint8_t { Rule, Discrete, Density };
    Kind kind;
    std::uint32_t index;
};

struct Predicate {
    PredKey key;
    std::vector<Alternative> alternatives;  // source order
};

struct CompiledQuery {
    std::vector<CLiteral> body;
    std::uint32_t nvars = 0;
    std::vector<std::string> var_names;     // index -> source name
    std::vector<std::string> extra_symbols;  // symbols unknown to the program
    std::vector<std::string> extra_texts;
    std::deque<Node> nodes;
    std::deque<CLiteral> naf;
};

// Compiled, read-only form of a Program shared by all solver instances.
class KnowledgeBase {
public:
    explicit KnowledgeBase(const Program& program);
    KnowledgeBase(const KnowledgeBase&) = delete;
    KnowledgeBase& operator=(const KnowledgeBase&) = delete;

    const Program& program() const { return program_; }

    std::shared_ptr<const CompiledQuery> compile_query(const std::vector<Literal>& query) const;

    const std::vector<Predicate>& predicates() const { return predicates_; }
    const std::vector<CClause>& clauses() const { return clauses_; }
    const std::vector<CDiscrete>& discrete() const { return discrete_; }
    const std::vector<CDensity>& density() const { return density_; }

    // Printed form of a symbol (quoted when needed); ids past the program table index the query's extras.
    const std::string& symbol_text(std::uint32_t id, const CompiledQuery* query) const;
    const std::string& symbol_name(std::uint32_t id, const CompiledQuery* query) const;
    std::size_t symbol_count() const { return symbols_.size(); }

private:
    struct Builder;

    Program program_;
    std::vector<std::string> symbols_;
    std::vector<std::string> symbol_texts_;
    std::unordered_map<std::string, std::uint32_t> symbol_ids_;
    std::map<std::pair<std::uint32_t, std::size_t>, std::uint32_t> pred_ids_;
    std::vector<Predicate> predicates_;
    std::vector<CClause> clauses_;
    std::vector<CDiscrete> discrete_;
    std::vector<CDensity> density_;
    std::deque<Node> nodes_;
    std::deque<CLiteral> naf_;
};

}  // namespace hplp
