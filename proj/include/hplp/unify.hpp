#pragma once

#include <map>
#include <optional>
#include <string>

#include "hplp/ast.hpp"

namespace hplp {

// Idempotent substitution over named variables: no bound variable occurs in any binding.
class Substitution {
public:
    using Map = std::map<std::string, Term>;

    bool empty() const { return bindings_.empty(); }
    std::size_t size() const { return bindings_.size(); }
    const Term* lookup(const std::string& var) const;
    Map::const_iterator begin() const { return bindings_.begin(); }
    Map::const_iterator end() const { return bindings_.end(); }
    const Map& bindings() const { return bindings_; }

    Term apply(const Term& term) const;
    ArithExpr apply(const ArithExpr& expr) const;
    Literal apply(const Literal& literal) const;

    // Adds var -> value (value must already be fully applied and must not contain var).
    void bind(const std::string& var, const Term& value);

    // Simultaneous substitution from raw bindings (used for one-way matching).
    static Substitution simultaneous(Map bindings);

    bool operator==(const Substitution& other) const { return bindings_ == other.bindings_; }

private:
    Map bindings_;
};

// Most general unifier with occurs check; nullopt when the terms do not unify.
std::optional<Substitution> unify(const Term& a, const Term& b);
std::optional<Substitution> unify(const Term& a, const Term& b, Substitution start);

// One-way matching: theta with pattern.theta == instance.
std::optional<Substitution> match(const Term& pattern, const Term& instance);

bool occurs_in(const std::string& var, const Term& term);
bool is_variant(const Term& a, const Term& b);

// Appends suffix to every variable name.
Term rename(const Term& term, const std::string& suffix);
ArithExpr rename(const ArithExpr& expr, const std::string& suffix);
Literal rename(const Literal& literal, const std::string& suffix);

std::string to_text(const Substitution& subst);

}  // namespace hplp
