#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "hplp/ast.hpp"
#include "hplp/rational.hpp"

namespace hplp {

// One ground probabilistic fact instance with its truth value. `fact` indexes
// Program::discrete_facts; `instance` is the printed ground atom.
struct AtomicChoice {
    std::size_t fact = 0;
    std::string instance;
    bool selected = true;

    auto operator<=>(const AtomicChoice& other) const {
        if (auto c = instance <=> other.instance; c != 0) return c;
        if (auto c = fact <=> other.fact; c != 0) return c;
        return selected <=> other.selected;
    }
    bool operator==(const AtomicChoice&) const = default;

    bool same_fact(const AtomicChoice& other) const { return fact == other.fact && instance == other.instance; }
    AtomicChoice negated() const { return {fact, instance, !selected}; }
};

// Sorted, duplicate-free set of atomic choices.
using CompositeChoice = std::vector<AtomicChoice>;

// Key used to memoise a fact instance inside a Sample.
std::string choice_key(std::size_t fact, const std::string& instance);

void normalize(CompositeChoice& choice);
bool is_consistent(const CompositeChoice& choice);
// True when the union of the two is inconsistent.
bool incompatible(const CompositeChoice& a, const CompositeChoice& b);
// a is a subset of b.
bool subsumes(const CompositeChoice& a, const CompositeChoice& b);
CompositeChoice merge(const CompositeChoice& a, const CompositeChoice& b);

std::string to_text(const AtomicChoice& choice);
std::string to_text(const CompositeChoice& choice);

// Product of p over selected and (1 - p) over unselected choices.
// Throws Error(InconsistentChoice) when the set selects a fact both ways.
Rational prob_composite(const CompositeChoice& choice, const Program& program);

}  // namespace hplp
