#include "hplp/choices.hpp"

#include <algorithm>

#include "hplp/error.hpp"

namespace hplp {

std::string choice_key(std::size_t fact, const std::string& instance) {
    return std::to_string(fact) + ':' + instance;
}

void normalize(CompositeChoice& choice) {
    std::sort(choice.begin(), choice.end());
    choice.erase(std::unique(choice.begin(), choice.end()), choice.end());
}

bool is_consistent(const CompositeChoice& choice) {
    for (std::size_t i = 1; i < choice.size(); ++i)
        if (choice[i].same_fact(choice[i - 1])) return false;
    return true;
}

bool incompatible(const CompositeChoice& a, const CompositeChoice& b) {
    auto i = a.begin();
    auto j = b.begin();
    auto key_less = [](const AtomicChoice& x, const AtomicChoice& y) {
        if (x.instance != y.instance) return x.instance < y.instance;
        return x.fact < y.fact;
    };
    while (i != a.end() && j != b.end()) {
        if (key_less(*i, *j)) {
            ++i;
        } else if (key_less(*j, *i)) {
            ++j;
        } else {
            if (i->selected != j->selected) {
                // a sorted set may hold both bits of one fact; look for any clash
                return true;
            }
            ++i;
            ++j;
        }
    }
    return false;
}

bool subsumes(const CompositeChoice& a, const CompositeChoice& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

CompositeChoice merge(const CompositeChoice& a, const CompositeChoice& b) {
    CompositeChoice out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::string to_text(const AtomicChoice& choice) {
    return "(" + choice.instance + "#" + std::to_string(choice.fact) + "," + (choice.selected ? "1" : "0") + ")";
}

std::string to_text(const CompositeChoice& choice) {
    std::string out = "{";
    for (std::size_t i = 0; i < choice.size(); ++i) {
        if (i) out += ",";
        out += to_text(choice[i]);
    }
    return out + "}";
}

Rational prob_composite(const CompositeChoice& choice, const Program& program) {
    CompositeChoice sorted = choice;
    normalize(sorted);
    if (!is_consistent(sorted))
        throw Error(ErrorKind::InconsistentChoice, "composite choice " + to_text(sorted) + " is inconsistent");
    Rational p = 1;
    for (const auto& c : sorted) {
        if (c.fact >= program.discrete_facts.size())
            throw Error(ErrorKind::InvalidArgument, "atomic choice refers to unknown fact " + std::to_string(c.fact));
        const Rational& q = program.discrete_facts[c.fact].probability;
        p *= c.selected ? q : Rational(1 - q);
    }
    p.canonicalize();
    return p;
}

}  // namespace hplp
