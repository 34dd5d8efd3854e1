#pragma once

#include <string>
#include <unordered_map>

namespace hplp {

// One lazily drawn world: Boolean values of ground discrete facts and real values of
// continuous random variables, each keyed by fact index plus ground term key.
struct Sample {
    std::unordered_map<std::string, bool> discrete;
    std::unordered_map<std::string, double> continuous;
    // When set, a fact instance missing from `discrete` is an error instead of a fresh draw.
    bool fixed = false;

    void clear() {
        discrete.clear();
        continuous.clear();
    }
};

}  // namespace hplp
