#pragma once

#include <string>
#include <vector>

#include "hplp/ast.hpp"

namespace hplp {

enum class Rule {
    RangeRestriction,
    PrevPositiveLiteral,
    MutualExclusion,
    ContUsage,
    ContIndex,
    SigConflict,
    FlounderRisk,
};

enum class Severity { Error, Warning, Unverified };

const char* to_string(Rule rule);
const char* to_string(Severity severity);

struct Diagnostic {
    Rule rule = Rule::RangeRestriction;
    Severity severity = Severity::Error;
    Span location;
    std::string message;

    bool operator==(const Diagnostic& other) const {
        return rule == other.rule && severity == other.severity && location.begin == other.location.begin &&
               message == other.message;
    }
};

// Stable order: by source position, then rule, then message.
void sort_diagnostics(std::vector<Diagnostic>& diagnostics);

}  // namespace hplp
