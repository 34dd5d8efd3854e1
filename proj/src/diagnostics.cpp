#include "hplp/diagnostics.hpp"

#include <algorithm>
#include <tuple>

namespace hplp {

const char* to_string(Rule rule) {
    switch (rule) {
        case Rule::RangeRestriction: return "RANGE_RESTRICTION";
        case Rule::PrevPositiveLiteral: return "PREV_POSITIVE_LITERAL";
        case Rule::MutualExclusion: return "MUTUAL_EXCLUSION";
        case Rule::ContUsage: return "CONT_USAGE";
        case Rule::ContIndex: return "CONT_INDEX";
        case Rule::SigConflict: return "SIG_CONFLICT";
        case Rule::FlounderRisk: return "FLOUNDER_RISK";
    }
    return "?";
}

const char* to_string(Severity severity) {
    switch (severity) {
        case Severity::Error: return "error";
        case Severity::Warning: return "warning";
        case Severity::Unverified: return "unverified";
    }
    return "?";
}

void sort_diagnostics(std::vector<Diagnostic>& diagnostics) {
    auto key = [](const Diagnostic& d) {
        return std::make_tuple(d.location.line, d.location.col, d.location.begin, static_cast<int>(d.rule),
                               std::cref(d.message));
    };
    std::stable_sort(diagnostics.begin(), diagnostics.end(),
                     [&](const Diagnostic& a, const Diagnostic& b) { return key(a) < key(b); });
    diagnostics.erase(std::unique(diagnostics.begin(), diagnostics.end()), diagnostics.end());
}

}  // namespace hplp
