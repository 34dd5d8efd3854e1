#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hplp/ast.hpp"
#include "hplp/parser.hpp"

namespace testing {

inline std::string program_path(const std::string& name) { return std::string(HPLP_PROGRAMS_DIR) + "/" + name; }

inline std::string read_text(const std::string& name) {
    std::ifstream in(program_path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline hplp::Program load(const std::string& name) { return hplp::parse_program(read_text(name)); }

inline std::vector<hplp::Literal> q(const std::string& text) { return hplp::parse_query(text); }

inline const std::vector<std::string>& corpus() {
    static const std::vector<std::string> files = {
        "card.hpl",           "card_inf.hpl",         "card_inf_literal.hpl", "card_cont.hpl",
        "card_cont_literal.hpl", "gaussian_mixture.hpl", "gaussian_mixture_bad.hpl", "widget.hpl",
        "mean_estimation.hpl", "wheel_joint.hpl",     "res_counterexample.hpl", "ordering.hpl",
        "ordering_bad.hpl",   "groundness.hpl",
    };
    return files;
}

}  // namespace testing
