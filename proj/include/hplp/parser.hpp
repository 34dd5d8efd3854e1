#pragma once

#include <string_view>
#include <vector>

#include "hplp/ast.hpp"

namespace hplp {

// Parses a whole program and fills in its inferred signature table.
// Throws ParseError on lexical/syntax errors and on contradictory fact annotations.
Program parse_program(std::string_view text);

// A query is a conjunction of body literals; the trailing '.' is optional.
std::vector<Literal> parse_query(std::string_view text);

Term parse_term(std::string_view text);

}  // namespace hplp
