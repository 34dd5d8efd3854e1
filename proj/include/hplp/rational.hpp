#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hplp {

// Exact probability arithmetic.
using Rational = mpq_class;

// Parses "a/b", integers and decimal literals with optional exponent
// ("0.6", "1e-7", "2.5E3") into an exact canonical rational.
// Throws Error(InvalidArgument) on malformed text.
Rational parse_rational(std::string_view text);

// "1/3", "2", "-1/2"
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace hplp
