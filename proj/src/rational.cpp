#include "hplp/rational.hpp"

#include <cctype>

#include "hplp/error.hpp"

namespace hplp {

namespace {

[[noreturn]] void bad(std::string_view text) {
    throw Error(ErrorKind::InvalidArgument, "malformed rational literal '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class pow10(unsigned long exponent) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, exponent);
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (text.empty()) bad(text);
    bool negative = false;
    std::string_view body = text;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational result;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) bad(text);
        mpz_class d(std::string(den), 10);
        if (d == 0) bad(text);
        result = Rational(mpz_class(std::string(num), 10), d);
    } else {
        std::string_view mantissa = body;
        long exponent = 0;
        if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = body.substr(0, e);
            auto exp_text = body.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 6) bad(text);
            exponent = std::stol(std::string(exp_text));
            if (exp_negative) exponent = -exponent;
        }
        std::string digits;
        if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
            auto whole = mantissa.substr(0, dot);
            auto frac = mantissa.substr(dot + 1);
            if (!all_digits(whole) || !all_digits(frac)) bad(text);
            digits = std::string(whole) + std::string(frac);
            exponent -= static_cast<long>(frac.size());
        } else {
            if (!all_digits(mantissa)) bad(text);
            digits = std::string(mantissa);
        }
        mpz_class n(digits, 10);
        if (exponent >= 0) {
            result = Rational(n * pow10(static_cast<unsigned long>(exponent)));
        } else {
            result = Rational(n, pow10(static_cast<unsigned long>(-exponent)));
        }
    }
    result.canonicalize();
    if (negative) result = -result;
    return result;
}

std::string to_string(const Rational& value) { return value.get_str(); }

}  // namespace hplp
