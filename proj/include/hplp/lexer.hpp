#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hplp/ast.hpp"

namespace hplp {

enum class TokenKind {
    Atom,
    Var,
    Integer,
    Real,
    Rational,  // `1/3` written without blanks
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    DoubleColon,
    Colon,
    Neck,  // :-
    Naf,   // \+
    Less,
    Greater,
    LessEq,
    GreaterEq,
    ArithEq,  // =:=
    Plus,
    Minus,
    Star,
    Slash,
    Cut,
    UnsupportedOp,  // =, ==, \=, =\=, ... : recognised so the parser can reject them by name
};

const char* to_string(TokenKind kind);

struct Token {
    TokenKind kind;
    std::string text;
    Span span;
    bool operator==(const Token& other) const { return kind == other.kind && text == other.text; }
};

// `%` line comments and `/* */` block comments are dropped. Throws ParseError(Lexical).
std::vector<Token> tokenize(std::string_view text);

}  // namespace hplp
