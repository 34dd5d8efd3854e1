#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hplp {

enum class ErrorKind {
    Lexical,
    Syntax,
    DepthExceeded,
    FloundedNegation,
    NonGroundFact,
    ContinuousIndex,
    UnboundDensityParameter,
    UnboundVariable,
    InvalidParameter,
    DivisionByZero,
    InconsistentChoice,
    ProgramHasDensityFacts,
    NonGroundableQuery,
    UniverseTooLarge,
    AllSamplesDepthExceeded,
    InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Lexical and syntax errors carry the 1-based source position.
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, const std::string& message, int line, int col);

    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }

private:
    int line_;
    int col_;
};

}  // namespace hplp
