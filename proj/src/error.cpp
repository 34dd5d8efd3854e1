#include "hplp/error.hpp"

namespace hplp {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Lexical: return "LexicalError";
        case ErrorKind::Syntax: return "SyntaxError";
        case ErrorKind::DepthExceeded: return "DepthExceeded";
        case ErrorKind::FloundedNegation: return "FloundedNegation";
        case ErrorKind::NonGroundFact: return "NonGroundFact";
        case ErrorKind::ContinuousIndex: return "ContinuousIndex";
        case ErrorKind::UnboundDensityParameter: return "UnboundDensityParameter";
        case ErrorKind::UnboundVariable: return "UnboundVariable";
        case ErrorKind::InvalidParameter: return "InvalidParameter";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::InconsistentChoice: return "InconsistentChoice";
        case ErrorKind::ProgramHasDensityFacts: return "ProgramHasDensityFacts";
        case ErrorKind::NonGroundableQuery: return "NonGroundableQuery";
        case ErrorKind::UniverseTooLarge: return "UniverseTooLarge";
        case ErrorKind::AllSamplesDepthExceeded: return "AllSamplesDepthExceeded";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

ParseError::ParseError(ErrorKind kind, const std::string& message, int line, int col)
    : Error(kind, "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + message),
      line_(line),
      col_(col) {}

}  // namespace hplp
