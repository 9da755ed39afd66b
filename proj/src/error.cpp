#include "hre/error.hpp"

namespace hre {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::ValueError: return "VALUE_ERROR";
    case ErrorCode::ReciprocityViolation: return "RECIPROCITY_VIOLATION";
    case ErrorCode::DegenerateRow: return "DEGENERATE_ROW";
    case ErrorCode::NotConnected: return "NOT_CONNECTED";
    case ErrorCode::SingularMatrix: return "SINGULAR_MATRIX";
    case ErrorCode::NonPositiveSolution: return "NON_POSITIVE_SOLUTION";
    case ErrorCode::IncompleteMatrix: return "INCOMPLETE_MATRIX";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
  }
  return "UNKNOWN";
}

static std::string with_position(const std::string& what, std::size_t line,
                                 std::size_t column) {
  if (line == 0) return what;
  std::string out = "line " + std::to_string(line);
  if (column != 0) out += ", column " + std::to_string(column);
  return out + ": " + what;
}

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : Error(ErrorCode::ParseError, with_position(what, line, column)),
      line_(line),
      column_(column) {}

}  // namespace hre
