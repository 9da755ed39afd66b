#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hre {

enum class ErrorCode {
  ParseError,
  ValueError,
  ReciprocityViolation,
  DegenerateRow,
  NotConnected,
  SingularMatrix,
  NonPositiveSolution,
  IncompleteMatrix,
  NoConvergence,
};

// Stable machine-readable name, e.g. "DEGENERATE_ROW".
std::string_view code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> alternative = std::nullopt)
      : std::runtime_error(what), code_(code), alternative_(alternative) {}

  ErrorCode code() const { return code_; }
  // Offending alternative (0-based, solver order) when there is a single one.
  std::optional<std::size_t> alternative() const { return alternative_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> alternative_;
};

// Malformed input text. line/column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column = 0);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace hre
