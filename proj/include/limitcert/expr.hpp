#pragma once

// Text form of a profile.
//
//   expr  := term "/" "(" sum ")"
//   term  := "1" | factor ("*"? factor)*
//   factor:= var ("^" nat)?
//   sum   := prod ("+" prod)*
//   prod  := (coef "*"?)? var "^" even_nat
//   coef  := decimal | nat "/" nat
//   var   := letter (letter | digit | "_")*
//
// Whitespace is ignored between tokens. Each numerator variable must also
// appear in the denominator, and each denominator variable exactly once.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "limitcert/kernel.hpp"

namespace limitcert {

enum class ParseCategory {
  Syntax,
  NotMonomialNumerator,
  OddDenominatorExponent,
  NonpositiveCoefficient,
  UnknownVariable,
  DuplicateDenominatorTerm,
};

std::string_view to_string(ParseCategory c);

struct ParseDiagnostic {
  std::size_t byte_offset = 0;
  std::string message;
  ParseCategory category = ParseCategory::Syntax;
};

class ParseError : public std::runtime_error {
public:
  explicit ParseError(ParseDiagnostic diagnostic);

  const ParseDiagnostic& diagnostic() const { return diagnostic_; }

private:
  ParseDiagnostic diagnostic_;
};

struct ParsedExpression {
  Profile profile;
  /// Variable names in profile order.
  std::vector<std::string> variables;
};

/// Throws ParseError.
ParsedExpression parse_expression(std::string_view text);

/// parse_expression(text).profile
Profile parse(std::string_view text);

/// Canonical text; parse(format(p)) == p. Variables are x, y, z for n <= 3
/// and x1 ... xN otherwise.
std::string format(const Profile& p);

/// Default variable names used by format.
std::vector<std::string> default_variable_names(std::size_t n);

/// Multi-line message with the input echoed and a caret under the offset.
std::string render_diagnostic(std::string_view text, const ParseDiagnostic& diagnostic);

} // namespace limitcert
