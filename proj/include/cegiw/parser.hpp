#pragma once

#include <stdexcept>
#include <string>

#include "cegiw/context.hpp"
#include "cegiw/formula.hpp"

namespace cegiw {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column);

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// Concrete syntax, tightest first: atoms [A-Za-z_][A-Za-z0-9_]*, literals
// true/false, unary ! F G X, binary U R (right-associative), then & then |
// then -> (right-associative). U R F G take an optional interval [a,b] with
// b possibly inf; a missing interval means [0,inf]. X is F[1,1].
// true, false, inf, U, R, F, G, X are reserved words.
Formula parse_formula(const std::string& text);

struct ParsedProperty {
  Formula formula;
  TargetSelection target;
};

// Same grammar plus exactly one '?' directly after a U/R/F/G operator (after
// its interval, if any), selecting that operator as the weakening target. The
// returned path addresses the operator's node in the core AST.
ParsedProperty parse_property(const std::string& text);

}  // namespace cegiw
