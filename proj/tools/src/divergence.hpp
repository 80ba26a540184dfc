#pragma once

// Parsing of divergence-angle expressions: a numeric literal in radians, or
// "2*pi*<x>" with x a decimal, a fraction p/q, or one of golden, sqrt2, e.

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "phyllo/diophantine.hpp"
#include "phyllo/spiral.hpp"

namespace phyllo::cli {

class ExpressionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Radians {
  double theta = 0.0;
};

struct TurnsFloat {
  double turns = 0.0;
};

struct Divergence {
  std::string text;
  std::variant<Radians, TurnsFloat, QuadraticSurd, Fraction> value;

  SpiralConfig config(double alpha) const;
  /// theta / 2 pi as a double
  double turns() const;
};

Divergence parse_divergence(std::string_view expr);

}  // namespace phyllo::cli
