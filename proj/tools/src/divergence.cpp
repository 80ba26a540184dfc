#include "divergence.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace phyllo::cli {
namespace {

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

double parse_real(std::string_view s, std::string_view whole) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ExpressionError("invalid divergence expression '" + std::string(whole) + "'");
  return v;
}

long long parse_integer(std::string_view s, std::string_view whole) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ExpressionError("invalid fraction in divergence expression '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Divergence parse_divergence(std::string_view expr) {
  const std::string s = strip_spaces(expr);
  if (s.empty()) throw ExpressionError("empty divergence expression");
  Divergence d;
  d.text = std::string(expr);

  constexpr std::string_view prefix = "2*pi*";
  if (!s.starts_with(prefix)) {
    d.value = Radians{parse_real(s, expr)};
    return d;
  }
  const std::string_view x = std::string_view(s).substr(prefix.size());
  if (x == "golden") {
    d.value = golden_ratio();
  } else if (x == "sqrt2") {
    d.value = sqrt2_surd();
  } else if (x == "e") {
    d.value = TurnsFloat{std::numbers::e};
  } else if (const auto slash = x.find('/'); slash != std::string_view::npos) {
    const long long num = parse_integer(x.substr(0, slash), expr);
    const long long den = parse_integer(x.substr(slash + 1), expr);
    if (den == 0) throw ExpressionError("zero denominator in divergence expression '" + d.text + "'");
    d.value = Fraction::reduced(num, den);
  } else {
    d.value = TurnsFloat{parse_real(x, expr)};
  }
  return d;
}

SpiralConfig Divergence::config(double alpha) const {
  struct Visitor {
    double alpha;
    SpiralConfig operator()(const Radians& r) const { return SpiralConfig::from_radians(alpha, r.theta); }
    SpiralConfig operator()(const TurnsFloat& t) const { return SpiralConfig::from_turns(alpha, t.turns); }
    SpiralConfig operator()(const QuadraticSurd& q) const { return SpiralConfig::from_turns(alpha, q); }
    SpiralConfig operator()(const Fraction& f) const {
      return SpiralConfig(alpha, ContinuedFraction::from_rational(f));
    }
  };
  return std::visit(Visitor{alpha}, value);
}

double Divergence::turns() const {
  struct Visitor {
    double operator()(const Radians& r) const { return r.theta / (2.0 * std::numbers::pi); }
    double operator()(const TurnsFloat& t) const { return t.turns; }
    double operator()(const QuadraticSurd& q) const { return q.value(); }
    double operator()(const Fraction& f) const { return f.value(); }
  };
  return std::visit(Visitor{}, value);
}

}  // namespace phyllo::cli
