#pragma once

// Continued fractions, convergents and Farey intervals.
//
// Convergent numerators and denominators are carried in 128-bit integers:
// q_i of the golden ratio passes 2^63 near depth 92 and the parastichy
// predictions silently break on overflow.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace phyllo {

using Int = __int128;

std::string to_string(Int value);
Int int_gcd(Int a, Int b);
Int floor_div(Int num, Int den);

/// Thrown when an operation needs more partial quotients than can be trusted.
class DepthError : public std::out_of_range {
 public:
  DepthError(const std::string& what, std::size_t reliable_depth)
      : std::out_of_range(what), reliable_depth_(reliable_depth) {}
  std::size_t reliable_depth() const noexcept { return reliable_depth_; }

 private:
  std::size_t reliable_depth_;
};

struct Fraction {
  Int num = 0;
  Int den = 1;

  /// Normalizes the sign into the numerator. Does not reduce.
  static Fraction make(Int num, Int den);
  static Fraction reduced(Int num, Int den);

  bool irreducible() const;
  double value() const;
  std::string str() const;

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num * b.den == b.num * a.den;
  }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    const Int lhs = a.num * b.den;
    const Int rhs = b.num * a.den;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

Fraction mediant(const Fraction& left, const Fraction& right);

/// The real number (u + v*sqrt(d)) / w with d > 0 not a perfect square.
struct QuadraticSurd {
  Int u = 0;
  Int v = 1;
  Int d = 2;
  Int w = 1;

  double value() const;
};

QuadraticSurd golden_ratio();
QuadraticSurd sqrt2_surd();

enum class ValueKind { float_derived, exact_quadratic, explicit_sequence };

/// [a0; a1, a2, ...] truncated at a finite depth.
///
/// `quotient(0)` is a0; quotients 1..depth() are positive. For float input
/// only the reliable prefix is kept and `truncated()` reports the cut.
class ContinuedFraction {
 public:
  static ContinuedFraction from_double(double x, std::size_t depth);
  static ContinuedFraction from_surd(const QuadraticSurd& surd, std::size_t depth);
  static ContinuedFraction from_rational(const Fraction& x);
  /// Explicit quotients; a non-empty `period` repeats forever after `prefix`.
  static ContinuedFraction from_sequence(Int a0, std::vector<Int> prefix,
                                         std::vector<Int> period, std::size_t depth);

  Int quotient(std::size_t i) const;
  std::size_t depth() const noexcept { return quotients_.size() - 1; }
  std::size_t reliable_depth() const noexcept { return depth(); }
  std::size_t requested_depth() const noexcept { return requested_depth_; }
  bool terminated() const noexcept { return terminated_; }
  bool truncated() const noexcept { return !terminated_ && depth() < requested_depth_; }
  ValueKind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }

  /// Complete quotient x_i = [a_i; a_{i+1}, ...], i >= 1. Infinite past the end
  /// of a terminating expansion.
  double complete_quotient(std::size_t i) const;

  /// Same expansion with a0 = 0, i.e. x - floor(x).
  ContinuedFraction without_integer_part() const;

  /// Evaluates [a0; a1, ..., a_n] exactly.
  Fraction evaluate(std::size_t n) const;

 private:
  ContinuedFraction() = default;

  std::vector<Int> quotients_;
  std::vector<double> complete_;  // complete_[i] = x_i, index 0 unused
  std::size_t requested_depth_ = 0;
  bool terminated_ = false;
  ValueKind kind_ = ValueKind::explicit_sequence;
  double value_ = 0.0;
};

ContinuedFraction cf_expand(double x, std::size_t depth);
ContinuedFraction cf_expand(const QuadraticSurd& x, std::size_t depth);
ContinuedFraction cf_expand(const Fraction& x);

/// p_i, q_i for i = -1..i_max together with the intermediate accessors
/// p_{i,k} = k p_i + p_{i-1}.
class ConvergentTable {
 public:
  ConvergentTable(const ContinuedFraction& cf, std::size_t i_max);

  std::size_t i_max() const noexcept { return p_.size() - 2; }
  Int p(long i) const;
  Int q(long i) const;
  Int p(long i, Int k) const;
  Int q(long i, Int k) const;
  /// a_{i}; available for i <= i_max + 1 when the expansion has it.
  Int a(long i) const;
  bool has_a(long i) const;
  Fraction convergent(long i) const { return {p(i), q(i)}; }
  Fraction intermediate(long i, Int k) const { return {p(i, k), q(i, k)}; }

 private:
  void check_k(long i, Int k) const;

  std::vector<Int> p_;  // p_[i + 1] = p_i
  std::vector<Int> q_;
  std::vector<Int> a_;  // a_[i] = a_i
};

ConvergentTable convergents(const ContinuedFraction& cf, std::size_t i_max);

/// q_{i,k} x - p_{i,k}; k = 0 gives the principal residue of index i - 1.
/// Evaluated from complete quotients (or a fused multiply-add for float
/// input) so the result keeps full relative precision at large q.
double residue(const ContinuedFraction& cf, const ConvergentTable& table, long i, Int k);
/// Principal residue q_i x - p_i.
double residue(const ContinuedFraction& cf, const ConvergentTable& table, long i);

bool is_farey_pair(const Fraction& left, const Fraction& right);

struct FareyInterval {
  Fraction left;
  Fraction right;
  Int order = 1;
  // Classification against the convergents: the endpoints are p_i/q_i and
  // p_{i,k}/q_{i,k}; the principal one is on the left for even i.
  long i = 0;
  Int k = 0;
};

FareyInterval farey_interval_containing(const ContinuedFraction& cf, Int order);
FareyInterval farey_interval_containing(double x, Int order);

enum class Side { left, right };

Fraction best_approximation(const ContinuedFraction& cf, Side side, Int den_bound);
Fraction best_approximation(double x, Side side, Int den_bound);

}  // namespace phyllo
