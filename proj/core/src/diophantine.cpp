#include "phyllo/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace phyllo {

namespace {

Int checked_mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("phyllo: 128-bit overflow");
  return out;
}

Int checked_add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("phyllo: 128-bit overflow");
  return out;
}

Int abs_int(Int a) { return a < 0 ? -a : a; }

Int isqrt(Int n) {
  if (n < 0) throw std::domain_error("isqrt of negative value");
  if (n < 2) return n;
  auto r = static_cast<Int>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

long double to_ld(Int v) { return static_cast<long double>(v); }

// Complete quotients x_1..x_n from the stored quotients by backward evaluation.
std::vector<double> tail_complete_quotients(const std::vector<Int>& quotients,
                                            std::size_t keep, bool terminated) {
  const std::size_t n = quotients.size() - 1;
  std::vector<double> complete(keep + 1, 0.0);
  long double x = terminated ? to_ld(quotients[n]) : to_ld(quotients[n]) + 0.5L;
  for (std::size_t i = n; i >= 1; --i) {
    if (i < n) x = to_ld(quotients[i]) + 1.0L / x;
    if (i <= keep) complete[i] = static_cast<double>(x);
  }
  return complete;
}

constexpr double kRemainderCutoff = 0x1p-40;
constexpr long double kPrecisionBudget = 0x1p44L;

}  // namespace

std::string to_string(Int value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  // Magnitude in unsigned space so the most negative value survives.
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(value + 1)) + 1
                                   : static_cast<unsigned __int128>(value);
  std::string digits;
  while (mag > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Int int_gcd(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    const Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int floor_div(Int num, Int den) {
  if (den == 0) throw std::domain_error("floor_div by zero");
  Int q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

Fraction Fraction::make(Int num, Int den) {
  if (den == 0) throw std::domain_error("fraction with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return {num, den};
}

Fraction Fraction::reduced(Int num, Int den) {
  Fraction f = make(num, den);
  const Int g = int_gcd(f.num, f.den);
  if (g > 1) {
    f.num /= g;
    f.den /= g;
  }
  return f;
}

bool Fraction::irreducible() const { return den > 0 && int_gcd(num, den) == 1; }

double Fraction::value() const { return static_cast<double>(to_ld(num) / to_ld(den)); }

std::string Fraction::str() const { return to_string(num) + "/" + to_string(den); }

Fraction mediant(const Fraction& left, const Fraction& right) {
  return Fraction::make(left.num + right.num, left.den + right.den);
}

double QuadraticSurd::value() const {
  return static_cast<double>((to_ld(u) + to_ld(v) * std::sqrt(to_ld(d))) / to_ld(w));
}

QuadraticSurd golden_ratio() { return {1, 1, 5, 2}; }
QuadraticSurd sqrt2_surd() { return {0, 1, 2, 1}; }

ContinuedFraction ContinuedFraction::from_double(double x, std::size_t depth) {
  if (!std::isfinite(x)) throw std::invalid_argument("cf_expand: non-finite input");
  if (depth < 1) throw std::invalid_argument("cf_expand: depth must be >= 1");

  ContinuedFraction cf;
  cf.kind_ = ValueKind::float_derived;
  cf.value_ = x;
  cf.requested_depth_ = depth;

  // The double is the exact rational mantissa * 2^exponent.
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  Int num = static_cast<Int>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Int den = 1;
  if (exponent >= 0) {
    num = checked_mul(num, static_cast<Int>(1) << std::min(exponent, 70));
  } else {
    const int shift = -exponent;
    if (shift > 120) {
      num >>= (shift - 120);
      den = static_cast<Int>(1) << 120;
    } else {
      den = static_cast<Int>(1) << shift;
    }
  }

  const long double budget = kPrecisionBudget / std::max(1.0L, std::fabs(static_cast<long double>(x)));
  Int q_prev = 0;
  Int q_cur = 1;
  const Int a0 = floor_div(num, den);
  cf.quotients_.push_back(a0);
  Int rem = num - a0 * den;
  std::vector<long double> complete{0.0L};
  while (cf.depth() < depth) {
    if (rem == 0) {
      cf.terminated_ = true;
      break;
    }
    if (to_ld(rem) < kRemainderCutoff * to_ld(den)) break;
    // next complete quotient is den / rem
    const Int a = den / rem;
    const Int next_rem = den - a * rem;
    const Int q_next = checked_add(checked_mul(a, q_cur), q_prev);
    if (cf.depth() >= 1 && to_ld(q_cur) * to_ld(q_next) > budget) break;
    complete.push_back(to_ld(den) / to_ld(rem));
    cf.quotients_.push_back(a);
    q_prev = q_cur;
    q_cur = q_next;
    den = rem;
    rem = next_rem;
  }
  if (!cf.terminated_ && rem == 0) cf.terminated_ = true;
  cf.complete_.assign(complete.begin(), complete.end());
  return cf;
}

ContinuedFraction ContinuedFraction::from_surd(const QuadraticSurd& surd, std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("cf_expand: depth must be >= 1");
  if (surd.w == 0 || surd.d <= 0) throw std::invalid_argument("cf_expand: malformed surd");
  Int u = surd.u, v = surd.v, w = surd.w;
  if (v == 0) throw std::invalid_argument("cf_expand: surd is rational (v = 0)");
  if (v < 0) {
    u = -u;
    v = -v;
    w = -w;
  }
  // x = (P + sqrt(D)) / Q with Q | D - P^2.
  Int P = checked_mul(u, abs_int(w));
  Int D = checked_mul(checked_mul(surd.d, checked_mul(v, v)), checked_mul(w, w));
  Int Q = checked_mul(w, abs_int(w));
  const Int root = isqrt(D);
  if (root * root == D) throw std::invalid_argument("cf_expand: surd is rational (perfect square)");
  const long double sqrt_d = std::sqrt(to_ld(D));

  auto complete_value = [&](Int p, Int q) -> long double {
    if (p >= 0) return (to_ld(p) + sqrt_d) / to_ld(q);
    return to_ld(D - p * p) / (to_ld(q) * (sqrt_d - to_ld(p)));
  };

  ContinuedFraction cf;
  cf.kind_ = ValueKind::exact_quadratic;
  cf.requested_depth_ = depth;
  cf.value_ = static_cast<double>(complete_value(P, Q));
  cf.complete_.push_back(0.0);
  for (std::size_t i = 0; i <= depth; ++i) {
    if (i > 0) cf.complete_.push_back(static_cast<double>(complete_value(P, Q)));
    const Int a = Q > 0 ? floor_div(P + root, Q) : -(floor_div(P + root, -Q) + 1);
    cf.quotients_.push_back(a);
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  // One extra complete quotient so residues reach index `depth`.
  cf.complete_.push_back(static_cast<double>(complete_value(P, Q)));
  return cf;
}

ContinuedFraction ContinuedFraction::from_rational(const Fraction& x) {
  Fraction f = Fraction::make(x.num, x.den);
  ContinuedFraction cf;
  cf.kind_ = ValueKind::explicit_sequence;
  cf.terminated_ = true;
  cf.value_ = f.value();
  Int num = f.num;
  Int den = f.den;
  const Int a0 = floor_div(num, den);
  cf.quotients_.push_back(a0);
  Int rem = num - a0 * den;
  while (rem != 0) {
    const Int a = den / rem;
    const Int next = den - a * rem;
    cf.quotients_.push_back(a);
    den = rem;
    rem = next;
  }
  cf.requested_depth_ = cf.depth();
  cf.complete_ = tail_complete_quotients(cf.quotients_, cf.depth(), true);
  return cf;
}

ContinuedFraction ContinuedFraction::from_sequence(Int a0, std::vector<Int> prefix,
                                                   std::vector<Int> period, std::size_t depth) {
  for (Int a : prefix)
    if (a < 1) throw std::invalid_argument("cf_expand: partial quotients must be >= 1");
  for (Int a : period)
    if (a < 1) throw std::invalid_argument("cf_expand: partial quotients must be >= 1");

  ContinuedFraction cf;
  cf.kind_ = ValueKind::explicit_sequence;
  cf.quotients_.push_back(a0);
  if (period.empty()) {
    cf.quotients_.insert(cf.quotients_.end(), prefix.begin(), prefix.end());
    cf.terminated_ = true;
    cf.requested_depth_ = cf.depth();
    cf.complete_ = tail_complete_quotients(cf.quotients_, cf.depth(), true);
  } else {
    // Extra terms so the backward tail evaluation reaches double precision.
    constexpr std::size_t kTailPadding = 64;
    std::vector<Int> all{a0};
    all.insert(all.end(), prefix.begin(), prefix.end());
    for (std::size_t n = 0; all.size() <= depth + kTailPadding; ++n) all.push_back(period[n % period.size()]);
    cf.complete_ = tail_complete_quotients(all, depth, false);
    all.resize(depth + 1);
    cf.quotients_ = std::move(all);
    cf.requested_depth_ = depth;
  }
  cf.value_ = cf.depth() == 0 ? static_cast<double>(to_ld(a0))
                              : static_cast<double>(to_ld(a0) + 1.0L / static_cast<long double>(cf.complete_[1]));
  return cf;
}

Int ContinuedFraction::quotient(std::size_t i) const {
  if (i > depth()) throw DepthError("partial quotient a_" + std::to_string(i) + " beyond reliable depth " +
                                        std::to_string(depth()),
                                    depth());
  return quotients_[i];
}

double ContinuedFraction::complete_quotient(std::size_t i) const {
  if (i == 0) return value_;
  if (i < complete_.size()) return complete_[i];
  if (terminated_) return std::numeric_limits<double>::infinity();
  throw DepthError("complete quotient x_" + std::to_string(i) + " beyond reliable depth " +
                       std::to_string(depth()),
                   depth());
}

ContinuedFraction ContinuedFraction::without_integer_part() const {
  ContinuedFraction out = *this;
  const Int a0 = quotients_.front();
  out.quotients_.front() = 0;
  // Float input: x - a0 is exact. Otherwise rebuild from x_1 to avoid cancellation.
  if (kind_ == ValueKind::float_derived || depth() == 0)
    out.value_ = static_cast<double>(static_cast<long double>(value_) - to_ld(a0));
  else
    out.value_ = static_cast<double>(1.0L / static_cast<long double>(complete_[1]));
  return out;
}

Fraction ContinuedFraction::evaluate(std::size_t n) const {
  const ConvergentTable table(*this, n);
  return table.convergent(static_cast<long>(n));
}

ContinuedFraction cf_expand(double x, std::size_t depth) { return ContinuedFraction::from_double(x, depth); }
ContinuedFraction cf_expand(const QuadraticSurd& x, std::size_t depth) {
  return ContinuedFraction::from_surd(x, depth);
}
ContinuedFraction cf_expand(const Fraction& x) { return ContinuedFraction::from_rational(x); }

ConvergentTable::ConvergentTable(const ContinuedFraction& cf, std::size_t i_max) {
  if (i_max > cf.depth())
    throw DepthError("convergent index " + std::to_string(i_max) + " exceeds reliable depth " +
                         std::to_string(cf.depth()),
                     cf.depth());
  p_ = {1, cf.quotient(0)};
  q_ = {0, 1};
  for (std::size_t i = 1; i <= i_max; ++i) {
    const Int a = cf.quotient(i);
    p_.push_back(checked_add(checked_mul(a, p_[i]), p_[i - 1]));
    q_.push_back(checked_add(checked_mul(a, q_[i]), q_[i - 1]));
  }
  const std::size_t last_a = std::min(i_max + 1, cf.depth());
  for (std::size_t i = 0; i <= last_a; ++i) a_.push_back(cf.quotient(i));
}

Int ConvergentTable::p(long i) const {
  if (i < -1 || i > static_cast<long>(i_max())) throw std::out_of_range("convergent index out of range");
  return p_[static_cast<std::size_t>(i + 1)];
}

Int ConvergentTable::q(long i) const {
  if (i < -1 || i > static_cast<long>(i_max())) throw std::out_of_range("convergent index out of range");
  return q_[static_cast<std::size_t>(i + 1)];
}

bool ConvergentTable::has_a(long i) const { return i >= 0 && static_cast<std::size_t>(i) < a_.size(); }

Int ConvergentTable::a(long i) const {
  if (!has_a(i)) throw std::out_of_range("partial quotient index out of range");
  return a_[static_cast<std::size_t>(i)];
}

void ConvergentTable::check_k(long i, Int k) const {
  if (i < 0) throw std::out_of_range("intermediate convergent needs i >= 0");
  if (k < 0 || (has_a(i + 1) && k > a(i + 1))) throw std::out_of_range("intermediate index k outside [0, a_{i+1}]");
}

Int ConvergentTable::p(long i, Int k) const {
  check_k(i, k);
  return checked_add(checked_mul(k, p(i)), p(i - 1));
}

Int ConvergentTable::q(long i, Int k) const {
  check_k(i, k);
  return checked_add(checked_mul(k, q(i)), q(i - 1));
}

ConvergentTable convergents(const ContinuedFraction& cf, std::size_t i_max) { return ConvergentTable(cf, i_max); }

namespace {

double fma_residue(Int q, Int p, double x) {
  constexpr Int kExact = static_cast<Int>(1) << 53;
  if (abs_int(q) > kExact || abs_int(p) > kExact)
    throw std::overflow_error("residue: convergent exceeds double-exact range for float input");
  return std::fma(static_cast<double>(q), x, -static_cast<double>(p));
}

}  // namespace

double residue(const ContinuedFraction& cf, const ConvergentTable& table, long i) {
  if (i == -1) return -1.0;
  if (i < -1 || i > static_cast<long>(table.i_max())) throw std::out_of_range("residue index out of range");
  if (cf.kind() == ValueKind::float_derived) return fma_residue(table.q(i), table.p(i), cf.value());
  if (cf.terminated() && static_cast<std::size_t>(i) == cf.depth()) return 0.0;
  const long double next = cf.complete_quotient(static_cast<std::size_t>(i) + 1);
  const long double sign = (i % 2 == 0) ? 1.0L : -1.0L;
  return static_cast<double>(sign / (to_ld(table.q(i)) * next + to_ld(table.q(i - 1))));
}

double residue(const ContinuedFraction& cf, const ConvergentTable& table, long i, Int k) {
  if (i < 0) throw std::out_of_range("residue: intermediate index needs i >= 0");
  const Int a_next = cf.quotient(static_cast<std::size_t>(i) + 1);
  if (k < 0 || k > a_next) throw std::out_of_range("residue: k outside [0, a_{i+1}]");
  if (k == 0) return residue(cf, table, i - 1);
  if (cf.kind() == ValueKind::float_derived) {
    const Int q = k * table.q(i) + table.q(i - 1);
    const Int p = k * table.p(i) + table.p(i - 1);
    return fma_residue(q, p, cf.value());
  }
  if (k == a_next && static_cast<long>(table.i_max()) > i) return residue(cf, table, i + 1);
  // r_{i,k} = r_i (k - x_{i+1}) with x_{i+1} = a_{i+1} + 1 / x_{i+2}
  const long double tail = 1.0L / static_cast<long double>(cf.complete_quotient(static_cast<std::size_t>(i) + 2));
  return static_cast<double>(static_cast<long double>(residue(cf, table, i)) * (to_ld(k - a_next) - tail));
}

bool is_farey_pair(const Fraction& left, const Fraction& right) {
  if (!left.irreducible() || !right.irreducible())
    throw std::invalid_argument("is_farey_pair: fractions must be irreducible");
  return left.den * right.num - right.den * left.num == 1;
}

FareyInterval farey_interval_containing(const ContinuedFraction& cf, Int order) {
  if (order < 1) throw std::invalid_argument("farey_interval_containing: order must be >= 1");
  // Smallest table whose last denominator exceeds the order.
  std::size_t n = 0;
  for (;; ++n) {
    if (n > cf.depth()) {
      if (cf.terminated())
        throw std::domain_error("farey_interval_containing: x is a fraction of the Farey series of order " +
                                to_string(order));
      throw DepthError("farey_interval_containing: expansion exhausted before denominator exceeds order",
                       cf.depth());
    }
    const ConvergentTable probe(cf, n);
    if (probe.q(static_cast<long>(n)) > order) break;
  }
  const ConvergentTable table(cf, n);
  const long i = static_cast<long>(n) - 1;
  const Int k = (order - table.q(i - 1)) / table.q(i);

  FareyInterval out;
  out.order = order;
  out.i = i;
  out.k = k;
  const Fraction principal = table.convergent(i);
  const Fraction intermediate = table.intermediate(i, k);
  if (i % 2 == 0) {
    out.left = principal;
    out.right = intermediate;
  } else {
    out.left = intermediate;
    out.right = principal;
  }
  return out;
}

FareyInterval farey_interval_containing(double x, Int order) {
  return farey_interval_containing(cf_expand(x, 64), order);
}

Fraction best_approximation(const ContinuedFraction& cf, Side side, Int den_bound) {
  if (cf.terminated() && cf.depth() == 0) throw std::domain_error("best_approximation: x is an integer");
  const FareyInterval interval = farey_interval_containing(cf, den_bound);
  return side == Side::left ? interval.left : interval.right;
}

Fraction best_approximation(double x, Side side, Int den_bound) {
  return best_approximation(cf_expand(x, 64), side, den_bound);
}

}  // namespace phyllo
