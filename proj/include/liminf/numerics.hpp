#pragma once

// Exact integers and rationals (GMP) plus dyadic numbers with directed
// rounding. Every irrational quantity used by the rest of the library
// (q^e with rational e, log a / log b) is produced as an Enclosure whose
// lower end is rounded down and whose upper end is rounded up.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace liminf {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr unsigned kDefaultPrecision = 128;
inline constexpr unsigned kMinPrecision = 8;

/// Working precision used when nothing else is specified. The environment
/// variable LIMINF_PREC overrides the built-in 128 bits.
unsigned default_precision();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An enclosure was too wide to decide a comparison; retry at higher precision.
class Indeterminate : public Error {
 public:
  using Error::Error;
};

/// A component or node budget would be exceeded; `level` is the level reached.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t level) : Error(what), level_(level) {}
  std::size_t level() const { return level_; }

 private:
  std::size_t level_;
};

/// Selects the OpenMP kernel or its serial reference.
enum class Exec { serial, parallel };

enum class Rounding { down, up, exact };

/// mantissa * 2^exponent, canonical (mantissa odd, or zero with exponent 0).
class DirectedReal {
 public:
  DirectedReal() = default;
  DirectedReal(Integer mantissa, long exponent, Rounding dir);

  static DirectedReal from_integer(const Integer& v);
  /// Exact when x is dyadic, otherwise rounded to `prec` significant bits.
  static DirectedReal from_rational(const Rational& x, unsigned prec, Rounding dir);
  /// Parses "m*2^e", "m" or the output of to_string().
  static DirectedReal parse(std::string_view text, Rounding dir);

  const Integer& mantissa() const { return mantissa_; }
  long exponent() const { return exponent_; }
  Rounding direction() const { return dir_; }
  int sign() const { return sgn(mantissa_); }
  bool is_zero() const { return mantissa_ == 0; }

  /// floor(log2 |x|); undefined for zero.
  long magnitude() const;
  size_t mantissa_bits() const;

  /// Re-rounds to at most `prec` significant bits toward `dir`.
  DirectedReal rounded(unsigned prec, Rounding dir) const;
  DirectedReal with_direction(Rounding dir) const;

  Rational to_rational() const;
  double to_double() const;
  std::string to_string() const;
  std::string to_decimal(int digits = 17) const;

  friend std::strong_ordering operator<=>(const DirectedReal& a, const DirectedReal& b);
  friend bool operator==(const DirectedReal& a, const DirectedReal& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  void canonicalize();

  Integer mantissa_ = 0;
  long exponent_ = 0;
  Rounding dir_ = Rounding::exact;
};

std::strong_ordering compare(const DirectedReal& a, const Rational& b);

DirectedReal exact_add(const DirectedReal& a, const DirectedReal& b, Rounding dir);
DirectedReal exact_sub(const DirectedReal& a, const DirectedReal& b, Rounding dir);
DirectedReal exact_mul(const DirectedReal& a, const DirectedReal& b, Rounding dir);
DirectedReal scale2(const DirectedReal& a, long k);
/// a / b rounded to `prec` bits toward dir (exact when the quotient is dyadic and fits).
DirectedReal div_rounded(const DirectedReal& a, const DirectedReal& b, unsigned prec,
                         Rounding dir);

/// Outcome of comparing two enclosed quantities.
enum class Order { less, equal, greater, unknown };

class Enclosure {
 public:
  Enclosure() = default;
  Enclosure(DirectedReal lo, DirectedReal hi, unsigned prec = kDefaultPrecision);

  static Enclosure exact(const DirectedReal& v, unsigned prec = kDefaultPrecision);
  static Enclosure exact(const Integer& v, unsigned prec = kDefaultPrecision);
  static Enclosure of(const Rational& x, unsigned prec = kDefaultPrecision);

  const DirectedReal& lo() const { return lo_; }
  const DirectedReal& hi() const { return hi_; }
  unsigned precision() const { return prec_; }
  bool is_exact() const { return lo_ == hi_; }

  Rational width() const { return hi_.to_rational() - lo_.to_rational(); }
  double approx() const;
  bool contains(const Rational& x) const;
  bool contains(const Enclosure& other) const;

  Enclosure at_precision(unsigned prec) const;

  /// floor of the enclosed value when it is determined, otherwise nullopt.
  std::optional<Integer> floor() const;
  std::optional<Integer> ceil() const;
  Integer floor_lo() const;
  Integer ceil_hi() const;

  Enclosure operator-() const;
  friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator/(const Enclosure& a, const Enclosure& b);

  friend bool operator==(const Enclosure& a, const Enclosure& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  DirectedReal lo_{};
  DirectedReal hi_{};
  unsigned prec_ = kDefaultPrecision;
};

Enclosure min(const Enclosure& a, const Enclosure& b);
Enclosure max(const Enclosure& a, const Enclosure& b);

Order compare(const Enclosure& a, const Enclosure& b);
Order compare(const Enclosure& a, const Rational& b);
inline bool certainly_less(const Enclosure& a, const Rational& b) {
  return compare(a, b) == Order::less;
}
inline bool certainly_greater(const Enclosure& a, const Rational& b) {
  return compare(a, b) == Order::greater;
}

/// q^e for a positive integer q and rational exponent e, relative width <= 2^{1-prec}.
Enclosure dir_pow(const Integer& q, const Rational& e, unsigned prec);
/// base^e for a positive rational base.
Enclosure pow_rational(const Rational& base, const Rational& e, unsigned prec);
/// base^e when it is rational, nullopt otherwise.
std::optional<Rational> pow_exact(const Rational& base, const Rational& e);

/// log2(a) for a >= 1, absolute width <= 2^{-prec}.
Enclosure log2_enclosure(const Integer& a, unsigned prec);
/// (log a) / (log b) for a, b >= 2.
Enclosure log_ratio(const Integer& a, const Integer& b, unsigned prec);

// Integer helpers shared by the exact kernels.
Integer ipow(const Integer& base, unsigned long e);
/// floor(x^{1/n}) for x >= 0 and whether the root is exact.
std::pair<Integer, bool> iroot(const Integer& x, unsigned long n);
Integer floor_q(const Rational& x);
Integer ceil_q(const Rational& x);
size_t bit_length(const Integer& x);
bool is_dyadic(const Rational& x);
bool is_power_of_two(const Integer& x);

/// Exact rational parsing: "p/q", "n", or dyadic "m*2^e". Decimal points are rejected.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);
std::string to_decimal(const Rational& x, int digits = 17);
/// Decimal with `digits` significant digits rounded toward `dir`.
std::string directed_decimal(const Rational& x, int digits, Rounding dir);

unsigned long to_ulong_checked(const Integer& x, const char* what);

}  // namespace liminf
