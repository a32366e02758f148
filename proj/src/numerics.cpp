#include "liminf/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace liminf {

unsigned default_precision() {
  if (const char* env = std::getenv("LIMINF_PREC")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= kMinPrecision && v <= 1u << 16) {
      return static_cast<unsigned>(v);
    }
  }
  return kDefaultPrecision;
}

// ---------------------------------------------------------------------------
// Integer helpers

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::pair<Integer, bool> iroot(const Integer& x, unsigned long n) {
  if (x < 0) throw PreconditionError("iroot of a negative integer");
  if (n == 1) return {x, true};
  Integer r;
  const int exact = mpz_root(r.get_mpz_t(), x.get_mpz_t(), n);
  return {r, exact != 0};
}

Integer floor_q(const Rational& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Integer ceil_q(const Rational& x) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

size_t bit_length(const Integer& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

bool is_power_of_two(const Integer& x) {
  return x > 0 && mpz_scan1(x.get_mpz_t(), 0) == bit_length(x) - 1;
}

bool is_dyadic(const Rational& x) { return is_power_of_two(x.get_den()); }

unsigned long to_ulong_checked(const Integer& x, const char* what) {
  if (x < 0 || !x.fits_ulong_p()) {
    throw PreconditionError(std::string(what) + " does not fit in a machine word");
  }
  return x.get_ui();
}

namespace {

Integer shifted(const Integer& m, long k) {
  Integer r;
  if (k >= 0) {
    mpz_mul_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpz_fdiv_q_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
  }
  return r;
}

// floor or ceil of num / den for den > 0.
Integer div_dir(const Integer& num, const Integer& den, Rounding dir) {
  Integer q;
  if (dir == Rounding::up) {
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  } else {
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
  return q;
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

// ---------------------------------------------------------------------------
// DirectedReal

DirectedReal::DirectedReal(Integer mantissa, long exponent, Rounding dir)
    : mantissa_(std::move(mantissa)), exponent_(exponent), dir_(dir) {
  canonicalize();
}

void DirectedReal::canonicalize() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  const mp_bitcnt_t tz = mpz_scan1(mantissa_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_tdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), tz);
    exponent_ += static_cast<long>(tz);
  }
}

DirectedReal DirectedReal::from_integer(const Integer& v) { return {v, 0, Rounding::exact}; }

DirectedReal DirectedReal::from_rational(const Rational& x, unsigned prec, Rounding dir) {
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  if (num == 0) return {};
  if (is_power_of_two(den)) {
    return {num, -static_cast<long>(bit_length(den) - 1), Rounding::exact};
  }
  const long k = static_cast<long>(prec) + static_cast<long>(bit_length(den)) -
                 static_cast<long>(bit_length(num)) + 1;
  Integer scaled_num = num;
  Integer scaled_den = den;
  if (k >= 0) {
    scaled_num = shifted(num, k);
  } else {
    scaled_den = shifted(den, -k);
  }
  return {div_dir(scaled_num, scaled_den, dir), -k, dir};
}

DirectedReal DirectedReal::parse(std::string_view text, Rounding dir) {
  std::string s(text);
  const auto star = s.find("*2^");
  Integer m;
  long e = 0;
  if (m.set_str(s.substr(0, star), 10) != 0) {
    throw PreconditionError("malformed dyadic number '" + s + "'");
  }
  if (star != std::string::npos) {
    const std::string ex = s.substr(star + 3);
    std::size_t used = 0;
    try {
      e = std::stol(ex, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != ex.size() || ex.empty()) {
      throw PreconditionError("malformed dyadic exponent in '" + s + "'");
    }
  }
  return {m, e, dir};
}

long DirectedReal::magnitude() const {
  return static_cast<long>(bit_length(abs(mantissa_))) - 1 + exponent_;
}

size_t DirectedReal::mantissa_bits() const { return bit_length(abs(mantissa_)); }

DirectedReal DirectedReal::rounded(unsigned prec, Rounding dir) const {
  const size_t bits = mantissa_bits();
  if (bits <= prec) return *this;
  const mp_bitcnt_t shift = bits - prec;
  Integer m;
  if (dir == Rounding::up) {
    mpz_cdiv_q_2exp(m.get_mpz_t(), mantissa_.get_mpz_t(), shift);
  } else {
    mpz_fdiv_q_2exp(m.get_mpz_t(), mantissa_.get_mpz_t(), shift);
  }
  return {m, exponent_ + static_cast<long>(shift), dir};
}

DirectedReal DirectedReal::with_direction(Rounding dir) const {
  DirectedReal r = *this;
  r.dir_ = dir;
  return r;
}

Rational DirectedReal::to_rational() const {
  Rational r(mantissa_);
  if (exponent_ > 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent_));
  } else if (exponent_ < 0) {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent_));
  }
  return r;
}

double DirectedReal::to_double() const {
  if (mantissa_ == 0) return 0.0;
  long e = 0;
  const double d = mpz_get_d_2exp(&e, mantissa_.get_mpz_t());
  const long total = e + exponent_;
  if (total > 4096) return d > 0 ? HUGE_VAL : -HUGE_VAL;
  if (total < -4096) return 0.0;
  return std::ldexp(d, static_cast<int>(total));
}

std::string DirectedReal::to_string() const {
  std::string s = mantissa_.get_str();
  if (exponent_ != 0) s += "*2^" + std::to_string(exponent_);
  return s;
}

std::string DirectedReal::to_decimal(int digits) const {
  if (mantissa_ == 0) return "0";
  mpf_class f(mantissa_, static_cast<mp_bitcnt_t>(std::max<size_t>(mantissa_bits(), 64) + 64));
  if (exponent_ > 0) {
    mpf_mul_2exp(f.get_mpf_t(), f.get_mpf_t(), static_cast<mp_bitcnt_t>(exponent_));
  } else if (exponent_ < 0) {
    mpf_div_2exp(f.get_mpf_t(), f.get_mpf_t(), static_cast<mp_bitcnt_t>(-exponent_));
  }
  mp_exp_t exp10 = 0;
  char* raw = mpf_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), f.get_mpf_t());
  std::string digs(raw);
  void (*freefunc)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(raw, std::char_traits<char>::length(raw) + 1);

  std::string sign;
  if (!digs.empty() && digs[0] == '-') {
    sign = "-";
    digs.erase(0, 1);
  }
  // digs represents 0.digs * 10^exp10
  std::ostringstream out;
  if (exp10 >= -5 && exp10 <= 21) {
    if (exp10 <= 0) {
      out << sign << "0." << std::string(static_cast<size_t>(-exp10), '0') << digs;
    } else if (static_cast<size_t>(exp10) >= digs.size()) {
      out << sign << digs << std::string(static_cast<size_t>(exp10) - digs.size(), '0');
    } else {
      out << sign << digs.substr(0, static_cast<size_t>(exp10)) << '.'
          << digs.substr(static_cast<size_t>(exp10));
    }
  } else {
    out << sign << digs[0];
    if (digs.size() > 1) out << '.' << digs.substr(1);
    out << 'e' << (exp10 - 1);
  }
  return out.str();
}

std::strong_ordering operator<=>(const DirectedReal& a, const DirectedReal& b) {
  const int sa = a.sign();
  const int sb = b.sign();
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::strong_ordering::equal;
  const long ma = a.magnitude();
  const long mb = b.magnitude();
  if (ma != mb) return sa > 0 ? (ma <=> mb) : (mb <=> ma);
  const long e = std::min(a.exponent(), b.exponent());
  const int c = cmp(shifted(a.mantissa(), a.exponent() - e), shifted(b.mantissa(), b.exponent() - e));
  return c <=> 0;
}

std::strong_ordering compare(const DirectedReal& a, const Rational& b) {
  return cmp(a.to_rational(), b) <=> 0;
}

DirectedReal exact_add(const DirectedReal& a, const DirectedReal& b, Rounding dir) {
  if (a.is_zero()) return b.with_direction(dir);
  if (b.is_zero()) return a.with_direction(dir);
  const long e = std::min(a.exponent(), b.exponent());
  return {shifted(a.mantissa(), a.exponent() - e) + shifted(b.mantissa(), b.exponent() - e), e, dir};
}

DirectedReal exact_sub(const DirectedReal& a, const DirectedReal& b, Rounding dir) {
  return exact_add(a, DirectedReal(-b.mantissa(), b.exponent(), dir), dir);
}

DirectedReal exact_mul(const DirectedReal& a, const DirectedReal& b, Rounding dir) {
  return {a.mantissa() * b.mantissa(), a.exponent() + b.exponent(), dir};
}

DirectedReal scale2(const DirectedReal& a, long k) {
  return {a.mantissa(), a.exponent() + k, a.direction()};
}

DirectedReal div_rounded(const DirectedReal& a, const DirectedReal& b, unsigned prec,
                         Rounding dir) {
  if (b.is_zero()) throw PreconditionError("division by zero");
  if (a.is_zero()) return {};
  Integer num = a.mantissa();
  Integer den = b.mantissa();
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long k = static_cast<long>(prec) + static_cast<long>(bit_length(den)) -
                 static_cast<long>(bit_length(abs(num))) + 1;
  if (k >= 0) {
    num = shifted(num, k);
  } else {
    den = shifted(den, -k);
  }
  Integer q = div_dir(num, den, dir);
  const bool exact = q * den == num;
  // q carries prec or prec + 1 bits; same-direction re-rounding stays directed
  return DirectedReal(q, a.exponent() - b.exponent() - k, exact ? Rounding::exact : dir).rounded(prec, dir);
}

// ---------------------------------------------------------------------------
// Enclosure

Enclosure::Enclosure(DirectedReal lo, DirectedReal hi, unsigned prec)
    : lo_(std::move(lo)), hi_(std::move(hi)), prec_(prec) {
  if (hi_ < lo_) throw PreconditionError("enclosure with lo > hi");
  if (lo_ == hi_) {
    lo_ = lo_.with_direction(Rounding::exact);
    hi_ = hi_.with_direction(Rounding::exact);
  } else {
    lo_ = lo_.with_direction(Rounding::down);
    hi_ = hi_.with_direction(Rounding::up);
  }
}

Enclosure Enclosure::exact(const DirectedReal& v, unsigned prec) { return {v, v, prec}; }

Enclosure Enclosure::exact(const Integer& v, unsigned prec) {
  const auto d = DirectedReal::from_integer(v);
  return {d, d, prec};
}

Enclosure Enclosure::of(const Rational& x, unsigned prec) {
  return {DirectedReal::from_rational(x, prec, Rounding::down),
          DirectedReal::from_rational(x, prec, Rounding::up), prec};
}

double Enclosure::approx() const {
  return 0.5 * (lo_.to_double() + hi_.to_double());
}

bool Enclosure::contains(const Rational& x) const {
  return compare(lo_, x) <= 0 && compare(hi_, x) >= 0;
}

bool Enclosure::contains(const Enclosure& other) const {
  return lo_ <= other.lo_ && other.hi_ <= hi_;
}

Enclosure Enclosure::at_precision(unsigned prec) const {
  return {lo_.rounded(prec, Rounding::down), hi_.rounded(prec, Rounding::up), prec};
}

namespace {

Integer floor_dyadic(const DirectedReal& v) {
  if (v.exponent() >= 0) return shifted(v.mantissa(), v.exponent());
  Integer r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), v.mantissa().get_mpz_t(),
                  static_cast<mp_bitcnt_t>(-v.exponent()));
  return r;
}

Integer ceil_dyadic(const DirectedReal& v) {
  if (v.exponent() >= 0) return shifted(v.mantissa(), v.exponent());
  Integer r;
  mpz_cdiv_q_2exp(r.get_mpz_t(), v.mantissa().get_mpz_t(),
                  static_cast<mp_bitcnt_t>(-v.exponent()));
  return r;
}

}  // namespace

std::optional<Integer> Enclosure::floor() const {
  Integer a = floor_dyadic(lo_);
  if (a == floor_dyadic(hi_)) return a;
  return std::nullopt;
}

std::optional<Integer> Enclosure::ceil() const {
  Integer a = ceil_dyadic(lo_);
  if (a == ceil_dyadic(hi_)) return a;
  return std::nullopt;
}

Integer Enclosure::floor_lo() const { return floor_dyadic(lo_); }
Integer Enclosure::ceil_hi() const { return ceil_dyadic(hi_); }

Enclosure Enclosure::operator-() const {
  return {DirectedReal(-hi_.mantissa(), hi_.exponent(), Rounding::down),
          DirectedReal(-lo_.mantissa(), lo_.exponent(), Rounding::up), prec_};
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  const unsigned p = std::max(a.prec_, b.prec_);
  return {exact_add(a.lo_, b.lo_, Rounding::down).rounded(p, Rounding::down),
          exact_add(a.hi_, b.hi_, Rounding::up).rounded(p, Rounding::up), p};
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) { return a + (-b); }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  const unsigned p = std::max(a.prec_, b.prec_);
  const DirectedReal c[4] = {exact_mul(a.lo_, b.lo_, Rounding::exact),
                             exact_mul(a.lo_, b.hi_, Rounding::exact),
                             exact_mul(a.hi_, b.lo_, Rounding::exact),
                             exact_mul(a.hi_, b.hi_, Rounding::exact)};
  const auto [mn, mx] = std::minmax_element(std::begin(c), std::end(c));
  return {mn->rounded(p, Rounding::down), mx->rounded(p, Rounding::up), p};
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  const unsigned p = std::max(a.prec_, b.prec_);
  if (b.lo_.sign() <= 0 && b.hi_.sign() >= 0) {
    throw Indeterminate("division by an enclosure containing zero");
  }
  DirectedReal lo;
  DirectedReal hi;
  bool first = true;
  for (const auto* x : {&a.lo_, &a.hi_}) {
    for (const auto* y : {&b.lo_, &b.hi_}) {
      DirectedReal d = div_rounded(*x, *y, p, Rounding::down);
      DirectedReal u = div_rounded(*x, *y, p, Rounding::up);
      if (first || d < lo) lo = d;
      if (first || hi < u) hi = u;
      first = false;
    }
  }
  return {lo, hi, p};
}

Enclosure min(const Enclosure& a, const Enclosure& b) {
  return {std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()),
          std::max(a.precision(), b.precision())};
}

Enclosure max(const Enclosure& a, const Enclosure& b) {
  return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()),
          std::max(a.precision(), b.precision())};
}

Order compare(const Enclosure& a, const Enclosure& b) {
  if (a.hi() < b.lo()) return Order::less;
  if (b.hi() < a.lo()) return Order::greater;
  if (a.is_exact() && b.is_exact() && a.lo() == b.lo()) return Order::equal;
  return Order::unknown;
}

Order compare(const Enclosure& a, const Rational& b) {
  if (compare(a.hi(), b) < 0) return Order::less;
  if (compare(a.lo(), b) > 0) return Order::greater;
  if (a.is_exact() && compare(a.lo(), b) == 0) return Order::equal;
  return Order::unknown;
}

// ---------------------------------------------------------------------------
// Powers and logarithms

std::optional<Rational> pow_exact(const Rational& base, const Rational& e) {
  if (base <= 0) throw PreconditionError("pow of a non-positive base");
  Rational b = base;
  Integer a = e.get_num();
  const unsigned long root = to_ulong_checked(e.get_den(), "exponent denominator");
  if (a < 0) {
    b = 1 / b;
    a = -a;
  }
  const unsigned long ua = to_ulong_checked(a, "exponent numerator");
  auto [rn, en] = iroot(b.get_num(), root);
  if (!en) return std::nullopt;
  auto [rd, ed] = iroot(b.get_den(), root);
  if (!ed) return std::nullopt;
  Rational r(ipow(rn, ua), ipow(rd, ua));
  r.canonicalize();
  return r;
}

Enclosure pow_rational(const Rational& base, const Rational& e, unsigned prec) {
  if (prec < kMinPrecision) throw PreconditionError("precision below 8 bits");
  if (auto r = pow_exact(base, e)) return Enclosure::of(*r, prec);

  Rational b = base;
  Integer a = e.get_num();
  const unsigned long root = to_ulong_checked(e.get_den(), "exponent denominator");
  if (a < 0) {
    b = 1 / b;
    a = -a;
  }
  const unsigned long ua = to_ulong_checked(a, "exponent numerator");
  const Integer n = ipow(b.get_num(), ua);
  const Integer d = ipow(b.get_den(), ua);
  const long lroot = static_cast<long>(root);
  const long log_lower = floor_div(static_cast<long>(bit_length(n)) - 1 -
                                       static_cast<long>(bit_length(d)),
                                   lroot);
  const long k = static_cast<long>(prec) + 2 - log_lower;
  Integer num = n;
  Integer den = d;
  if (k >= 0) {
    num = shifted(n, k * lroot);
  } else {
    den = shifted(d, -k * lroot);
  }
  Integer x;
  mpz_fdiv_q(x.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  auto [m, exact_root] = iroot(x, root);
  (void)exact_root;  // the value is irrational here, so m < value * 2^k < m + 1
  return {DirectedReal(m, -k, Rounding::down), DirectedReal(m + 1, -k, Rounding::up), prec};
}

Enclosure dir_pow(const Integer& q, const Rational& e, unsigned prec) {
  if (q <= 0) throw PreconditionError("dir_pow requires q >= 1");
  if (prec < kMinPrecision) throw PreconditionError("precision below 8 bits");
  return pow_rational(Rational(q), e, prec);
}

Enclosure log2_enclosure(const Integer& a, unsigned prec) {
  if (a < 1) throw PreconditionError("log2 of a non-positive integer");
  const long e = static_cast<long>(bit_length(a)) - 1;
  if (is_power_of_two(a)) return Enclosure::exact(Integer(e), prec);

  // Bit-by-bit logarithm on a W-bit fixed point residual in [1, 2). The lower
  // path rounds every square down and the upper path rounds up; in both the
  // quantity bits + 2^{-i} log2(residual) stays on the correct side of log2(a).
  const long w = static_cast<long>(prec) + 32;
  const unsigned long n = prec + 4;
  Integer r_lo = shifted(a, w - e);
  Integer r_hi = r_lo;
  if (w < e) {
    mpz_cdiv_q_2exp(r_hi.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(e - w));
  }
  const Integer two = shifted(Integer(1), w + 1);
  Integer bits_lo = 0;
  Integer bits_hi = 0;
  Integer sq;
  for (unsigned long i = 1; i <= n; ++i) {
    const Integer unit = shifted(Integer(1), static_cast<long>(n - i));
    sq = r_lo * r_lo;
    mpz_fdiv_q_2exp(r_lo.get_mpz_t(), sq.get_mpz_t(), static_cast<mp_bitcnt_t>(w));
    while (r_lo >= two) {
      mpz_fdiv_q_2exp(r_lo.get_mpz_t(), r_lo.get_mpz_t(), 1);
      bits_lo += unit;
    }
    sq = r_hi * r_hi;
    mpz_cdiv_q_2exp(r_hi.get_mpz_t(), sq.get_mpz_t(), static_cast<mp_bitcnt_t>(w));
    while (r_hi >= two) {
      mpz_cdiv_q_2exp(r_hi.get_mpz_t(), r_hi.get_mpz_t(), 1);
      bits_hi += unit;
    }
  }
  const Integer base = shifted(Integer(e), static_cast<long>(n));
  return {DirectedReal(base + bits_lo, -static_cast<long>(n), Rounding::down),
          DirectedReal(base + bits_hi + 1, -static_cast<long>(n), Rounding::up), prec};
}

namespace {

// b = root^power with root not itself a perfect power.
std::pair<Integer, unsigned long> primitive_root(const Integer& b) {
  if (mpz_perfect_power_p(b.get_mpz_t()) == 0) return {b, 1};
  for (unsigned long y = bit_length(b); y >= 2; --y) {
    auto [r, exact] = iroot(b, y);
    if (exact && r > 1) return {r, y};
  }
  return {b, 1};
}

}  // namespace

Enclosure log_ratio(const Integer& a, const Integer& b, unsigned prec) {
  if (a < 2 || b < 2) throw PreconditionError("log_ratio requires a, b >= 2");
  if (prec < kMinPrecision) throw PreconditionError("precision below 8 bits");
  const auto [root, y] = primitive_root(b);
  Integer rest;
  const unsigned long x = mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), root.get_mpz_t());
  if (rest == 1) {
    Rational ratio(Integer(static_cast<unsigned long>(x)), Integer(y));
    ratio.canonicalize();
    return Enclosure::of(ratio, prec);
  }
  const Enclosure la = log2_enclosure(a, prec + 8);
  const Enclosure lb = log2_enclosure(b, prec + 8);
  return {div_rounded(la.lo(), lb.hi(), prec + 4, Rounding::down),
          div_rounded(la.hi(), lb.lo(), prec + 4, Rounding::up), prec};
}

// ---------------------------------------------------------------------------
// Text forms

namespace {

std::string trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw PreconditionError("empty rational");
  if (s.find_first_of(".eE") != std::string::npos) {
    throw PreconditionError("'" + s + "' is a decimal; write rationals as p/q or m*2^e");
  }
  bool neg = false;
  std::string body = s;
  if (body[0] == '-' || body[0] == '+') {
    neg = body[0] == '-';
    body.erase(0, 1);
  }
  Rational r;
  if (const auto star = body.find("*2^"); star != std::string::npos) {
    if (!all_digits(body.substr(0, star))) throw PreconditionError("malformed rational '" + s + "'");
    r = DirectedReal::parse(body, Rounding::exact).to_rational();
  } else if (const auto slash = body.find('/'); slash != std::string::npos) {
    const std::string p = body.substr(0, slash);
    const std::string q = body.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) throw PreconditionError("malformed rational '" + s + "'");
    if (Integer(q) == 0) throw PreconditionError("zero denominator in '" + s + "'");
    r = Rational(Integer(p), Integer(q));
    r.canonicalize();
  } else {
    if (!all_digits(body)) throw PreconditionError("malformed rational '" + s + "'");
    r = Rational(Integer(body));
  }
  return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& x) { return x.get_str(); }
std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_decimal(const Rational& x, int digits) {
  const unsigned prec = static_cast<unsigned>(digits) * 4 + 16;
  return DirectedReal::from_rational(x, prec, Rounding::down).to_decimal(digits);
}

}  // namespace liminf

namespace liminf {

std::string directed_decimal(const Rational& x, int digits, Rounding dir) {
  if (digits < 1) throw PreconditionError("digits must be >= 1");
  if (x == 0) return "0";
  const bool neg = x < 0;
  const Rational a = neg ? Rational(-x) : x;
  const bool up = (dir == Rounding::up) != neg;
  const Integer lo = ipow(Integer(10), static_cast<unsigned long>(digits - 1));
  const Integer hi = lo * 10;
  // k with 10^{digits-1} <= a 10^k < 10^digits
  long k = static_cast<long>(digits) -
           static_cast<long>(mpz_sizeinbase(a.get_num().get_mpz_t(), 10)) +
           static_cast<long>(mpz_sizeinbase(a.get_den().get_mpz_t(), 10));
  auto scaled = [&](long e) -> Rational {
    const Rational p10(ipow(Integer(10), static_cast<unsigned long>(e >= 0 ? e : -e)));
    if (e >= 0) return a * p10;
    return a / p10;
  };
  while (scaled(k) >= hi) --k;
  while (scaled(k) < lo) ++k;
  const Rational v = scaled(k);
  Integer m = up ? ceil_q(v) : floor_q(v);
  std::string s = m.get_str();
  // strip trailing zeros
  while (s.size() > 1 && s.back() == '0' && k > 0) {
    s.pop_back();
    --k;
  }
  std::string out = neg ? "-" : "";
  if (k <= 0) {
    out += s + std::string(static_cast<std::size_t>(-k), '0');
  } else if (static_cast<std::size_t>(k) < s.size()) {
    out += s.substr(0, s.size() - static_cast<std::size_t>(k)) + "." + s.substr(s.size() - static_cast<std::size_t>(k));
  } else if (k - static_cast<long>(s.size()) <= 6) {
    out += "0." + std::string(static_cast<std::size_t>(k) - s.size(), '0') + s;
  } else {
    const long e = static_cast<long>(s.size()) - 1 - k;
    out += s.substr(0, 1) + (s.size() > 1 ? "." + s.substr(1) : "") + "e" + std::to_string(e);
  }
  return out;
}

}  // namespace liminf
