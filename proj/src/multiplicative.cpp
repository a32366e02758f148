#include "liminf/multiplicative.hpp"

#include <algorithm>
#include <map>

#include "liminf/dimension_bounds.hpp"

namespace liminf {

MultBounds mult_bounds(const Rational& tau, const Enclosure& alpha, std::size_t d) {
  if (tau <= 0) throw PreconditionError("tau must be positive");
  if (d < 1) throw PreconditionError("d must be >= 1");
  const unsigned p = alpha.precision();
  const Enclosure base = Enclosure::exact(Integer(static_cast<unsigned long>(d - 1)), p);
  const Enclosure one = Enclosure::exact(Integer(1), p);
  const auto tail = theoretical_dimension(tau, alpha, 1);
  MultBounds out;
  out.clamped = tail.clamped;
  out.lower = base + tail.value;
  out.upper = base + one / Enclosure::of(tau + 1, p);
  return out;
}

ExactMultBounds mult_bounds(const Rational& tau, const Rational& alpha, std::size_t d) {
  if (tau <= 0) throw PreconditionError("tau must be positive");
  if (d < 1) throw PreconditionError("d must be >= 1");
  const Rational base(static_cast<unsigned long>(d - 1));
  ExactMultBounds out;
  out.clamped = tau * alpha > 1;
  out.lower = base + theoretical_dimension(tau, alpha, 1);
  out.upper = base + 1 / (tau + 1);
  return out;
}

Rational mult_cost_exponent(std::size_t d, const Rational& tau, const Rational& s) {
  const Rational dd(static_cast<unsigned long>(d));
  return dd - s - tau * (s - dd + 1);
}

Rational SquareCover::unit() const { return Rational(1, Integer(1) << K); }

bool SquareCover::contains(const Rational& x, const Rational& y) const {
  if (x < 0 || x > 1 || y < 0 || y > 1) return false;
  const Integer scale = Integer(1) << K;
  // for integer n: X >= n iff floor(X) >= n, and X <= n iff ceil(X) <= n
  const auto fx = to_ulong_checked(floor_q(x * scale), "x");
  const auto cx = to_ulong_checked(ceil_q(x * scale), "x");
  const auto fy = to_ulong_checked(floor_q(y * scale), "y");
  const auto cy = to_ulong_checked(ceil_q(y * scale), "y");
  return std::any_of(squares.begin(), squares.end(), [&](const Square& sq) {
    return fx >= sq.x && cx <= sq.x + sq.side && fy >= sq.y && cy <= sq.y + sq.side;
  });
}

SquareCover hyperbolic_cover(unsigned K) {
  if (K > kMaxCoverExponent) {
    throw PreconditionError("cover exponent K must be <= " + std::to_string(kMaxCoverExponent));
  }
  SquareCover cover;
  cover.K = K;
  const unsigned half = (K + 1) / 2;
  std::vector<Square> column;
  for (unsigned k = 0; k < half; ++k) {
    const std::uint64_t side = std::uint64_t{1} << (k + 1);
    const std::uint64_t start = std::uint64_t{1} << (K - k - 1);
    const std::uint64_t count = K >= 2 * k + 2 ? std::uint64_t{1} << (K - 2 * k - 2) : 1;
    for (std::uint64_t j = 0; j < count; ++j) column.push_back({start + j * side, 0, side});
  }
  cover.squares = column;
  for (const auto& sq : column) cover.squares.push_back({sq.y, sq.x, sq.side});
  cover.squares.push_back({0, 0, std::uint64_t{1} << (K - half)});
  return cover;
}

Enclosure cover_cost(const SquareCover& cover, const Rational& s, unsigned prec) {
  std::map<std::uint64_t, unsigned long> groups;
  for (const auto& sq : cover.squares) ++groups[sq.side];
  const Integer scale = Integer(1) << cover.K;
  Enclosure total = Enclosure::exact(Integer(0), prec);
  for (const auto& [side, count] : groups) {
    const Rational len(Integer(static_cast<unsigned long>(side)), scale);
    total = total + Enclosure::exact(Integer(count), prec) * pow_rational(len, s, prec);
  }
  return total;
}

HyperbolicCover hyperbolic_cover(unsigned K, const Rational& s, unsigned prec) {
  if (s <= 1 || s > 2) throw PreconditionError("cover exponent s must lie in (1, 2]");
  HyperbolicCover out{hyperbolic_cover(K), {}};
  out.s_cost = cover_cost(out.cover, s, prec);
  return out;
}

}  // namespace liminf
