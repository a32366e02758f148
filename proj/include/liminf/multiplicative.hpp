#pragma once

#include <cstdint>
#include <vector>

#include "liminf/numerics.hpp"

namespace liminf {

struct MultBounds {
  Enclosure lower;  // d - 1 + (1 - tau alpha) / (tau + 1), clamped at d - 1
  Enclosure upper;  // d - 1 + 1 / (tau + 1)
  bool clamped = false;
};

struct ExactMultBounds {
  Rational lower;
  Rational upper;
  bool clamped = false;
};

MultBounds mult_bounds(const Rational& tau, const Enclosure& alpha, std::size_t d);
ExactMultBounds mult_bounds(const Rational& tau, const Rational& alpha, std::size_t d);

/// d - s - tau (s - d + 1); zero at s = d - 1 + 1/(tau + 1).
Rational mult_cost_exponent(std::size_t d, const Rational& tau, const Rational& s);

/// Closed square [x, x + side] x [y, y + side]; all lengths in units of 2^{-K}.
struct Square {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::uint64_t side = 0;
  friend bool operator==(const Square&, const Square&) = default;
};

/// Squares covering {(x, y) in [0,1]^2 : x y <= 2^{-K}}.
struct SquareCover {
  unsigned K = 0;
  std::vector<Square> squares;

  Rational unit() const;
  /// Linear scan over every square.
  bool contains(const Rational& x, const Rational& y) const;
};

inline constexpr unsigned kMaxCoverExponent = 40;

/// Dyadic columns x in [2^{-k-1}, 2^{-k}] for k < ceil(K/2), each covered by
/// squares of side 2^{k+1-K}, mirrored in the diagonal, plus the corner
/// square [0, 2^{-ceil(K/2)}]^2.
SquareCover hyperbolic_cover(unsigned K);

/// Sum of side^s over the cover.
Enclosure cover_cost(const SquareCover& cover, const Rational& s, unsigned prec = kDefaultPrecision);

struct HyperbolicCover {
  SquareCover cover;
  Enclosure s_cost;
};

/// gamma = 2^{-K}; s in (1, 2].
HyperbolicCover hyperbolic_cover(unsigned K, const Rational& s, unsigned prec = kDefaultPrecision);

}  // namespace liminf
