#pragma once

// One-dimensional level sets E = {x in [0,1) : ||q x - theta|| < r(q)} on the
// torus and their finite intersections. Endpoints are exact rationals
// bracketing the true (possibly irrational) endpoint; d-dimensional sets are
// products of these and are never materialized.

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "liminf/numerics.hpp"
#include "liminf/sequences.hpp"

namespace liminf {

inline constexpr std::size_t kDefaultComponentBudget = 10'000'000;

/// r(q) = q^{-(1+tau)}
struct PowerRadius {};

/// r(q) = psi(q), any certified radius function.
struct GeneralRadius {
  std::function<Enclosure(const Integer& q, unsigned prec)> psi;
  std::string name = "psi";
};

using RadiusSpec = std::variant<PowerRadius, GeneralRadius>;

struct LevelParams {
  std::vector<Rational> theta;  // one shift per coordinate, each in [0,1)
  Rational tau;
  RadiusSpec radius = PowerRadius{};

  static LevelParams homogeneous(const Rational& tau, std::size_t d);

  std::size_t dimension() const { return theta.size(); }
  Enclosure radius_of(const Integer& q, unsigned prec) const;
  /// Throws PreconditionError unless tau > 0, d >= 1 and every theta_i in [0,1).
  void validate() const;
};

/// lo <= true value <= hi.
struct Bounds {
  Rational lo;
  Rational hi;
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// An open arc whose endpoints are only known up to Bounds. `certain` is set
/// when the arc is provably nonempty; otherwise it only possibly exists.
/// Arcs are lifted so that 0 <= left.lo < 1; right.hi may exceed 1 (wrap).
struct Arc {
  Bounds left;
  Bounds right;
  bool certain = true;
  friend bool operator==(const Arc&, const Arc&) = default;
};

struct OpenInterval {
  Rational lo;
  Rational hi;
  bool wraps() const { return hi > 1; }
  Rational length() const { return hi - lo; }
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

struct CertifiedCount {
  Integer min;
  Integer max;
  bool is_point() const { return min == max; }
  bool contains(const Integer& v) const { return min <= v && v <= max; }
  friend bool operator==(const CertifiedCount&, const CertifiedCount&) = default;
};

CertifiedCount operator*(const CertifiedCount& a, const CertifiedCount& b);

class TorusIntervalSet {
 public:
  TorusIntervalSet() = default;
  explicit TorusIntervalSet(std::vector<Arc> arcs);
  static TorusIntervalSet full();

  bool is_full() const { return full_; }
  bool is_empty() const { return !full_ && arcs_.empty(); }
  std::span<const Arc> arcs() const { return arcs_; }

  /// Point set provably inside the true set.
  std::vector<OpenInterval> inner() const;
  /// Canonical point set provably containing the true set.
  std::vector<OpenInterval> outer() const;

  CertifiedCount components() const;
  Rational inner_length() const;
  Rational outer_length() const;
  bool in_inner(const Rational& x) const;
  bool in_outer(const Rational& x) const;

  friend bool operator==(const TorusIntervalSet&, const TorusIntervalSet&) = default;

 private:
  bool full_ = false;
  std::vector<Arc> arcs_;
};

/// How the q arcs of one level sit relative to each other.
enum class LevelShape { disjoint, touching, full };

LevelShape level_shape(const Integer& q, const Enclosure& radius);

/// E for modulus q along one coordinate.
TorusIntervalSet build_level(const Integer& q, const LevelParams& params, std::size_t coord,
                             unsigned prec, std::size_t cap = kDefaultComponentBudget);

TorusIntervalSet intersect(const TorusIntervalSet& a, const TorusIntervalSet& b);

struct LevelStats {
  std::size_t level = 0;
  CertifiedCount count;
  Rational max_len;  // upper bound on the longest component
  Rational min_gap;  // lower bound on the smallest gap between components
  friend bool operator==(const LevelStats&, const LevelStats&) = default;
};

struct PrefixResult {
  TorusIntervalSet set;
  std::vector<LevelStats> levels;
};

LevelStats level_stats(std::size_t level, const TorusIntervalSet& set);

/// E_1 ∩ ... ∩ E_J along one coordinate, refining component by component.
PrefixResult prefix_intersection(const QSequence& qs, const LevelParams& params, std::size_t coord,
                                 std::size_t J, unsigned prec,
                                 std::size_t cap = kDefaultComponentBudget,
                                 Exec exec = Exec::parallel);

/// One refinement step: intersect `current` with E for modulus q.
TorusIntervalSet refine_serial(const TorusIntervalSet& current, const Integer& q,
                               const Rational& theta, const Enclosure& radius, std::size_t cap,
                               std::size_t level);
TorusIntervalSet refine_parallel(const TorusIntervalSet& current, const Integer& q,
                                 const Rational& theta, const Enclosure& radius, std::size_t cap,
                                 std::size_t level);

struct ProductLevelStats {
  std::size_t level = 0;
  CertifiedCount boxes;
  Rational max_side;
  Rational min_gap;  // lower bound on the sup-distance between distinct boxes
};

struct ProductPrefix {
  std::vector<PrefixResult> coords;
  std::vector<ProductLevelStats> levels;
};

/// d-dimensional prefix intersection derived from the per-coordinate factors.
ProductPrefix prefix_intersection_product(const QSequence& qs, const LevelParams& params,
                                          std::size_t J, unsigned prec,
                                          std::size_t cap = kDefaultComponentBudget,
                                          Exec exec = Exec::parallel);

/// #{p in [0, q) : a < (p + theta)/q < b}.
Integer count_shifted_rationals(const Rational& a, const Rational& b, const Rational& theta,
                                const Integer& q);

}  // namespace liminf
