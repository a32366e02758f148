#pragma once

#include <cstddef>

#include "liminf/level_sets.hpp"
#include "liminf/numerics.hpp"
#include "liminf/sequences.hpp"

namespace liminf {

/// The Cantor construction has no children at `index` (h <= tau + 1 symptom).
class RegimeViolation : public Error {
 public:
  RegimeViolation(std::size_t index, const std::string& what)
      : Error("regime violation at level " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

struct TheoreticalDimension {
  Enclosure value;
  bool clamped = false;  // tau * alpha > 1 was possible; lower end clamped at 0
};

/// d (1 - tau alpha) / (tau + 1).
TheoreticalDimension theoretical_dimension(const Rational& tau, const Enclosure& alpha, std::size_t d);
Rational theoretical_dimension(const Rational& tau, const Rational& alpha, std::size_t d);

/// Cover of E_1 ∩ ... ∩ E_J by N squares of side 2 q_J^{-1-tau}.
struct CoverReport {
  std::size_t J = 0;
  CertifiedCount N;
  Enclosure side;
  Enclosure dim_estimate;  // log N / (-log side)
  bool regime_ok = true;

  /// N * side^s
  Enclosure s_cost(const Rational& s, unsigned prec) const;
};

CoverReport upper_cover_count(const QSequence& qs, const Rational& tau, std::size_t d,
                              std::size_t J, unsigned prec = kDefaultPrecision);
Enclosure upper_dim_estimate(const QSequence& qs, const Rational& tau, std::size_t d,
                             std::size_t J, unsigned prec = kDefaultPrecision);

struct CantorCount {
  std::size_t J = 0;
  Integer M;       // number of level-J Cantor boxes
  Enclosure s_hat; // log M / ((1 + tau) log q_J)
};

/// floor(q / q_prev^{1+tau}), exact.
Integer cantor_branching(const Integer& q_prev, const Integer& q, const Rational& tau);

CantorCount lower_cantor_count(const QSequence& qs, const Rational& tau, std::size_t d,
                               std::size_t J, unsigned prec = kDefaultPrecision);

}  // namespace liminf
