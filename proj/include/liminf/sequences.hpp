#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "liminf/numerics.hpp"

namespace liminf {

/// Strictly increasing prefix q_1 < q_2 < ... < q_J of integers >= 2.
class QSequence {
 public:
  QSequence() = default;
  explicit QSequence(std::vector<Integer> terms);

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  /// 1-based access matching q_j.
  const Integer& q(std::size_t j) const { return terms_.at(j - 1); }
  std::span<const Integer> terms() const { return terms_; }
  QSequence prefix(std::size_t J) const;

  friend bool operator==(const QSequence&, const QSequence&) = default;

 private:
  std::vector<Integer> terms_;
};

/// Thrown when a generator cannot produce the next admissible term.
class SequenceError : public Error {
 public:
  SequenceError(std::size_t index, const std::string& what)
      : Error("sequence term " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

struct ExplicitSequence {
  std::vector<Integer> terms;
};

/// q_{j+1} = floor(q_j^c).
struct PowerSequence {
  Integer q1;
  Rational c;
};

/// q_{j+1} = ceil(q_j^{1+tau} / 8), checked against the window [q^{1+tau}/8, q^{1+tau}/4].
struct ContractiveSequence {
  Integer q1;
  Rational tau;
};

/// Odd steps q_{j+1} = floor(q_j^eta); even steps q_{j+1} = q_j * ceil(q_j^tau / 8).
struct AlternatingSequence {
  Integer q1;
  Rational tau;
  Rational eta;
};

using SequenceSpec =
    std::variant<ExplicitSequence, PowerSequence, ContractiveSequence, AlternatingSequence>;

std::string describe(const SequenceSpec& spec);

QSequence generate(const SequenceSpec& spec, std::size_t J);

struct ExponentStats {
  std::vector<Enclosure> h_list;      // log q_{j+1} / log q_j, j = 1..J-1
  std::vector<Enclosure> alpha_list;  // (log q_1 + ... + log q_{j-1}) / log q_j, j = 2..J
  std::optional<Enclosure> h_prefix;  // running minimum of h_list
  std::optional<Enclosure> alpha_last;
};

ExponentStats exponent_stats(const QSequence& qs, unsigned prec);

enum class RegimeStatus { pass, fail, indeterminate };

struct RegimeCheck {
  RegimeStatus status = RegimeStatus::pass;
  std::size_t index = 0;  // first offending j (1-based) when not pass
};

std::string to_string(RegimeStatus s);

/// Checks h_j > tau + 1 for every computed ratio.
RegimeCheck validate_regime(const QSequence& qs, const Rational& tau, unsigned prec);

struct Reindexed {
  QSequence qs;
  Rational tau_hat;
};

/// (q_2, q_4, ...) together with tau(2 + tau).
Reindexed reindex_even(const QSequence& qs, const Rational& tau);

}  // namespace liminf
