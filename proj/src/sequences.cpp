#include "liminf/sequences.hpp"

#include <sstream>

namespace liminf {

QSequence::QSequence(std::vector<Integer> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i] < 2) throw SequenceError(i + 1, "terms must be >= 2");
    if (i > 0 && terms_[i] <= terms_[i - 1]) {
      throw SequenceError(i + 1, "terms must be strictly increasing");
    }
  }
}

QSequence QSequence::prefix(std::size_t J) const {
  if (J > terms_.size()) throw PreconditionError("prefix longer than the sequence");
  return QSequence(std::vector<Integer>(terms_.begin(), terms_.begin() + static_cast<long>(J)));
}

namespace {

struct RationalPower {
  unsigned long num;
  unsigned long den;
};

RationalPower split(const Rational& e, const char* what) {
  if (e <= 0) throw PreconditionError(std::string(what) + " must be positive");
  return {to_ulong_checked(e.get_num(), what), to_ulong_checked(e.get_den(), what)};
}

// floor(q^c) for rational c > 0.
Integer floor_power(const Integer& q, const Rational& c) {
  const auto [a, b] = split(c, "exponent");
  return iroot(ipow(q, a), b).first;
}

// ceil(q^e / 8).
Integer ceil_power_over_8(const Integer& q, const Rational& e) {
  const auto [a, b] = split(e, "exponent");
  auto [r, exact] = iroot(ipow(q, a), b);
  Integer out;
  if (exact) {
    mpz_cdiv_q_ui(out.get_mpz_t(), r.get_mpz_t(), 8);
  } else {
    mpz_fdiv_q_ui(out.get_mpz_t(), r.get_mpz_t(), 8);
    out += 1;
  }
  return out;
}

// q^{1+tau}/8 <= next <= q^{1+tau}/4, decided exactly by raising to the denominator.
bool in_contractive_window(const Integer& q, const Integer& next, const Rational& tau) {
  const Rational e = 1 + tau;
  const auto [a, b] = split(e, "1 + tau");
  const Integer target = ipow(q, a);
  return ipow(8 * next, b) >= target && ipow(4 * next, b) <= target;
}

Integer next_term(const SequenceSpec& spec, const Integer& q, std::size_t j) {
  return std::visit(
      [&](const auto& s) -> Integer {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PowerSequence>) {
          return floor_power(q, s.c);
        } else if constexpr (std::is_same_v<T, ContractiveSequence>) {
          Integer next = ceil_power_over_8(q, 1 + s.tau);
          if (!in_contractive_window(q, next, s.tau)) {
            throw SequenceError(j + 1, "no integer in [q^{1+tau}/8, q^{1+tau}/4] for q = " +
                                           q.get_str() + "; increase q1");
          }
          return next;
        } else if constexpr (std::is_same_v<T, AlternatingSequence>) {
          if (j % 2 == 1) return floor_power(q, s.eta);
          Integer next = q * ceil_power_over_8(q, s.tau);
          if (!in_contractive_window(q, next, s.tau)) {
            throw SequenceError(j + 1, "divisible step q*ceil(q^tau/8) leaves the window for q = " +
                                           q.get_str() + "; increase q1");
          }
          return next;
        } else {
          throw PreconditionError("explicit sequences have no generator");
        }
      },
      spec);
}

}  // namespace

std::string describe(const SequenceSpec& spec) {
  std::ostringstream out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExplicitSequence>) {
          out << "explicit(";
          for (std::size_t i = 0; i < s.terms.size(); ++i) out << (i ? "," : "") << s.terms[i];
          out << ")";
        } else if constexpr (std::is_same_v<T, PowerSequence>) {
          out << "power(" << s.q1 << "," << s.c << ")";
        } else if constexpr (std::is_same_v<T, ContractiveSequence>) {
          out << "remark1_contractive(" << s.q1 << "," << s.tau << ")";
        } else {
          out << "remark1_alternating(" << s.q1 << "," << s.tau << "," << s.eta << ")";
        }
      },
      spec);
  return out.str();
}

QSequence generate(const SequenceSpec& spec, std::size_t J) {
  if (J < 1) throw PreconditionError("depth J must be >= 1");
  if (const auto* e = std::get_if<ExplicitSequence>(&spec)) {
    if (e->terms.size() < J) {
      throw SequenceError(e->terms.size() + 1, "explicit sequence shorter than the depth");
    }
    return QSequence(std::vector<Integer>(e->terms.begin(), e->terms.begin() + static_cast<long>(J)));
  }
  const Integer q1 = std::visit(
      [](const auto& s) -> Integer {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, ExplicitSequence>) {
          return s.terms.front();
        } else {
          return s.q1;
        }
      },
      spec);
  if (const auto* p = std::get_if<PowerSequence>(&spec); p && p->c <= 1) {
    throw PreconditionError("power sequence needs c > 1");
  }
  if (const auto* a = std::get_if<AlternatingSequence>(&spec); a && a->eta <= 1 + a->tau) {
    throw PreconditionError("alternating sequence needs eta > 1 + tau");
  }
  if (q1 < 2) throw SequenceError(1, "q1 must be >= 2");

  std::vector<Integer> terms{q1};
  terms.reserve(J);
  while (terms.size() < J) {
    const std::size_t j = terms.size();
    Integer next = next_term(spec, terms.back(), j);
    if (next <= terms.back()) throw SequenceError(j + 1, "generated term does not increase");
    terms.push_back(std::move(next));
  }
  return QSequence(std::move(terms));
}

ExponentStats exponent_stats(const QSequence& qs, unsigned prec) {
  ExponentStats stats;
  Integer product = 1;
  for (std::size_t j = 1; j < qs.size(); ++j) {
    stats.h_list.push_back(log_ratio(qs.q(j + 1), qs.q(j), prec));
    product *= qs.q(j);
    stats.alpha_list.push_back(log_ratio(product, qs.q(j + 1), prec));
  }
  for (const auto& h : stats.h_list) {
    stats.h_prefix = stats.h_prefix ? min(*stats.h_prefix, h) : h;
  }
  if (!stats.alpha_list.empty()) stats.alpha_last = stats.alpha_list.back();
  return stats;
}

std::string to_string(RegimeStatus s) {
  switch (s) {
    case RegimeStatus::pass: return "pass";
    case RegimeStatus::fail: return "fail";
    case RegimeStatus::indeterminate: return "indeterminate";
  }
  return "?";
}

RegimeCheck validate_regime(const QSequence& qs, const Rational& tau, unsigned prec) {
  const Rational bound = tau + 1;
  RegimeCheck result;
  for (std::size_t j = 1; j < qs.size(); ++j) {
    const Enclosure h = log_ratio(qs.q(j + 1), qs.q(j), prec);
    switch (compare(h, bound)) {
      case Order::greater:
        continue;
      case Order::less:
      case Order::equal:
        return {RegimeStatus::fail, j};
      case Order::unknown:
        if (result.status == RegimeStatus::pass) result = {RegimeStatus::indeterminate, j};
        continue;
    }
  }
  return result;
}

Reindexed reindex_even(const QSequence& qs, const Rational& tau) {
  if (qs.size() < 2) throw PreconditionError("reindex_even needs at least two terms");
  std::vector<Integer> even;
  for (std::size_t j = 2; j <= qs.size(); j += 2) even.push_back(qs.q(j));
  return {QSequence(std::move(even)), tau * (2 + tau)};
}

}  // namespace liminf
