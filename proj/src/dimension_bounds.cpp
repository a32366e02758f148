#include "liminf/dimension_bounds.hpp"

namespace liminf {

TheoreticalDimension theoretical_dimension(const Rational& tau, const Enclosure& alpha,
                                           std::size_t d) {
  if (tau <= 0) throw PreconditionError("tau must be positive");
  if (d < 1) throw PreconditionError("d must be >= 1");
  const unsigned p = alpha.precision();
  const Enclosure one = Enclosure::exact(Integer(1), p);
  Enclosure v = Enclosure::exact(Integer(static_cast<unsigned long>(d)), p) *
                (one - Enclosure::of(tau, p) * alpha) / Enclosure::of(tau + 1, p);
  TheoreticalDimension out{v, false};
  if (v.lo().sign() < 0) {
    out.clamped = true;
    const DirectedReal zero;
    out.value = Enclosure(zero, v.hi().sign() < 0 ? zero : v.hi(), p);
  }
  return out;
}

Rational theoretical_dimension(const Rational& tau, const Rational& alpha, std::size_t d) {
  if (tau <= 0) throw PreconditionError("tau must be positive");
  Rational v = Rational(static_cast<unsigned long>(d)) * (1 - tau * alpha) / (tau + 1);
  return v < 0 ? Rational(0) : v;
}

Integer cantor_branching(const Integer& q_prev, const Integer& q, const Rational& tau) {
  const Rational e = 1 + tau;
  const unsigned long u = to_ulong_checked(e.get_num(), "1 + tau numerator");
  const unsigned long v = to_ulong_checked(e.get_den(), "1 + tau denominator");
  Integer ratio;
  const Integer num = ipow(q, v);
  const Integer den = ipow(q_prev, u);
  mpz_fdiv_q(ratio.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return iroot(ratio, v).first;
}

namespace {

void check_depth(const QSequence& qs, std::size_t d, std::size_t J) {
  if (J < 1 || J > qs.size()) throw PreconditionError("depth J must satisfy 1 <= J <= |qs|");
  if (d < 1) throw PreconditionError("d must be >= 1");
}

Enclosure log2_range(const CertifiedCount& n, unsigned prec) {
  if (n.min == n.max) return log2_enclosure(n.min, prec);
  return {log2_enclosure(n.min, prec).lo(), log2_enclosure(n.max, prec).hi(), prec};
}

}  // namespace

Enclosure CoverReport::s_cost(const Rational& s, unsigned prec) const {
  const Enclosure lo_pow = pow_rational(side.lo().to_rational(), s, prec);
  const Enclosure hi_pow = pow_rational(side.hi().to_rational(), s, prec);
  const Enclosure lo = Enclosure::exact(N.min, prec) * Enclosure::exact(lo_pow.lo(), prec);
  const Enclosure hi = Enclosure::exact(N.max, prec) * Enclosure::exact(hi_pow.hi(), prec);
  return {lo.lo(), hi.hi(), prec};
}

CoverReport upper_cover_count(const QSequence& qs, const Rational& tau, std::size_t d,
                              std::size_t J, unsigned prec) {
  check_depth(qs, d, J);
  if (tau <= 0) throw PreconditionError("tau must be positive");
  const Rational e = -(1 + tau);

  // One coordinate: q_1 * prod (4 q_{k-1}^{-1-tau} q_k + 2). Exact when every
  // power is rational, otherwise enclosed with enough bits to keep the
  // integer part sharp.
  bool exact = true;
  Rational exact_product = Rational(qs.q(1));
  std::size_t bits = bit_length(qs.q(1));
  for (std::size_t k = 2; k <= J; ++k) bits += bit_length(qs.q(k)) + 3;
  const unsigned wp = prec + static_cast<unsigned>(bits) + 16;
  Enclosure product = Enclosure::exact(qs.q(1), wp);
  for (std::size_t k = 2; k <= J; ++k) {
    if (auto pw = pow_exact(Rational(qs.q(k - 1)), e); exact && pw) {
      exact_product *= 4 * *pw * qs.q(k) + 2;
      continue;
    }
    exact = false;
    const Enclosure factor = Enclosure::exact(Integer(4 * qs.q(k)), wp) * dir_pow(qs.q(k - 1), e, wp) +
                             Enclosure::exact(Integer(2), wp);
    product = product * factor;
  }

  CertifiedCount n1;
  if (exact) {
    n1 = {floor_q(exact_product), floor_q(exact_product)};
  } else {
    product = product * Enclosure::of(exact_product, wp);
    n1 = {product.floor_lo(), Integer(product.hi().to_rational() >= 0 ? floor_q(product.hi().to_rational()) : Integer(0))};
  }

  CoverReport report;
  report.J = J;
  const auto ud = static_cast<unsigned long>(d);
  report.N = {ipow(n1.min, ud), ipow(n1.max, ud)};
  report.side = Enclosure::exact(Integer(2), prec) * dir_pow(qs.q(J), e, prec);

  const Enclosure denom = Enclosure::of(1 + tau, prec + 8) * log2_enclosure(qs.q(J), prec + 8) -
                          Enclosure::exact(Integer(1), prec + 8);
  const Enclosure s1 = log2_range(n1, prec + 8) / denom;
  report.dim_estimate = (Enclosure::exact(Integer(ud), prec) * s1).at_precision(prec);
  report.regime_ok = validate_regime(qs.prefix(J), tau, prec).status == RegimeStatus::pass;
  return report;
}

Enclosure upper_dim_estimate(const QSequence& qs, const Rational& tau, std::size_t d,
                             std::size_t J, unsigned prec) {
  return upper_cover_count(qs, tau, d, J, prec).dim_estimate;
}

CantorCount lower_cantor_count(const QSequence& qs, const Rational& tau, std::size_t d,
                               std::size_t J, unsigned prec) {
  check_depth(qs, d, J);
  if (tau <= 0) throw PreconditionError("tau must be positive");
  Integer m1 = qs.q(1);
  for (std::size_t k = 2; k <= J; ++k) {
    const Integer b = cantor_branching(qs.q(k - 1), qs.q(k), tau);
    if (b == 0) {
      throw RegimeViolation(k, "floor(q_k / q_{k-1}^{1+tau}) = 0 for q_k = " + qs.q(k).get_str());
    }
    m1 *= b;
  }
  CantorCount out;
  out.J = J;
  out.M = ipow(m1, static_cast<unsigned long>(d));
  if (m1 < 2) {
    out.s_hat = Enclosure::exact(Integer(0), prec);
    return out;
  }
  const Enclosure s1 = log_ratio(m1, qs.q(J), prec + 8) / Enclosure::of(1 + tau, prec + 8);
  out.s_hat = (Enclosure::exact(Integer(static_cast<unsigned long>(d)), prec) * s1).at_precision(prec);
  return out;
}

}  // namespace liminf
