#include <doctest.h>

#include <random>

#include "liminf/level_sets.hpp"

using namespace liminf;

namespace {

LevelParams constant_radius(const Rational& r, const Rational& theta = 0) {
  LevelParams p;
  p.theta = {theta};
  p.tau = 1;
  p.radius = GeneralRadius{[r](const Integer&, unsigned prec) { return Enclosure::of(r, prec); }, "const"};
  return p;
}

Arc exact_arc(const Rational& a, const Rational& b) { return {{a, a}, {b, b}, true}; }

QSequence seq(std::initializer_list<long> xs) {
  std::vector<Integer> v;
  for (long x : xs) v.emplace_back(x);
  return QSequence(v);
}

// Components of E_1 ∩ E_2 by scanning every pair of open arcs on the torus.
long brute_force_pairs(long q1, long q2, const Rational& r1, const Rational& r2) {
  long count = 0;
  for (long p2 = 0; p2 < q2; ++p2) {
    const Rational c2(p2, q2);
    for (long p1 = 0; p1 < q1; ++p1) {
      for (int n = -1; n <= 1; ++n) {
        const Rational c1 = Rational(p1, q1) + n;
        const Rational lo = std::max<Rational>(c1 - r1, c2 - r2);
        const Rational hi = std::min<Rational>(c1 + r1, c2 + r2);
        if (lo < hi) ++count;
      }
    }
  }
  return count;
}

// x in E_q exactly when some (p + theta)/q is within q^{-1-tau}; tau = 1/2 so
// compare squares: (x - c)^2 q^3 < 1.
bool member_half(const Rational& x, const Integer& q, const Rational& theta) {
  const Integer p0 = floor_q(x * q - theta);
  for (Integer p = p0 - 1; p <= p0 + 2; ++p) {
    for (int n = -1; n <= 1; ++n) {
      const Rational d = x - ((Rational(p) + theta) / q + n);
      if (d * d * Rational(q * q * q) < 1) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("build_level examples") {
  const auto params = LevelParams::homogeneous(Rational(1), 1);
  const auto e5 = build_level(Integer(5), params, 0, 64);
  CHECK(e5.components() == CertifiedCount{Integer(5), Integer(5)});
  // 1/25 is not dyadic, so lengths are bracketed rather than exact
  const Rational slack(1, Integer(1) << 60);
  CHECK(e5.inner_length() <= Rational(2, 5));
  CHECK(e5.outer_length() >= Rational(2, 5));
  CHECK(e5.outer_length() - e5.inner_length() <= slack);
  for (const auto& iv : e5.outer()) {
    CHECK(iv.length() >= Rational(2, 25));
    CHECK(iv.length() - Rational(2, 25) <= slack);
  }

  const auto full = build_level(Integer(1), constant_radius(Rational(1), Rational(1, 2)), 0, 64);
  CHECK(full.is_full());
  CHECK(full.components() == CertifiedCount{Integer(1), Integer(1)});
  CHECK(full.outer_length() == 1);

  const auto two = build_level(Integer(2), constant_radius(Rational(1, 4)), 0, 64);
  CHECK(two.components() == CertifiedCount{Integer(2), Integer(2)});
  for (const auto& iv : two.outer()) CHECK(iv.length() == Rational(1, 2));
  CHECK(level_shape(Integer(2), Enclosure::of(Rational(1, 4))) == LevelShape::touching);
  CHECK(level_shape(Integer(5), Enclosure::of(Rational(1, 25))) == LevelShape::disjoint);
}

TEST_CASE("intersect examples") {
  const TorusIntervalSet b({exact_arc(Rational(1, 5), Rational(11, 20))});
  CHECK(intersect(TorusIntervalSet::full(), b) == b);

  const TorusIntervalSet a({exact_arc(Rational(1, 10), Rational(3, 10)), exact_arc(Rational(1, 2), Rational(3, 5))});
  const auto ab = intersect(a, b);
  const std::vector<OpenInterval> expected{{Rational(1, 5), Rational(3, 10)}, {Rational(1, 2), Rational(11, 20)}};
  CHECK(ab.outer() == expected);
  CHECK(ab.inner() == expected);

  const TorusIntervalSet c({exact_arc(Rational(7, 10), Rational(4, 5))});
  CHECK(intersect(a, c).is_empty());
}

TEST_CASE("intersect handles arcs that wrap past 1") {
  const TorusIntervalSet a({exact_arc(Rational(9, 10), Rational(11, 10))});
  const TorusIntervalSet b({exact_arc(Rational(0), Rational(1, 20)), exact_arc(Rational(19, 20), Rational(1))});
  const auto ab = intersect(a, b);
  CHECK(ab.components().max == 2);
  CHECK(ab.outer_length() == Rational(1, 10));
}

TEST_CASE("prefix_intersection examples") {
  const auto params = LevelParams::homogeneous(Rational(1), 1);
  const auto r = prefix_intersection(seq({3, 81}), params, 0, 2, 64);
  const auto count = r.levels.back().count;
  CHECK(count.is_point());
  CHECK(count.min >= 48);
  CHECK(count.max <= 60);
  CHECK(count.min == brute_force_pairs(3, 81, Rational(1, 9), Rational(1, 6561)));
  CHECK(count.min == 57);

  CHECK(prefix_intersection(seq({3}), params, 0, 1, 64).levels.back().count.min == 3);
  CHECK(prefix_intersection(seq({64, 512}), params, 0, 2, 64).levels.back().count.max <= 64);
}

TEST_CASE("per-parent counts respect the counting bounds") {
  // each level-1 arc of length 2/9 holds between (2/9) 81 - 2 and (2/9) 81 + 2 centres
  for (long p1 = 0; p1 < 3; ++p1) {
    const Rational c(p1, 3);
    Integer n = 0;
    for (int s = -1; s <= 1; ++s) {
      const Rational a = c - Rational(1, 9) + s;
      const Rational b = c + Rational(1, 9) + s;
      const Rational lo = std::max<Rational>(a, 0);
      const Rational hi = std::min<Rational>(b, 1);
      if (lo < hi) n += count_shifted_rationals(lo, hi, 0, Integer(81));
    }
    CHECK(n >= 16);
    CHECK(n <= 20);
  }
}

TEST_CASE("count_shifted_rationals examples") {
  CHECK(count_shifted_rationals(0, 1, 0, Integer(5)) == 4);
  CHECK(count_shifted_rationals(Rational(1, 10), Rational(1, 2), Rational(1, 4), Integer(10)) == 4);
  CHECK(count_shifted_rationals(Rational(1, 3), Rational(1, 3) + Rational(1, 100), 0, Integer(10)) == 0);
}

TEST_CASE("counting bounds hold on random instances") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> qd(1, 10000), nd(0, 100000);
  for (int i = 0; i < 1000; ++i) {
    const Integer q(qd(rng));
    Rational a(nd(rng), 100000), b(nd(rng), 100000);
    if (a > b) std::swap(a, b);
    if (a == b) b = a + Rational(1, 100000);
    if (b > 1) continue;
    const Rational theta(nd(rng) % 1000, 1000);
    const Integer got = count_shifted_rationals(a, b, theta, q);
    Integer brute = 0;
    for (long p = 0; p < q.get_si(); ++p) {
      const Rational x = (Rational(p) + theta) / q;
      if (a < x && x < b) ++brute;
    }
    CHECK(got == brute);
    CHECK(Rational(got) >= (b - a) * q - 2);
    CHECK(Rational(got) <= (b - a) * q + 2);
  }
}

TEST_CASE("inner and outer sandwich the true set (irrational radii)") {
  LevelParams params = LevelParams::homogeneous(Rational(1, 2), 1);
  params.theta[0] = Rational(1, 7);
  const auto qs = seq({3, 50});
  for (unsigned prec : {12u, 40u, 128u}) {
    const auto set = prefix_intersection(qs, params, 0, 2, prec).set;
    std::mt19937_64 rng(prec);
    std::uniform_int_distribution<long> d(0, 999999);
    std::vector<Rational> probes;
    for (int i = 0; i < 3000; ++i) probes.emplace_back(d(rng), 1000000);
    // probes hugging every certified endpoint
    for (const auto& a : set.arcs()) {
      for (const Rational& e : {a.left.lo, a.left.hi, a.right.lo, a.right.hi}) {
        for (const Rational& eps : {Rational(0), Rational(1, 1000000000), Rational(-1, 1000000000)}) {
          Rational x = e + eps;
          probes.push_back(x - floor_q(x));
        }
      }
    }
    for (const auto& x : probes) {
      const bool truth = member_half(x, qs.q(1), params.theta[0]) && member_half(x, qs.q(2), params.theta[0]);
      if (set.in_inner(x)) CHECK(truth);
      if (truth) CHECK(set.in_outer(x));
    }
    const auto c = set.components();
    CHECK(c.min <= c.max);
    CHECK(set.inner_length() <= set.outer_length());
  }
}

TEST_CASE("two-dimensional box counts are products of the factors") {
  const auto params = LevelParams::homogeneous(Rational(1), 2);
  const auto prod = prefix_intersection_product(seq({3, 81}), params, 2, 64);
  const auto one = prefix_intersection(seq({3, 81}), LevelParams::homogeneous(Rational(1), 1), 0, 2, 64);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(prod.levels[j].boxes.min == one.levels[j].count.min * one.levels[j].count.min);
    CHECK(prod.levels[j].boxes.max == one.levels[j].count.max * one.levels[j].count.max);
  }
  LevelParams mixed = params;
  mixed.theta = {Rational(0), Rational(1, 2)};
  const auto m = prefix_intersection_product(seq({3, 81}), mixed, 2, 64);
  CHECK(m.levels[1].boxes.min == m.coords[0].levels[1].count.min * m.coords[1].levels[1].count.min);
}

TEST_CASE("components of one level are separated by 1/q - 2r") {
  for (long q : {3L, 7L, 50L, 81L}) {
    for (const Rational tau : {Rational(1), Rational(1, 2), Rational(2)}) {
      LevelParams params = LevelParams::homogeneous(tau, 1);
      params.theta[0] = Rational(2, 9);
      const auto r = params.radius_of(Integer(q), 64);
      const auto set = build_level(Integer(q), params, 0, 64);
      const auto st = level_stats(1, set);
      CHECK(st.min_gap >= Rational(1, q) - 2 * r.hi().to_rational());
    }
  }
}

TEST_CASE("parallel refinement matches the serial reference") {
  LevelParams params = LevelParams::homogeneous(Rational(1, 2), 1);
  params.theta[0] = Rational(1, 3);
  const auto qs = seq({10, 2000, 220000});
  const auto serial = prefix_intersection(qs, params, 0, 3, 96, kDefaultComponentBudget, Exec::serial);
  const auto parallel = prefix_intersection(qs, params, 0, 3, 96, kDefaultComponentBudget, Exec::parallel);
  CHECK(serial.set.arcs().size() > 64);
  CHECK(serial.set == parallel.set);
  CHECK(serial.levels == parallel.levels);
}

TEST_CASE("component budget aborts with the level reached") {
  const auto params = LevelParams::homogeneous(Rational(1), 1);
  try {
    prefix_intersection(seq({3, 81}), params, 0, 2, 64, 40);
    FAIL("expected budget exhaustion");
  } catch (const BudgetExceeded& e) {
    CHECK(e.level() == 2);
  }
}
