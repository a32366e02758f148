#include <doctest.h>

#include <random>

#include "liminf/cantor_measure.hpp"

using namespace liminf;

namespace {

QSequence seq(std::initializer_list<const char*> xs) {
  std::vector<Integer> v;
  for (const char* x : xs) v.emplace_back(x);
  return QSequence(v);
}

const LevelParams& unit_params(std::size_t d) {
  static const LevelParams one = LevelParams::homogeneous(Rational(1), 1);
  static const LevelParams two = LevelParams::homogeneous(Rational(1), 2);
  return d == 1 ? one : two;
}

QSequence power_family(std::size_t J) { return generate(PowerSequence{Integer(4), Rational(4)}, J); }

Rational torus_dist(const Rational& a, const Rational& b) {
  Rational t = a - b;
  t -= floor_q(t);
  return std::min<Rational>(t, 1 - t);
}

// Leaf boxes of a one-dimensional tree with exact half-width, classified
// against a closed ball on the circle by direct interval arithmetic.
MeasureRange brute_force_ball(const CantorTree& tree, const Rational& x, const Rational& r) {
  const std::size_t J = tree.depth();
  const Rational rho = tree.half_width(J).lo;
  const Rational leaf = Rational(1) / Rational(tree.level_size(J));
  MeasureRange m{0, 0};
  if (r >= Rational(1, 2)) return {1, 1};
  for (const auto& p : tree.explicit_level(0, J)) {
    const Rational dc = torus_dist(tree.center(J, p, 0), x);
    if (dc + rho <= r) m.lo += leaf;
    if (dc - rho <= r) m.hi += leaf;
  }
  return m;
}

}  // namespace

TEST_CASE("build_tree examples") {
  const auto t1 = build_tree(seq({"4", "256"}), unit_params(1), 2);
  CHECK(t1.level_size(1) == 4);
  CHECK(t1.branching(2) == 16);
  CHECK(t1.level_size(2) == 64);
  CHECK(t1.children(t1.root()).size() == 4);
  for (const auto& n : t1.children(t1.root())) CHECK(t1.children(n).size() == 16);

  const auto t2 = build_tree(seq({"4", "256"}), unit_params(2), 2);
  CHECK(t2.level_size(1) == 16);
  CHECK(t2.branching(2) == 256);
  CHECK(t2.children(t2.children(t2.root()).front()).size() == 256);

  CHECK_THROWS_AS(build_tree(seq({"4", "8"}), unit_params(1), 2), RegimeViolation);
}

TEST_CASE("node_measure examples") {
  const auto t = build_tree(seq({"4", "256"}), unit_params(1), 2);
  CHECK(node_measure(t, t.root()) == 1);
  const auto level1 = t.children(t.root());
  CHECK(node_measure(t, level1[0]) == Rational(1, 4));
  CHECK(node_measure(t, t.children(level1[2])[5]) == Rational(1, 64));
}

TEST_CASE("children measures add up to the parent and boxes nest") {
  for (std::size_t d : {1u, 2u}) {
    const auto t = build_tree(seq({"4", "256"}), unit_params(d), 2);
    std::vector<CantorNode> frontier{t.root()};
    while (!frontier.empty()) {
      const CantorNode node = frontier.back();
      frontier.pop_back();
      if (node.level == t.depth()) continue;
      const auto kids = t.children(node);
      Rational sum = 0;
      for (const auto& c : kids) {
        sum += node_measure(t, c);
        CHECK(node_measure(t, c) == node_measure(t, kids.front()));
        if (node.level >= 1) {
          for (std::size_t i = 0; i < d; ++i) {
            const Rational off = abs(t.center(c.level, c.residues[i], i) - t.center(node.level, node.residues[i], i));
            CHECK(off + t.half_width(c.level).hi <= t.half_width(node.level).lo);
          }
        }
        frontier.push_back(c);
      }
      CHECK(sum == node_measure(t, node));
    }
  }
}

TEST_CASE("additivity on the deeper power-family tree") {
  const auto t = build_tree(power_family(4), unit_params(1), 4);
  for (std::size_t k = 0; k < 2; ++k) {
    std::vector<CantorNode> level{t.root()};
    for (std::size_t j = 0; j < k; ++j) level = t.children(level.front());
    for (const auto& n : level) {
      Rational sum = 0;
      for (const auto& c : t.children(n)) sum += node_measure(t, c);
      CHECK(sum == node_measure(t, n));
    }
  }
}

TEST_CASE("ball_measure examples") {
  const auto t = build_tree(seq({"4", "256"}), unit_params(1), 2);
  CHECK(ball_measure(t, Ball{{Rational(1, 3)}, Enclosure::of(Rational(1))}) == MeasureRange{1, 1});

  const Integer leaf = t.explicit_level(0, 2)[17];
  const Rational c = t.center(2, leaf, 0);
  CHECK(ball_measure(t, Ball{{c}, Enclosure::of(Rational(1, 65536))}) == MeasureRange{Rational(1, 64), Rational(1, 64)});

  const Rational c1 = t.center(1, t.explicit_level(0, 1)[1], 0);
  const auto m = ball_measure(t, Ball{{c1}, Enclosure::of(Rational(1, 1024))});
  CHECK(m.hi <= Rational(1, 16));
  CHECK(m.lo <= m.hi);
}

TEST_CASE("ball_measure agrees with a brute-force leaf scan") {
  const auto t = build_tree(seq({"4", "256"}), unit_params(1), 2);
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> xd(0, (1L << 20) - 1), ed(2, 18), ud(1, 255);
  for (int i = 0; i < 2000; ++i) {
    Rational x(xd(rng), 1L << 20);
    if (i % 2 == 0) x = t.center(2, t.explicit_level(0, 2)[static_cast<std::size_t>(xd(rng) % 64)], 0);
    const Rational r = Rational(ud(rng), 256) / Rational(Integer(1) << ed(rng));
    const auto got = ball_measure(t, Ball{{x}, Enclosure::of(r)});
    const auto want = brute_force_ball(t, x - floor_q(x), r);
    CHECK(got.lo <= want.lo);
    CHECK(got.hi >= want.hi);
    CHECK(got == want);
  }
}

TEST_CASE("single leaf ball has ratio 2^-1.2") {
  const auto t = build_tree(seq({"4", "256"}), unit_params(1), 2);
  const Rational c = t.center(2, t.explicit_level(0, 2)[0], 0);
  const auto sample = evaluate_ball(t, Ball{{c}, Enclosure::of(Rational(1, 65536))}, Rational(3, 10));
  const Rational lo = sample.ratio.lo().to_rational();
  const Rational hi = sample.ratio.hi().to_rational();
  // ratio^10 = 2^-12
  Rational lo10 = 1, hi10 = 1;
  for (int i = 0; i < 10; ++i) {
    lo10 *= lo;
    hi10 *= hi;
  }
  CHECK(lo10 <= Rational(1, 4096));
  CHECK(hi10 >= Rational(1, 4096));
  CHECK(sample.ratio.approx() == doctest::Approx(0.43527528164806206).epsilon(1e-12));
}

TEST_CASE("Hölder certificate stays below 16^d when s is below the lower estimate") {
  const auto t = build_tree(power_family(4), unit_params(1), 4);
  for (const Rational s : {Rational(1, 10), Rational(1, 5), Rational(3, 10)}) {
    const auto cert = holder_certificate(t, s, 1000, 1);
    CHECK(cert.n == 1000);
    CHECK(cert.max_ratio.hi().to_rational() <= 16);
  }
  const auto t2 = build_tree(power_family(3), unit_params(2), 3);
  const auto cert2 = holder_certificate(t2, Rational(3, 5), 300, 4);
  CHECK(cert2.max_ratio.hi().to_rational() <= 256);
}

TEST_CASE("max ratio grows with depth for s above the bracket") {
  const Rational s(1, 2);
  const auto c3 = holder_certificate(build_tree(power_family(3), unit_params(1), 3), s, 500, 9);
  const auto c5 = holder_certificate(build_tree(power_family(5), unit_params(1), 5), s, 500, 9);
  MESSAGE("J=3 ratio " << c3.max_ratio.approx() << ", J=5 ratio " << c5.max_ratio.approx());
  CHECK(compare(c5.max_ratio, c3.max_ratio) == Order::greater);
}

TEST_CASE("sampling is a pure function of the seed") {
  const auto t = build_tree(power_family(4), unit_params(1), 4);
  for (std::size_t i = 0; i < 50; ++i) {
    const Ball a = sample_ball(t, 42, i);
    const Ball b = sample_ball(t, 42, i);
    CHECK(a.center == b.center);
    CHECK(a.radius == b.radius);
  }
  const auto x = holder_certificate(t, Rational(3, 10), 200, 42);
  const auto y = holder_certificate(t, Rational(3, 10), 200, 42);
  CHECK(x.max_ratio == y.max_ratio);
  CHECK(x.worst_index == y.worst_index);
  CHECK(sample_ball(t, 42, 0).center != sample_ball(t, 43, 0).center);
}

TEST_CASE("parallel kernels match the serial references") {
  const auto qs = seq({"4", "256", "4294967296"});
  const auto ts = build_tree(qs, unit_params(1), 3, 128, kDefaultNodeBudget, Exec::serial);
  const auto tp = build_tree(qs, unit_params(1), 3, 128, kDefaultNodeBudget, Exec::parallel);
  REQUIRE(ts.explicit_depth() == tp.explicit_depth());
  for (std::size_t k = 1; k <= ts.explicit_depth(); ++k) CHECK(ts.explicit_level(0, k) == tp.explicit_level(0, k));

  const auto t = build_tree(power_family(4), unit_params(1), 4);
  const auto s = holder_certificate_serial(t, Rational(3, 10), 400, 5);
  const auto p = holder_certificate_parallel(t, Rational(3, 10), 400, 5);
  CHECK(s.max_ratio == p.max_ratio);
  CHECK(s.worst_index == p.worst_index);
  CHECK(s.worst_ball.center == p.worst_ball.center);
}

TEST_CASE("level-k boxes are at least 1/(2 q_k) apart") {
  const auto qs = power_family(4);
  const auto t = build_tree(qs, unit_params(1), 4);
  REQUIRE(t.explicit_depth() >= 2);
  for (std::size_t k = 1; k <= 2; ++k) CHECK(min_separation(t, k) >= Rational(1) / Rational(2 * qs.q(k)));
  for (std::size_t k = 3; k <= 4; ++k) CHECK(sampled_separation(t, k, 2000, 3) >= Rational(1) / Rational(2 * qs.q(k)));

  const auto t2 = build_tree(seq({"4", "256"}), unit_params(2), 2);
  CHECK(min_separation(t2, 2) >= Rational(1, 512));
}

TEST_CASE("implicit levels agree with explicit ones") {
  const auto qs = power_family(3);
  const auto full = build_tree(qs, unit_params(1), 3, 128, kDefaultNodeBudget);
  const auto thin = build_tree(qs, unit_params(1), 3, 128, 60);
  CHECK(thin.explicit_depth() < full.explicit_depth());
  const std::size_t k = full.explicit_depth();
  const auto& level = full.explicit_level(0, k);
  for (std::size_t i = 0; i < level.size(); i += level.size() / 97 + 1) {
    CHECK(thin.residue_at(k, Integer(static_cast<unsigned long>(i)), 0) == level[i]);
  }
  CHECK_THROWS_AS(thin.children(thin.children(thin.children(thin.root()).front()).front()), BudgetExceeded);
}

TEST_CASE("leaf centres lie in the enumerated outer set") {
  for (const auto& qs : {seq({"4", "256"}), seq({"3", "81"}), seq({"5", "700"})}) {
    const auto t = build_tree(qs, unit_params(1), 2);
    const auto outer = prefix_intersection(qs, unit_params(1), 0, 2, 128).set;
    for (const auto& p : t.explicit_level(0, 2)) {
      Rational c = t.center(2, p, 0);
      c -= floor_q(c);
      CHECK(outer.in_outer(c));
    }
  }
}
