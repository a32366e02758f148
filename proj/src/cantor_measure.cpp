#include "liminf/cantor_measure.hpp"

#include <algorithm>
#include <optional>

#include <gmpxx.h>

#include "cantor_detail.hpp"
#include "level_sets_detail.hpp"

namespace liminf {

CantorTree::CantorTree(QSequence qs, LevelParams params, std::size_t depth, unsigned prec,
                       std::size_t node_budget, Exec exec)
    : qs_(std::move(qs)), params_(std::move(params)), depth_(depth), prec_(prec),
      node_budget_(node_budget) {
  params_.validate();
  if (depth_ < 1 || depth_ > qs_.size()) throw PreconditionError("depth J must satisfy 1 <= J <= |qs|");

  size_1d_.push_back(Integer(1));
  for (std::size_t k = 1; k <= depth_; ++k) {
    Integer m = k == 1 ? qs_.q(1) : cantor_branching(qs_.q(k - 1), qs_.q(k), params_.tau);
    if (m == 0) {
      throw RegimeViolation(k, "floor(q_k / q_{k-1}^{1+tau}) = 0 for q_k = " + qs_.q(k).get_str());
    }
    size_1d_.push_back(size_1d_.back() * m);
    m_.push_back(std::move(m));
    rho_.push_back(detail::to_bounds(params_.radius_of(qs_.q(k), prec_)));
  }

  // A level fits when every closed window of admissible centres has length
  // at least m_k / q_k, so no parent needs an individual check.
  level_fits_.assign(depth_ + 1, true);
  for (std::size_t k = 2; k <= depth_; ++k) {
    const Rational room = 2 * Rational(qs_.q(k)) * (rho_[k - 2].lo - rho_[k - 1].hi);
    level_fits_[k] = room >= 0 && floor_q(room) >= m_[k - 1];
  }

  Integer total = 0;
  for (std::size_t k = 1; k <= depth_; ++k) {
    total += level_size(k);
    if (total > node_budget_) break;
    explicit_depth_ = k;
  }

  explicit_.assign(dimension(), {});
  for (std::size_t c = 0; c < dimension(); ++c) {
    auto& levels = explicit_[c];
    levels.push_back({Integer(0)});
    if (explicit_depth_ == 0) continue;
    std::vector<Integer> first(to_ulong_checked(qs_.q(1), "q_1"));
    for (std::size_t p = 0; p < first.size(); ++p) first[p] = Integer(static_cast<unsigned long>(p));
    levels.push_back(std::move(first));
    for (std::size_t k = 2; k <= explicit_depth_; ++k) {
      levels.push_back(exec == Exec::parallel ? expand_parallel(k, levels.back(), c)
                                              : expand(k, levels.back(), c));
    }
  }
}

Integer CantorTree::branching(std::size_t k) const {
  return ipow(branching_1d(k), static_cast<unsigned long>(dimension()));
}

Integer CantorTree::level_size(std::size_t k) const {
  return ipow(level_size_1d(k), static_cast<unsigned long>(dimension()));
}

const std::vector<Integer>& CantorTree::explicit_level(std::size_t coord, std::size_t k) const {
  if (k > explicit_depth_) throw PreconditionError("level " + std::to_string(k) + " is not explicit");
  return explicit_.at(coord).at(k);
}

Rational CantorTree::center(std::size_t k, const Integer& residue, std::size_t coord) const {
  return (Rational(residue) + params_.theta.at(coord)) / qs_.q(k);
}

Integer CantorTree::first_child(std::size_t k, const Integer& parent, std::size_t coord) const {
  if (k == 1) return Integer(0);
  const Rational c = center(k - 1, parent, coord);
  return ceil_q(qs_.q(k) * (c - rho_[k - 2].lo + rho_[k - 1].hi) - params_.theta[coord]);
}

void CantorTree::check_fit(std::size_t k, const Integer& parent, std::size_t coord) const {
  if (k == 1 || level_fits_[k]) return;
  const Integer last = first_child(k, parent, coord) + m_[k - 1] - 1;
  if (center(k, last, coord) + rho_[k - 1].hi > center(k - 1, parent, coord) + rho_[k - 2].lo) {
    throw RegimeViolation(k, "a parent box holds fewer than " + m_[k - 1].get_str() +
                                 " contained children");
  }
}

std::vector<Integer> CantorTree::expand(std::size_t k, const std::vector<Integer>& parents,
                                        std::size_t coord) const {
  const auto m = to_ulong_checked(m_[k - 1], "branching");
  std::vector<Integer> out(parents.size() * m);
  for (std::size_t i = 0; i < parents.size(); ++i) {
    detail::fill_children(*this, k, parents[i], coord, m, out.begin() + static_cast<std::ptrdiff_t>(i * m));
  }
  return out;
}

CantorNode CantorTree::root() const { return {0, std::vector<Integer>(dimension(), Integer(0))}; }

std::vector<CantorNode> CantorTree::children(const CantorNode& node) const {
  const std::size_t k = node.level + 1;
  if (k > depth_) return {};
  const Integer count = branching(k);
  if (count > node_budget_) {
    throw BudgetExceeded("node at level " + std::to_string(node.level) + " has " + count.get_str() +
                             " children (budget " + std::to_string(node_budget_) + ")",
                         k);
  }
  const auto m = to_ulong_checked(m_[k - 1], "branching");
  std::vector<Integer> first(dimension());
  for (std::size_t c = 0; c < dimension(); ++c) {
    check_fit(k, node.residues[c], c);
    first[c] = first_child(k, node.residues[c], c);
  }
  std::vector<CantorNode> out;
  out.reserve(count.get_ui());
  std::vector<unsigned long> digit(dimension(), 0);
  for (std::size_t n = 0; n < count.get_ui(); ++n) {
    CantorNode child{k, {}};
    child.residues.reserve(dimension());
    for (std::size_t c = 0; c < dimension(); ++c) child.residues.push_back(first[c] + digit[c]);
    out.push_back(std::move(child));
    for (std::size_t c = dimension(); c-- > 0;) {
      if (++digit[c] < m) break;
      digit[c] = 0;
    }
  }
  return out;
}

Integer CantorTree::residue_at(std::size_t k, const Integer& index, std::size_t coord) const {
  if (index < 0 || index >= level_size_1d(k)) throw PreconditionError("node index out of range");
  if (k <= explicit_depth_) return explicit_[coord][k][index.get_ui()];
  std::vector<Integer> digits(k);
  Integer rest = index;
  for (std::size_t j = k; j >= 1; --j) {
    mpz_fdiv_qr(rest.get_mpz_t(), digits[j - 1].get_mpz_t(), rest.get_mpz_t(), m_[j - 1].get_mpz_t());
  }
  Integer p = digits[0];
  for (std::size_t j = 2; j <= k; ++j) {
    check_fit(j, p, coord);
    p = first_child(j, p, coord) + digits[j - 1];
  }
  return p;
}

CantorTree build_tree(const QSequence& qs, const LevelParams& params, std::size_t J, unsigned prec,
                      std::size_t node_budget, Exec exec) {
  return CantorTree(qs, params, J, prec, node_budget, exec);
}

Rational node_measure(const CantorTree& tree, const CantorNode& node) {
  return Rational(1) / Rational(tree.level_size(node.level));
}

namespace {

struct LeafCount {
  Integer inside;
  Integer touching;
};

Rational mod1(const Rational& x) { return x - floor_q(x); }

// Level-J boxes under residues [first, last] at level k that sit inside, or
// possibly meet, the closed interval [a, b].
void visit(const CantorTree& t, std::size_t k, const Integer& first, const Integer& last,
           const Rational& a, const Rational& b, std::size_t coord, LeafCount& acc) {
  const Integer& q = t.sequence().q(k);
  const Rational& theta = t.params().theta[coord];
  const Rational& rho = t.half_width(k).hi;
  const Integer t0 = std::max<Integer>(first, floor_q(q * (a - rho) - theta) + 1);
  const Integer t1 = std::min<Integer>(last, ceil_q(q * (b + rho) - theta) - 1);
  if (t1 < t0) return;
  Integer s0 = std::max<Integer>(t0, ceil_q(q * (a + rho) - theta));
  Integer s1 = std::min<Integer>(t1, floor_q(q * (b - rho) - theta));
  if (s1 < s0) {
    s0 = t1 + 1;
    s1 = t1;
  }
  const Integer leaves = t.level_size_1d(t.depth()) / t.level_size_1d(k);
  const Integer inside = s1 - s0 + 1;
  acc.inside += inside * leaves;
  if (k == t.depth()) {
    acc.touching += t1 - t0 + 1;
    return;
  }
  acc.touching += inside * leaves;
  const Integer partial = (t1 - t0 + 1) - inside;
  if (partial > 4096) throw BudgetExceeded("ball query touches too many boundary boxes", k);
  const Integer m = t.branching_1d(k + 1);
  auto descend = [&](const Integer& p) {
    const Integer f = t.first_child(k + 1, p, coord);
    visit(t, k + 1, f, f + m - 1, a, b, coord, acc);
  };
  for (Integer p = t0; p < s0; ++p) descend(p);
  for (Integer p = s1 + 1; p <= t1; ++p) descend(p);
}

LeafCount count_leaves(const CantorTree& t, const Rational& x, const Rational& r, std::size_t coord) {
  LeafCount acc;
  const Integer last = t.sequence().q(1) - 1;
  for (int n = -2; n <= 2; ++n) {
    visit(t, 1, Integer(0), last, x - r + n, x + r + n, coord, acc);
  }
  return acc;
}

}  // namespace

MeasureRange ball_measure(const CantorTree& tree, const Ball& ball) {
  if (ball.center.size() != tree.dimension()) throw PreconditionError("ball dimension mismatch");
  if (ball.radius.lo().sign() <= 0) throw PreconditionError("ball radius must be positive");
  const Rational half(1, 2);
  const Rational r_lo = ball.radius.lo().to_rational();
  const Rational r_hi = ball.radius.hi().to_rational();
  const Integer& leaves = tree.level_size_1d(tree.depth());
  MeasureRange out{Rational(1), Rational(1)};
  for (std::size_t c = 0; c < tree.dimension(); ++c) {
    const Rational x = mod1(ball.center[c]);
    Rational lo = 1;
    Rational hi = 1;
    if (r_lo < half) lo = Rational(count_leaves(tree, x, r_lo, c).inside) / leaves;
    if (r_hi < half) {
      const Integer touching = count_leaves(tree, x, r_hi, c).touching;
      hi = Rational(std::min<Integer>(touching, leaves)) / leaves;
    }
    out.lo *= lo;
    out.hi *= hi;
  }
  return out;
}

Ball sample_ball(const CantorTree& tree, std::uint64_t seed, std::size_t i) {
  gmp_randclass rng(gmp_randinit_default);
  Integer s = Integer(static_cast<unsigned long>(seed >> 32));
  s = (s << 32) + static_cast<unsigned long>(seed & 0xffffffffu);
  rng.seed((s << 64) + static_cast<unsigned long>(i));

  const std::size_t J = tree.depth();
  const Bounds& rho = tree.half_width(J);
  Ball ball;
  for (std::size_t c = 0; c < tree.dimension(); ++c) {
    const Integer index = rng.get_z_range(tree.level_size_1d(J));
    Rational x = tree.center(J, tree.residue_at(J, index, c), c);
    if (rng.get_z_bits(1) == 1) {
      // uniform offset in (-rho, rho), 32 bits
      const Integer u = 2 * rng.get_z_bits(32) + 1;
      Rational off(u - (Integer(1) << 32), Integer(1) << 32);
      x += off * rho.lo;
    }
    ball.center.push_back(mod1(x));
  }
  // r = (1 + u) 2^{-e-1}: exponent uniform over [1, E] with 2^E >= 8 q_J
  const std::size_t E = bit_length(Integer(8 * tree.sequence().q(J) - 1));
  const Integer e = rng.get_z_range(Integer(static_cast<unsigned long>(E)));
  const Integer u = rng.get_z_bits(32);
  const DirectedReal r((Integer(1) << 32) + u, -static_cast<long>(e.get_ui()) - 33, Rounding::exact);
  ball.radius = Enclosure::exact(r, tree.precision());
  return ball;
}

HolderSample evaluate_ball(const CantorTree& tree, const Ball& ball, const Rational& s) {
  const unsigned prec = tree.precision();
  HolderSample out{ball, ball_measure(tree, ball), {}};
  const Enclosure pw_lo = pow_rational(ball.radius.lo().to_rational(), s, prec);
  const Enclosure pw_hi = pow_rational(ball.radius.hi().to_rational(), s, prec);
  const Rational lo = out.measure.lo / pw_hi.hi().to_rational();
  const Rational hi = out.measure.hi / pw_lo.lo().to_rational();
  out.ratio = Enclosure(DirectedReal::from_rational(lo, prec, Rounding::down),
                        DirectedReal::from_rational(hi, prec, Rounding::up), prec);
  return out;
}

namespace detail {

void check_holder_args(const CantorTree& tree, const Rational& s, std::size_t n) {
  if (s <= 0 || s >= static_cast<unsigned long>(tree.dimension())) {
    throw PreconditionError("holder exponent s must satisfy 0 < s < d");
  }
  if (n < 1) throw PreconditionError("sample count must be >= 1");
}

HolderCertificate reduce_samples(const Rational& s, std::uint64_t seed,
                                 std::vector<HolderSample>& samples) {
  HolderCertificate cert;
  cert.s = s;
  cert.n = samples.size();
  cert.seed = seed;
  std::size_t best = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].ratio.hi() > samples[best].ratio.hi()) best = i;
  }
  cert.max_ratio = samples[best].ratio;
  cert.worst_ball = std::move(samples[best].ball);
  cert.worst_index = best;
  return cert;
}

}  // namespace detail

HolderCertificate holder_certificate_serial(const CantorTree& tree, const Rational& s,
                                            std::size_t n, std::uint64_t seed) {
  detail::check_holder_args(tree, s, n);
  std::vector<HolderSample> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) samples.push_back(evaluate_ball(tree, sample_ball(tree, seed, i), s));
  return detail::reduce_samples(s, seed, samples);
}

HolderCertificate holder_certificate(const CantorTree& tree, const Rational& s, std::size_t n,
                                     std::uint64_t seed, Exec exec) {
  return exec == Exec::parallel ? holder_certificate_parallel(tree, s, n, seed)
                                : holder_certificate_serial(tree, s, n, seed);
}

namespace {

Rational gap_between(const Rational& x, const Rational& y, const Rational& rho) {
  Rational d = abs(x - y);
  d = std::min<Rational>(d, 1 - d);
  return d - 2 * rho;
}

}  // namespace

Rational min_separation(const CantorTree& tree, std::size_t k) {
  if (k < 1 || k > tree.depth()) throw PreconditionError("level out of range");
  const Rational& rho = tree.half_width(k).hi;
  std::optional<Rational> best;
  for (std::size_t c = 0; c < tree.dimension(); ++c) {
    const auto& level = tree.explicit_level(c, k);
    std::vector<Rational> xs;
    xs.reserve(level.size());
    for (const auto& p : level) xs.push_back(mod1(tree.center(k, p, c)));
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const Rational g = gap_between(xs[i], xs[(i + 1) % xs.size()], rho);
      if (xs.size() > 1 && (!best || g < *best)) best = g;
    }
  }
  if (!best) throw PreconditionError("a single box has no separation");
  return *best;
}

Rational sampled_separation(const CantorTree& tree, std::size_t k, std::size_t n,
                            std::uint64_t seed) {
  if (k < 1 || k > tree.depth()) throw PreconditionError("level out of range");
  const Rational& rho = tree.half_width(k).hi;
  const Integer& size = tree.level_size_1d(k);
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(static_cast<unsigned long>(seed));
  std::optional<Rational> best;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < tree.dimension(); ++c) {
      const Integer a = rng.get_z_range(size);
      const Integer b = (a + 1) % size;
      const Rational g = gap_between(mod1(tree.center(k, tree.residue_at(k, a, c), c)),
                                     mod1(tree.center(k, tree.residue_at(k, b, c), c)), rho);
      if (!best || g < *best) best = g;
    }
  }
  if (!best) throw PreconditionError("no samples drawn");
  return *best;
}

}  // namespace liminf
