#include "liminf/level_sets.hpp"

#include <algorithm>

#include "level_sets_detail.hpp"

namespace liminf {

LevelParams LevelParams::homogeneous(const Rational& tau, std::size_t d) {
  LevelParams p;
  p.theta.assign(d, Rational(0));
  p.tau = tau;
  return p;
}

Enclosure LevelParams::radius_of(const Integer& q, unsigned prec) const {
  if (const auto* g = std::get_if<GeneralRadius>(&radius)) return g->psi(q, prec);
  return dir_pow(q, -(1 + tau), prec);
}

void LevelParams::validate() const {
  if (tau <= 0) throw PreconditionError("tau must be positive");
  if (theta.empty()) throw PreconditionError("dimension d must be >= 1");
  for (const auto& t : theta) {
    if (t < 0 || t >= 1) throw PreconditionError("theta entries must lie in [0,1)");
  }
}

CertifiedCount operator*(const CertifiedCount& a, const CertifiedCount& b) {
  return {a.min * b.min, a.max * b.max};
}

namespace {

void shift(Arc& a, const Rational& n) {
  a.left.lo += n;
  a.left.hi += n;
  a.right.lo += n;
  a.right.hi += n;
}

void normalize(Arc& a) {
  const Integer k = floor_q(a.left.lo);
  if (k != 0) shift(a, Rational(-k));
}

bool arc_less(const Arc& a, const Arc& b) {
  if (a.left.lo != b.left.lo) return a.left.lo < b.left.lo;
  return a.right.hi < b.right.hi;
}

}  // namespace

TorusIntervalSet::TorusIntervalSet(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {
  for (auto& a : arcs_) normalize(a);
  std::stable_sort(arcs_.begin(), arcs_.end(), arc_less);
}

TorusIntervalSet TorusIntervalSet::full() {
  TorusIntervalSet s;
  s.full_ = true;
  return s;
}

std::vector<OpenInterval> TorusIntervalSet::inner() const {
  if (full_) return {{Rational(0), Rational(1)}};
  std::vector<OpenInterval> out;
  for (const auto& a : arcs_) {
    if (a.certain) out.push_back({a.left.hi, a.right.lo});
  }
  return out;
}

std::vector<OpenInterval> TorusIntervalSet::outer() const {
  if (full_) return {{Rational(0), Rational(1)}};
  std::vector<OpenInterval> out;
  for (const auto& a : arcs_) {
    if (!out.empty() && a.left.lo < out.back().hi) {
      out.back().hi = std::max(out.back().hi, a.right.hi);
    } else {
      out.push_back({a.left.lo, a.right.hi});
    }
  }
  while (out.size() > 1 && out.back().hi - 1 > out.front().lo) {
    out.back().hi = std::max<Rational>(out.back().hi, out.front().hi + 1);
    out.erase(out.begin());
  }
  if (out.size() == 1 && out.front().length() > 1) out.front().hi = out.front().lo + 1;
  return out;
}

CertifiedCount TorusIntervalSet::components() const {
  if (full_) return {Integer(1), Integer(1)};
  const auto certain = std::count_if(arcs_.begin(), arcs_.end(), [](const Arc& a) { return a.certain; });
  return {Integer(static_cast<unsigned long>(certain)), Integer(static_cast<unsigned long>(arcs_.size()))};
}

Rational TorusIntervalSet::inner_length() const {
  Rational total = 0;
  for (const auto& i : inner()) total += i.length();
  return total;
}

Rational TorusIntervalSet::outer_length() const {
  Rational total = 0;
  for (const auto& i : outer()) total += i.length();
  return std::min(total, Rational(1));
}

namespace {

bool in_open(const Rational& lo, const Rational& hi, const Rational& x) {
  return (lo < x && x < hi) || (lo < x + 1 && x + 1 < hi);
}

}  // namespace

bool TorusIntervalSet::in_inner(const Rational& x) const {
  if (full_) return true;
  return std::any_of(arcs_.begin(), arcs_.end(), [&](const Arc& a) {
    return a.certain && in_open(a.left.hi, a.right.lo, x);
  });
}

bool TorusIntervalSet::in_outer(const Rational& x) const {
  if (full_) return true;
  return std::any_of(arcs_.begin(), arcs_.end(),
                     [&](const Arc& a) { return in_open(a.left.lo, a.right.hi, x); });
}

LevelShape level_shape(const Integer& q, const Enclosure& radius) {
  if (compare(radius.lo(), Rational(1, 2)) >= 0) return LevelShape::full;
  const Rational half_spacing(Integer(1), 2 * q);
  switch (compare(radius, half_spacing)) {
    case Order::less: return LevelShape::disjoint;
    case Order::greater: return LevelShape::full;
    case Order::equal: return LevelShape::touching;
    case Order::unknown: break;
  }
  throw Indeterminate("radius enclosure straddles 1/(2q) for q = " + q.get_str());
}

TorusIntervalSet build_level(const Integer& q, const LevelParams& params, std::size_t coord,
                             unsigned prec, std::size_t cap) {
  if (q < 1) throw PreconditionError("build_level requires q >= 1");
  if (coord >= params.dimension()) throw PreconditionError("coordinate out of range");
  const Enclosure r = params.radius_of(q, prec);
  if (level_shape(q, r) == LevelShape::full) return TorusIntervalSet::full();
  if (q > cap) throw BudgetExceeded("level with " + q.get_str() + " components exceeds the budget", 1);

  const Bounds rb = detail::to_bounds(r);
  const Rational& theta = params.theta[coord];
  std::vector<Arc> arcs;
  arcs.reserve(q.get_ui());
  for (Integer p = 0; p < q; ++p) {
    const Rational c = Rational(p + theta) / q;
    arcs.push_back({{c - rb.hi, c - rb.lo}, {c + rb.lo, c + rb.hi}, rb.lo > 0});
  }
  return TorusIntervalSet(std::move(arcs));
}

TorusIntervalSet intersect(const TorusIntervalSet& a, const TorusIntervalSet& b) {
  if (a.is_full()) return b;
  if (b.is_full()) return a;

  std::vector<Arc> lifted;
  lifted.reserve(3 * b.arcs().size());
  for (int n = -1; n <= 1; ++n) {
    for (Arc arc : b.arcs()) {
      shift(arc, Rational(n));
      lifted.push_back(std::move(arc));
    }
  }
  // prefix maximum of right.hi so the backward scan can stop early
  std::vector<Rational> reach(lifted.size());
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    reach[i] = i == 0 ? lifted[i].right.hi : std::max(reach[i - 1], lifted[i].right.hi);
  }

  std::vector<Arc> pieces;
  for (const Arc& x : a.arcs()) {
    auto end = std::lower_bound(lifted.begin(), lifted.end(), x.right.hi,
                                [](const Arc& arc, const Rational& v) { return arc.left.lo < v; });
    for (auto i = static_cast<std::ptrdiff_t>(end - lifted.begin()) - 1;
         i >= 0 && reach[static_cast<std::size_t>(i)] > x.left.lo; --i) {
      const Arc& y = lifted[static_cast<std::size_t>(i)];
      Arc piece{{std::max(x.left.lo, y.left.lo), std::max(x.left.hi, y.left.hi)},
                {std::min(x.right.lo, y.right.lo), std::min(x.right.hi, y.right.hi)},
                false};
      if (!(piece.left.lo < piece.right.hi)) continue;
      piece.certain = x.certain && y.certain && piece.left.hi < piece.right.lo;
      pieces.push_back(std::move(piece));
    }
  }
  return TorusIntervalSet(std::move(pieces));
}

LevelStats level_stats(std::size_t level, const TorusIntervalSet& set) {
  LevelStats s;
  s.level = level;
  s.count = set.components();
  if (set.is_full()) {
    s.max_len = 1;
    s.min_gap = 0;
    return s;
  }
  const auto arcs = set.arcs();
  if (arcs.empty()) {
    s.max_len = 0;
    s.min_gap = 1;
    return s;
  }
  s.max_len = 0;
  for (const auto& a : arcs) s.max_len = std::max(s.max_len, Rational(a.right.hi - a.left.lo));
  s.min_gap = 1;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const bool last = i + 1 == arcs.size();
    const Rational next_lo = last ? Rational(arcs.front().left.lo + 1) : arcs[i + 1].left.lo;
    s.min_gap = std::min(s.min_gap, Rational(next_lo - arcs[i].right.hi));
  }
  if (s.min_gap < 0) s.min_gap = 0;
  return s;
}

namespace detail {

Bounds to_bounds(const Enclosure& e) { return {e.lo().to_rational(), e.hi().to_rational()}; }

ResidueRange candidate_residues(const Arc& s, const Integer& q, const Rational& theta,
                                const Bounds& radius) {
  // level arc ((p+theta)/q - r, (p+theta)/q + r) can meet s only if
  // (p+theta)/q - r.hi < s.right.hi and (p+theta)/q + r.hi > s.left.lo
  const Rational lo = Rational(q * (s.left.lo - radius.hi)) - theta;
  const Rational hi = Rational(q * (s.right.hi + radius.hi)) - theta;
  return {floor_q(lo) + 1, ceil_q(hi) - 1};
}

void refine_arc(const Arc& s, const ResidueRange& range, const Integer& q, const Rational& theta,
                const Bounds& radius, std::vector<Arc>& out) {
  for (Integer p = range.first; p <= range.last; ++p) {
    const Rational c = Rational(p + theta) / q;
    Arc piece{{std::max(s.left.lo, Rational(c - radius.hi)), std::max(s.left.hi, Rational(c - radius.lo))},
              {std::min(s.right.lo, Rational(c + radius.lo)), std::min(s.right.hi, Rational(c + radius.hi))},
              false};
    if (!(piece.left.lo < piece.right.hi)) continue;
    piece.certain = s.certain && radius.lo > 0 && piece.left.hi < piece.right.lo;
    out.push_back(std::move(piece));
  }
}

}  // namespace detail

TorusIntervalSet refine_serial(const TorusIntervalSet& current, const Integer& q,
                               const Rational& theta, const Enclosure& radius, std::size_t cap,
                               std::size_t level) {
  const LevelShape shape = level_shape(q, radius);
  if (shape == LevelShape::full) return current;
  const Bounds rb = detail::to_bounds(radius);
  if (current.is_full()) {
    // full ∩ E = E; start from the single arc covering the torus
    Arc whole{{Rational(0), Rational(0)}, {Rational(1), Rational(1)}, true};
    const auto range = detail::candidate_residues(whole, q, theta, rb);
    if (range.size() > cap) throw BudgetExceeded("component budget exceeded", level);
    std::vector<Arc> out;
    for (Integer p = 0; p < q; ++p) {
      const Rational c = Rational(p + theta) / q;
      out.push_back({{c - rb.hi, c - rb.lo}, {c + rb.lo, c + rb.hi}, rb.lo > 0});
    }
    return TorusIntervalSet(std::move(out));
  }

  const auto arcs = current.arcs();
  std::vector<detail::ResidueRange> ranges;
  ranges.reserve(arcs.size());
  Integer total = 0;
  for (const auto& s : arcs) {
    ranges.push_back(detail::candidate_residues(s, q, theta, rb));
    total += ranges.back().size();
  }
  if (total > cap) {
    throw BudgetExceeded("level " + std::to_string(level) + " would need " + total.get_str() +
                             " components (budget " + std::to_string(cap) + ")",
                         level);
  }
  std::vector<Arc> out;
  out.reserve(total.get_ui());
  for (std::size_t i = 0; i < arcs.size(); ++i) detail::refine_arc(arcs[i], ranges[i], q, theta, rb, out);
  return TorusIntervalSet(std::move(out));
}

PrefixResult prefix_intersection(const QSequence& qs, const LevelParams& params, std::size_t coord,
                                 std::size_t J, unsigned prec, std::size_t cap, Exec exec) {
  params.validate();
  if (J < 1 || J > qs.size()) throw PreconditionError("depth J must satisfy 1 <= J <= |qs|");
  if (coord >= params.dimension()) throw PreconditionError("coordinate out of range");

  PrefixResult result;
  result.set = build_level(qs.q(1), params, coord, prec, cap);
  result.levels.push_back(level_stats(1, result.set));
  for (std::size_t j = 2; j <= J; ++j) {
    const Enclosure r = params.radius_of(qs.q(j), prec);
    result.set = exec == Exec::parallel
                     ? refine_parallel(result.set, qs.q(j), params.theta[coord], r, cap, j)
                     : refine_serial(result.set, qs.q(j), params.theta[coord], r, cap, j);
    result.levels.push_back(level_stats(j, result.set));
  }
  return result;
}

ProductPrefix prefix_intersection_product(const QSequence& qs, const LevelParams& params,
                                          std::size_t J, unsigned prec, std::size_t cap,
                                          Exec exec) {
  params.validate();
  ProductPrefix out;
  for (std::size_t i = 0; i < params.dimension(); ++i) {
    // coordinates sharing a shift have identical factors
    auto same = std::find(params.theta.begin(), params.theta.begin() + static_cast<long>(i), params.theta[i]);
    if (same != params.theta.begin() + static_cast<long>(i)) {
      out.coords.push_back(out.coords[static_cast<std::size_t>(same - params.theta.begin())]);
    } else {
      out.coords.push_back(prefix_intersection(qs, params, i, J, prec, cap, exec));
    }
  }
  for (std::size_t j = 0; j < J; ++j) {
    ProductLevelStats s;
    s.level = j + 1;
    s.boxes = {Integer(1), Integer(1)};
    s.max_side = 0;
    s.min_gap = 1;
    for (const auto& c : out.coords) {
      const LevelStats& ls = c.levels[j];
      s.boxes = s.boxes * ls.count;
      s.max_side = std::max(s.max_side, ls.max_len);
      s.min_gap = std::min(s.min_gap, ls.min_gap);
    }
    out.levels.push_back(std::move(s));
  }
  return out;
}

Integer count_shifted_rationals(const Rational& a, const Rational& b, const Rational& theta,
                                const Integer& q) {
  if (q < 1) throw PreconditionError("q must be >= 1");
  if (!(0 <= a && a < b && b <= 1)) throw PreconditionError("need 0 <= a < b <= 1");
  // a < (p + theta)/q < b  <=>  a q - theta < p < b q - theta
  Integer lo = floor_q(Rational(a * q) - theta) + 1;
  Integer hi = ceil_q(Rational(b * q) - theta) - 1;
  lo = std::max(lo, Integer(0));
  hi = std::min(hi, Integer(q - 1));
  return hi >= lo ? Integer(hi - lo + 1) : Integer(0);
}

}  // namespace liminf
