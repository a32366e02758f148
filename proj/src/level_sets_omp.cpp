#include <omp.h>

#include <iterator>

#include "level_sets_detail.hpp"

namespace liminf {

TorusIntervalSet refine_parallel(const TorusIntervalSet& current, const Integer& q,
                                 const Rational& theta, const Enclosure& radius, std::size_t cap,
                                 std::size_t level) {
  if (current.is_full() || current.arcs().size() < 64) {
    return refine_serial(current, q, theta, radius, cap, level);
  }
  if (level_shape(q, radius) == LevelShape::full) return current;
  const Bounds rb = detail::to_bounds(radius);
  const auto arcs = current.arcs();
  const auto n = static_cast<std::ptrdiff_t>(arcs.size());

  std::vector<detail::ResidueRange> ranges(arcs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    ranges[static_cast<std::size_t>(i)] =
        detail::candidate_residues(arcs[static_cast<std::size_t>(i)], q, theta, rb);
  }
  Integer total = 0;
  for (const auto& r : ranges) total += r.size();
  if (total > cap) {
    throw BudgetExceeded("level " + std::to_string(level) + " would need " + total.get_str() +
                             " components (budget " + std::to_string(cap) + ")",
                         level);
  }

  // one contiguous block of arcs per thread, concatenated in thread order
  std::vector<std::vector<Arc>> blocks(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    const auto t = static_cast<std::size_t>(omp_get_thread_num());
    const auto nt = static_cast<std::size_t>(omp_get_num_threads());
    const std::size_t lo = arcs.size() * t / nt;
    const std::size_t hi = arcs.size() * (t + 1) / nt;
    auto& mine = blocks[t];
    // Arc moves are not noexcept (mpq_class), so growth would copy: reserve exactly
    Integer need = 0;
    for (std::size_t k = lo; k < hi; ++k) need += ranges[k].size();
    mine.reserve(need.get_ui());
    for (std::size_t k = lo; k < hi; ++k) detail::refine_arc(arcs[k], ranges[k], q, theta, rb, mine);
  }

  std::vector<Arc> out;
  out.reserve(total.get_ui());
  for (auto& b : blocks) std::move(b.begin(), b.end(), std::back_inserter(out));
  return TorusIntervalSet(std::move(out));
}

}  // namespace liminf
