#include <omp.h>

#include "cantor_detail.hpp"

namespace liminf {

std::vector<Integer> CantorTree::expand_parallel(std::size_t k, const std::vector<Integer>& parents,
                                                 std::size_t coord) const {
  const auto m = to_ulong_checked(m_[k - 1], "branching");
  std::vector<Integer> out(parents.size() * m);
  const auto n = static_cast<std::ptrdiff_t>(parents.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      detail::fill_children(*this, k, parents[static_cast<std::size_t>(i)], coord, m,
                            out.begin() + i * static_cast<std::ptrdiff_t>(m));
    } catch (...) {
#pragma omp critical(cantor_expand)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

HolderCertificate holder_certificate_parallel(const CantorTree& tree, const Rational& s,
                                              std::size_t n, std::uint64_t seed) {
  detail::check_holder_args(tree, s, n);
  std::vector<HolderSample> samples(n);
  std::vector<std::exception_ptr> failures(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      samples[k] = evaluate_ball(tree, sample_ball(tree, seed, k), s);
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return detail::reduce_samples(s, seed, samples);
}

}  // namespace liminf
