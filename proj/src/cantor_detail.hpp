#pragma once

#include <vector>

#include "liminf/cantor_measure.hpp"

namespace liminf::detail {

template <class It>
void fill_children(const CantorTree& t, std::size_t k, const Integer& parent, std::size_t coord,
                   unsigned long m, It out) {
  t.check_fit(k, parent, coord);
  const Integer first = t.first_child(k, parent, coord);
  for (unsigned long j = 0; j < m; ++j, ++out) *out = first + j;
}

void check_holder_args(const CantorTree& tree, const Rational& s, std::size_t n);
HolderCertificate reduce_samples(const Rational& s, std::uint64_t seed,
                                 std::vector<HolderSample>& samples);

}  // namespace liminf::detail
