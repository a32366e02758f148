#pragma once

#include <vector>

#include "liminf/level_sets.hpp"

namespace liminf::detail {

Bounds to_bounds(const Enclosure& e);

/// Residues p whose lifted level arc can meet `s`: [first, last], possibly empty.
struct ResidueRange {
  Integer first;
  Integer last;
  Integer size() const { return last >= first ? Integer(last - first + 1) : Integer(0); }
};

ResidueRange candidate_residues(const Arc& s, const Integer& q, const Rational& theta,
                                const Bounds& radius);

/// Appends the nonempty pieces of s ∩ (level arcs for residues in `range`).
void refine_arc(const Arc& s, const ResidueRange& range, const Integer& q, const Rational& theta,
                const Bounds& radius, std::vector<Arc>& out);

}  // namespace liminf::detail
