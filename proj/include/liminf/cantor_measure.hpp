#pragma once

// Finite-depth Cantor subset F_1 ⊇ ... ⊇ F_J of the liminf set with its uniform
// mass distribution. The tree is a product of one-dimensional trees, one per
// coordinate; levels are stored explicitly while they fit the node budget and
// are otherwise addressed implicitly by mixed-radix indices.

#include <cstdint>
#include <vector>

#include "liminf/dimension_bounds.hpp"
#include "liminf/level_sets.hpp"
#include "liminf/numerics.hpp"
#include "liminf/sequences.hpp"

namespace liminf {

inline constexpr std::size_t kDefaultNodeBudget = 1'000'000;

/// A node at level k; residues[i] is the lifted integer p with centre
/// (p + theta_i) / q_k along coordinate i. The root has level 0.
struct CantorNode {
  std::size_t level = 0;
  std::vector<Integer> residues;
  friend bool operator==(const CantorNode&, const CantorNode&) = default;
};

class CantorTree {
 public:
  CantorTree(QSequence qs, LevelParams params, std::size_t depth, unsigned prec,
             std::size_t node_budget, Exec exec);

  const QSequence& sequence() const { return qs_; }
  const LevelParams& params() const { return params_; }
  std::size_t depth() const { return depth_; }
  std::size_t dimension() const { return params_.dimension(); }
  unsigned precision() const { return prec_; }

  /// Children per parent along one coordinate (m_1 = q_1).
  const Integer& branching_1d(std::size_t k) const { return m_.at(k - 1); }
  /// b_k = m_k^d.
  Integer branching(std::size_t k) const;
  /// Number of one-dimensional nodes at level k (1 at level 0).
  const Integer& level_size_1d(std::size_t k) const { return size_1d_.at(k); }
  Integer level_size(std::size_t k) const;
  /// Highest level held explicitly.
  std::size_t explicit_depth() const { return explicit_depth_; }
  /// Explicit residues of coordinate `coord` at level k <= explicit_depth().
  const std::vector<Integer>& explicit_level(std::size_t coord, std::size_t k) const;

  /// Box half-width bounds at level k >= 1.
  const Bounds& half_width(std::size_t k) const { return rho_.at(k - 1); }
  Rational center(std::size_t k, const Integer& residue, std::size_t coord) const;
  /// Residue of the first child at level k of the level-(k-1) node `parent`.
  Integer first_child(std::size_t k, const Integer& parent, std::size_t coord) const;

  CantorNode root() const;
  std::vector<CantorNode> children(const CantorNode& node) const;
  /// Level-k residue of the node with mixed-radix index `index` along a coordinate.
  Integer residue_at(std::size_t k, const Integer& index, std::size_t coord) const;
  /// Throws RegimeViolation unless all m_k children of `parent` fit inside it.
  void check_fit(std::size_t k, const Integer& parent, std::size_t coord) const;

 private:
  std::vector<Integer> expand(std::size_t k, const std::vector<Integer>& parents,
                              std::size_t coord) const;
  std::vector<Integer> expand_parallel(std::size_t k, const std::vector<Integer>& parents,
                                       std::size_t coord) const;

  QSequence qs_;
  LevelParams params_;
  std::size_t depth_;
  unsigned prec_;
  std::size_t node_budget_;
  std::vector<Integer> m_;
  std::vector<Integer> size_1d_;
  std::vector<Bounds> rho_;
  std::vector<bool> level_fits_;  // every parent certainly holds m_k children
  std::size_t explicit_depth_ = 0;
  std::vector<std::vector<std::vector<Integer>>> explicit_;  // [coord][level]
};

CantorTree build_tree(const QSequence& qs, const LevelParams& params, std::size_t J,
                      unsigned prec = kDefaultPrecision,
                      std::size_t node_budget = kDefaultNodeBudget, Exec exec = Exec::parallel);

/// Exact mass of a node: 1 / (b_1 ... b_k).
Rational node_measure(const CantorTree& tree, const CantorNode& node);

/// Closed sup-norm ball on the torus.
struct Ball {
  std::vector<Rational> center;
  Enclosure radius;
};

/// Enclosure of mu(ball): level-J boxes certainly inside the ball give the
/// lower end, boxes possibly meeting it the upper end.
struct MeasureRange {
  Rational lo;
  Rational hi;
  friend bool operator==(const MeasureRange&, const MeasureRange&) = default;
};

MeasureRange ball_measure(const CantorTree& tree, const Ball& ball);

struct HolderSample {
  Ball ball;
  MeasureRange measure;
  Enclosure ratio;  // mu(B) / r^s
};

struct HolderCertificate {
  Rational s;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  Enclosure max_ratio;  // hi end bounds every sampled ratio
  Ball worst_ball;
  std::size_t worst_index = 0;
};

/// The i-th sampled ball; a pure function of (tree, seed, i).
Ball sample_ball(const CantorTree& tree, std::uint64_t seed, std::size_t i);
HolderSample evaluate_ball(const CantorTree& tree, const Ball& ball, const Rational& s);

HolderCertificate holder_certificate_serial(const CantorTree& tree, const Rational& s,
                                            std::size_t n, std::uint64_t seed);
HolderCertificate holder_certificate_parallel(const CantorTree& tree, const Rational& s,
                                              std::size_t n, std::uint64_t seed);
HolderCertificate holder_certificate(const CantorTree& tree, const Rational& s, std::size_t n,
                                     std::uint64_t seed, Exec exec = Exec::parallel);

/// Lower bound on the sup-distance between distinct level-k boxes, by
/// scanning every adjacent pair. Needs k <= explicit_depth().
Rational min_separation(const CantorTree& tree, std::size_t k);
/// Same bound over `n` random adjacent pairs; works at any level.
Rational sampled_separation(const CantorTree& tree, std::size_t k, std::size_t n,
                            std::uint64_t seed);

}  // namespace liminf
