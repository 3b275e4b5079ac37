#pragma once

// Symmetric generalized arithmetic progressions
//   Q = t_1*[-s_1, s_1] + ... + t_r*[-s_r, s_r]
// with their lifts to the box [-s_1, s_1] x ... x [-s_r, s_r], hyperplane
// slicing and cleaning, lattice fibers of boxes, and the rank-one collapse.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subsum/integer_matrix.hpp"
#include "subsum/scalar.hpp"
#include "subsum/sets.hpp"

namespace subsum {

struct SymmetricGAP {
  std::vector<Scalar> diffs;
  std::vector<std::int64_t> half_sides;
  bool proper = false;

  std::size_t rank() const { return diffs.size(); }
  Integer box_size() const;  // prod (2 s_j + 1)
  std::string to_string() const;
};

// Sets `proper` after checking it. Throws InvalidArgument on malformed input.
SymmetricGAP make_gap(std::vector<Scalar> diffs, std::vector<std::int64_t> half_sides,
                      std::uint64_t enumeration_cap = std::uint64_t{1} << 24);

// Exact: Q-linearly independent differences certify properness directly,
// otherwise |Q| is enumerated. CapacityExceeded when prod(2 s_j + 1) > cap.
bool is_proper(const SymmetricGAP& q, std::uint64_t enumeration_cap = std::uint64_t{1} << 24);

bool in_box(const SymmetricGAP& q, const LatticePoint& x);
Scalar gap_project(const SymmetricGAP& q, const LatticePoint& x);
// Unique box preimages of r (Q proper). NotInGAP if some element has none.
PointSet gap_lift(const SymmetricGAP& q, const ScalarSet& r);
std::optional<LatticePoint> gap_lift_one(const SymmetricGAP& q, const Scalar& y);

// Proper GAP of rank <= r containing q, with differences a Z-basis of the
// group generated by q's differences. Returns q when already proper.
SymmetricGAP properize(const SymmetricGAP& q, std::uint64_t enumeration_cap = std::uint64_t{1} << 24);

struct SliceResult {
  SymmetricGAP gap;
  Rational density;          // |box cap V| / |box|
  std::uint64_t w_size = 0;  // |W|, the support part of box cap V
  std::int64_t s_w = 0;
  bool reproperized = false;
};

// Proper GAP of rank < r containing pi(box cap V), V = {sum v_j x_j = 0}.
// HypothesisFailed when |box cap V| < eta |box|.
SliceResult slice_reduce(const SymmetricGAP& q, const std::vector<Rational>& v, const Rational& eta);

struct CleanStep {
  std::size_t rank_before = 0;
  std::size_t rank_after = 0;
  std::size_t b_before = 0;
  std::size_t on_hyperplane = 0;
  IntVector normal;
  Rational eta;
};

struct CleanResult {
  ScalarSet b;
  SymmetricGAP gap;
  std::vector<CleanStep> steps;
  std::size_t max_hyperplane_count = 0;  // for the returned (b, gap); 0 when rank <= 1
  Rational retained;                     // |B'| / |B|
  Rational size_ratio;                   // |Q'| / |Q|
};

// Hyperplane through 0 holding the most points, ties to the lexicographically
// least primitive normal. Points must live in Z^r, r >= 2.
std::pair<IntVector, std::size_t> densest_hyperplane(const PointSet& points);

// Repeatedly slices along a densest hyperplane while it holds more than
// (1 - eps)|B| + 1 lifted points.
CleanResult clean(const SymmetricGAP& q, const ScalarSet& b, const Rational& eps);

struct BoxSlice {
  std::vector<std::int64_t> lambda;                            // nonzero
  std::vector<std::pair<std::int64_t, std::int64_t>> intervals;  // inclusive [lo, hi]
  std::int64_t level = 0;

  std::size_t rank() const { return lambda.size(); }
  Integer interval_size(std::size_t j) const;
  Integer box_size() const;
};

Integer fiber_count_exact(const BoxSlice& slice);
std::vector<IntVector> fiber_points(const BoxSlice& slice, std::uint64_t cap = 1'000'000);
// Affine dimension of a finite point set; -1 when empty.
long affine_dimension(const std::vector<IntVector>& points);

// prod |I_j| / (max |I_j| * min |I_j|); valid when the fiber has affine dimension <= r - 2.
Rational fiber_bound_low_dim(const BoxSlice& slice);
// (r-1)! prod |I_j| / max |lambda_j||I_j| + (r-1); needs gcd(lambda) = 1.
Rational fiber_bound_full_dim(const BoxSlice& slice);
// The bound applicable to a fiber of the given affine dimension.
Rational fiber_upper_bound(const BoxSlice& slice, long affine_dim);

struct RankOneCollapse {
  Scalar a;              // > 0
  IntVector lambda;      // t = a * lambda, gcd 1
  Integer max_product;   // max |lambda_j| |I_j|
};

// nullopt when the differences are not pairwise commensurable.
std::optional<RankOneCollapse> collapse_to_rank_one(const std::vector<Scalar>& t, const std::vector<Integer>& interval_sizes);

}  // namespace subsum
