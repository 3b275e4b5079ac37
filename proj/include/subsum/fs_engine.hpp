#pragma once

// Subset-sum sets FS(A) = { sum of B : B subset of A }.
//
// Inputs are scaled by the lcm L of all coordinate denominators, giving
// integer vectors in Z^k (k = basis dimension). A mixed-radix map with
// coordinate 0 most significant sends the bounding box of FS injectively and
// order-preservingly onto an integer interval, and it is linear on the box,
// so FS can be computed there: either as a dense bit vector (shift-or DP on
// the word kernels) or as a sorted sparse list.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "subsum/integer_matrix.hpp"
#include "subsum/scalar.hpp"
#include "subsum/sets.hpp"

namespace subsum {

struct FsOptions {
  enum class Path { Auto, Dense, Sparse };
  Path path = Path::Auto;
  std::uint64_t dense_bit_cap = std::uint64_t{1} << 31;
  std::uint64_t max_cardinality = std::uint64_t{1} << 25;
};

namespace detail {

struct Radix {
  std::size_t dim = 0;
  IntVector lo, width, stride;
  Integer volume;
  bool small = false;  // volume < 2^62: encoded values fit in int64
  std::vector<std::int64_t> lo64, width64, stride64;

  static Radix for_box(const IntVector& lo, const IntVector& hi);
  std::optional<Integer> encode(const IntVector& v) const;  // nullopt outside the box
  IntVector decode(const Integer& e) const;
  IntVector decode64(std::int64_t e) const;
  Integer shift(const IntVector& delta) const;
};

class EncodedSet {
 public:
  enum class Mode { Dense, Sparse64, SparseBig };

  static EncodedSet build(const std::vector<IntVector>& elements, const std::vector<IntVector>& seed, std::size_t dim,
                          const FsOptions& opts);

  Mode mode() const { return mode_; }
  std::uint64_t size() const { return count_; }
  const Radix& radix() const { return radix_; }
  const std::vector<std::uint64_t>& step_sizes() const { return step_sizes_; }

  bool contains(const IntVector& v) const;
  // Visits decoded points in increasing encoded (= lexicographic) order.
  void for_each(const std::function<void(const IntVector&)>& fn) const;
  // Relative encoded offsets for 1-D sets (value = radix.lo[0] + base_offset + rel).
  std::vector<std::int64_t> offsets64() const;
  const Integer& base() const { return base_; }
  const std::vector<std::uint64_t>& words() const { return words_; }
  std::uint64_t bits() const { return nbits_; }

 private:
  bool contains_encoded(const Integer& e) const;

  Mode mode_ = Mode::Sparse64;
  Radix radix_;
  Integer base_;
  std::vector<std::uint64_t> words_;
  std::uint64_t nbits_ = 0;
  std::vector<std::int64_t> rel64_;
  std::vector<Integer> relbig_;
  std::uint64_t count_ = 0;
  std::vector<std::uint64_t> step_sizes_;
};

}  // namespace detail

class SumSet {
 public:
  std::uint64_t size() const { return set_.size(); }
  std::size_t source_size() const { return source_size_; }
  std::string_view path() const;
  const BasisPtr& basis_ptr() const { return basis_; }
  bool contains(const Scalar& x) const;
  // All values in canonical order (numeric order for rationals).
  std::vector<Scalar> values() const;
  // Values as int64 when every value is an integer that fits.
  std::optional<std::vector<std::int64_t>> integer_values() const;
  // |FS| after each insertion, in insertion order.
  const std::vector<std::uint64_t>& step_sizes() const { return set_.step_sizes(); }

  const detail::EncodedSet& encoded() const { return set_; }
  const Integer& scale() const { return scale_; }

 private:
  friend SumSet fs_build(std::span<const Scalar>, std::span<const Scalar>, const FsOptions&);
  BasisPtr basis_;
  Integer scale_;
  std::size_t source_size_ = 0;
  detail::EncodedSet set_;
};

class PointSumSet {
 public:
  std::uint64_t size() const { return set_.size(); }
  std::size_t dim() const { return dim_; }
  bool contains(const LatticePoint& p) const;
  std::vector<LatticePoint> values() const;
  const detail::EncodedSet& encoded() const { return set_; }

 private:
  friend PointSumSet fs_set_points(const PointSet&, const FsOptions&);
  std::size_t dim_ = 0;
  detail::EncodedSet set_;
};

struct IncrementalTrace {
  std::vector<Scalar> order;        // increasing
  std::vector<std::uint64_t> z;     // z[i] = |FS(A(i+1)) \ FS(A(i))|, i = 0..n-1
  std::vector<std::int64_t> y;      // y[i-1] = z[i-1] - i, i = 1..n
};

SumSet fs_set(const ScalarSet& a, const FsOptions& opts = {});
// seed + FS(elements), inserting elements in the given order; an empty seed means {0}.
SumSet fs_build(std::span<const Scalar> elements, std::span<const Scalar> seed, const FsOptions& opts = {});
PointSumSet fs_set_points(const PointSet& a, const FsOptions& opts = {});
IncrementalTrace incremental_trace(const ScalarSet& a, const FsOptions& opts = {});

// |{s in S : s - x not in S}|, the minimum number of APs of difference x covering S.
std::uint64_t ap_cover_count(const SumSet& s, const Scalar& x);

ScalarSet sumset(const ScalarSet& a, const ScalarSet& b);
ScalarSet restricted_sumset(const ScalarSet& a);

// Classes of x ~ y iff x - y is parallel to v, keyed by <v,v>x - <x,v>v.
std::vector<std::uint64_t> direction_class_sizes(std::span<const LatticePoint> points, const LatticePoint& v);
std::uint64_t direction_class_count(const PointSumSet& s, const LatticePoint& v);
std::uint64_t direction_class_count(std::span<const LatticePoint> points, const LatticePoint& v);

// |FS| of n small integer points (row-major, `dim` coordinates each) on the
// dense path with int64 arithmetic; used by inner search loops.
std::uint64_t fs_size_small(std::span<const std::int64_t> flat, std::size_t dim);

}  // namespace subsum
