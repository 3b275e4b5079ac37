#pragma once

// Subset sums of lattice point sets: subspace concentration, collision
// counts, the pair-removal inequality, the recursive lower bound for
// f_d(n, m) = min{|FS(A)| : A in Xi_d(n, m)} and explicit stability
// certificates, plus a grid search for small f_d values.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "subsum/scalar.hpp"
#include "subsum/sets.hpp"

namespace subsum {

// max |A cap V| over proper linear subspaces V; 0 when d = 1.
std::size_t max_subspace_count(const PointSet& a);
// Same for small integer points (row-major); exact via 128-bit Bareiss.
std::size_t max_subspace_count_small(const std::int64_t* flat, std::size_t n, std::size_t dim);

// |E_A(v)|: unordered pairs of A that coincide after projecting along v.
std::uint64_t collision_count(const PointSet& a, const LatticePoint& v);

struct UngarPair {
  LatticePoint a, b;
  std::uint64_t collisions = 0;
};
// Lexicographically least pair (a < b) with 2 |E_A(a - b)| <= n.
UngarPair ungar_pair(const PointSet& a);

struct PairRemovalCertificate {
  std::uint64_t lhs = 0;  // |FS(A)|
  std::uint64_t rhs = 0;  // max over pairs of |FS(A')| + classes of FS(A') along a - b
  bool holds = false;
  LatticePoint best_a, best_b;
};
PairRemovalCertificate pair_removal_certificate(const PointSet& a);

struct FdSearchOptions {
  std::uint64_t budget = 50'000'000;  // canonical configurations; above this the search samples
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

struct FdRecord {
  std::size_t d = 0, n = 0, m = 0;
  long grid_radius = 0;
  std::uint64_t seed = 0;
  bool found = false;
  std::uint64_t best_value = 0;
  std::vector<LatticePoint> witness;  // sorted
  bool exhaustive = false;
  bool budget_exceeded = false;
  std::uint64_t evaluated = 0;       // configurations whose |FS| was computed
  Integer search_space;              // canonical-free count of class multisets
};

FdRecord fd_search(std::size_t d, std::size_t n, std::size_t m, long grid_radius, const FdSearchOptions& opts = {});

// Known values or lower bounds for f_k(l, m'), queried with monotone
// clamping: f is weakly increasing in l and weakly decreasing in m', so any
// stored (l', m'') with l' <= l and m'' >= m' bounds f(l, m') from below.
class FdTable {
 public:
  void set(long l, long m, const Integer& value) { values_[{l, m}] = value; }
  std::optional<Integer> lower_bound(long l, long m) const;
  bool empty() const { return values_.empty(); }
  // Table for d = 1 from f_1(l, m) = floor((l+1)^2/4) + 1 (independent of m >= 0).
  static FdTable dimension_one(long max_l);
  static FdTable constant(long max_l, const Integer& value);

 private:
  std::map<std::pair<long, long>, Integer> values_;
};

// f_d(n-2, m) + min over (n-4)/2 <= l <= n-2 of f_{d-1}(l, l - q),
// q = ceil((n-2-m)^2 / (2n-2-m)). The first term is taken from `same_dim`
// when present, else by applying the recursion again, else 1.
Integer refined_lower_bound(std::size_t d, long n, long m, const FdTable& lower_dim, const FdTable* same_dim = nullptr);

struct StabilityCertificate {
  std::size_t d = 0;
  Rational eps;
  long n = 0;
  Rational gamma;
  long threshold = 0;
  bool below_threshold = false;
  Integer bound;            // valid lower bound on f_d(n, ceil((1-eps) n))
  Integer recursive_bound;  // exact unrolled recursion with the conservative d = 1 base
  long m = 0;               // ceil((1-eps) n)
};

StabilityCertificate stability_certificate(std::size_t d, const Rational& eps, long n);

// Lower bound obtained by unrolling the recursion down to d = 1, where
// f_1(l, .) >= C(ceil((l-1)/2) + 1, 2) + 1.
Integer recursive_lower_bound(std::size_t d, long n, long m);

}  // namespace subsum
