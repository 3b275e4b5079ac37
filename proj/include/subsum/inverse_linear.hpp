#pragma once

// Inverse theorem for |FS(A)| near its minimum on positive reals.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subsum/scalar.hpp"
#include "subsum/sets.hpp"

namespace subsum {

struct Lemma21Result {
  std::uint64_t delta = 0;  // |FS(B + x) \ FS(B)|
  bool equality = false;    // delta == m + 1
  bool homogeneous = false; // B = {x/(m+1), ..., m x/(m+1)}
};

// B positive, x > max B.
Lemma21Result lemma21_delta(const ScalarSet& b, const Scalar& x);

struct Lemma21Scan {
  long m = 0, x_max = 0;
  std::uint64_t checked = 0;
  std::uint64_t equality_cases = 0;
  std::uint64_t homogeneous_cases = 0;
  // (B, x) where delta = m + 1 but B is not homogeneous, or the converse.
  std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> mismatches;
};

// Every m-subset B of [1, x - 1] for m + 1 <= x <= x_max.
Lemma21Scan lemma21_scan(long m, long x_max);

struct Thm11Verdict {
  std::size_t n = 0;
  long M = 0;
  std::uint64_t fs_size = 0;
  Integer fs_bound;  // C(n+1,2) + 1 + M
  bool fs_bound_holds = false;
  std::optional<Scalar> generator_a;
  std::optional<Integer> normalized_sum;
  bool structure_holds = false;
  bool equivalence_expected = false;  // n >= 4 and M <= n - 4
};

Thm11Verdict thm11_check(const ScalarSet& a, long M);

struct ScanOptions {
  std::uint64_t budget = 200'000'000;  // maximum number of search-tree nodes
  unsigned jobs = 1;
  std::uint64_t formal_checks = 500;  // per smallest-element shard: a_n -> a_n + alpha on fs-side-true sets
};

struct ScanResult {
  std::vector<std::vector<std::int64_t>> violations;  // sorted tuples, lexicographic order
  std::vector<std::string> formal_violations;
  std::uint64_t enumerated = 0;
  std::uint64_t fs_side_true = 0;
  std::uint64_t formal_checked = 0;
};

// All n-subsets of positive integers with sum <= sum_cap where the two sides
// of the theorem disagree. Throws BudgetExceeded past opts.budget nodes.
ScanResult thm11_scan(int n, long M, long sum_cap, const ScanOptions& opts = {});

}  // namespace subsum
