#pragma once

// Structure extraction for sets of positive reals with |FS(A)| <= C n^2:
// a small-doubling prefix, a GAP cover of it, cleaning, collapse to a
// homogeneous progression, then the residue argument for the rest of A.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subsum/gap.hpp"
#include "subsum/scalar.hpp"
#include "subsum/sets.hpp"

namespace subsum {

using ConstantLog = std::vector<std::pair<std::string, std::string>>;

struct DoublingScan {
  ScalarSet prefix;         // A(i), the i smallest elements
  std::size_t index = 0;    // i
  std::uint64_t z = 0;      // z_i = |FS(A(i+1)) \ FS(A(i))|, 0 on the trivial branch
  Rational z_limit;         // 2 (1 - delta)^-1 C n
  std::uint64_t doubling = 0;  // |A(i) + A(i)|
  std::uint64_t doubling_bound = 0;  // 2 z_i + i
  bool trivial = false;     // n < 1/delta: the whole set is returned
};

// Largest i >= delta n with z_i <= 2 (1 - delta)^-1 C n. NoIndexFound if none.
DoublingScan small_doubling_scan(const ScalarSet& a, const Rational& delta, const Rational& C);

struct CoverOptions {
  std::size_t rank_max = 3;
  Rational size_factor = 32;             // K: accept |Q| <= K |B|
  std::uint64_t budget = 200'000;        // difference tuples examined
  std::size_t candidate_limit = 16;      // candidates used for rank >= 2
};

struct CoverSearch {
  std::optional<SymmetricGAP> gap;  // absent: nothing found within budget, not a refutation
  std::uint64_t tried = 0;
  bool budget_exhausted = false;
};

// Proper symmetric GAP containing B of least rank, then least size.
CoverSearch gap_cover_search(const ScalarSet& b, const CoverOptions& opts = {});

struct Piece {
  Scalar a;
  ScalarSet aprime;
  DoublingScan scan;
  SymmetricGAP cover;
  CleanResult cleaned;
  RankOneCollapse collapse;
  Rational c_realized;       // |A'| / n
  Rational cprime_realized;  // max(a^-1 A') / n
  ConstantLog log;
};

struct PieceOptions {
  Rational delta{1, 2};
  Rational clean_eps{51, 100};
  CoverOptions cover;
  Rational size_factor_max = 1024;  // K doubles from cover.size_factor up to this while no cover is found
};

// PipelineStalled, naming the stage, when a stage produces nothing.
Piece piece_of_structure(const ScalarSet& a, const Rational& C, const PieceOptions& opts = {});

struct LocalGlobal {
  ScalarSet r1, r2;
  Integer D;
  long m = 0;
  Rational T;              // n^2 / eps + 1, in units of `unit`
  ScalarSet r_big, r_bad;
  Rational rest_sum;       // sum of (R \ R_big) / unit
  Rational rest_bound;     // (2m - 1) T
  std::size_t greedy_blocks = 0;
  bool hypotheses_checked = false;
  bool big_count_ok = false;   // |R_big| < m
  bool rest_sum_ok = false;    // rest_sum <= (2 r + 1) T <= (2m - 1) T
  bool r2_size_ok = false;     // |R2| <= m + m^2
};

struct LocalGlobalOptions {
  bool check_hypotheses = true;
};

// R measured in units of `unit` (R is read as unit^-1 R). S is a set of integers.
LocalGlobal local_to_global(const ScalarSet& r, const std::vector<Integer>& s, long n, const Rational& eps,
                            const Rational& C, const Scalar& unit = Scalar(1), const LocalGlobalOptions& opts = {});

struct DecompositionChecks {
  bool partition = false;      // A1 and A2 partition A
  bool a1_in_lattice = false;  // A1 within r Z_{>0}
  bool sum_within_budget = false;
  bool a2_within_budget = false;
  bool product_bound = false;  // |FS(A)| <= (1 + sum r^-1 A1) 2^|A2|

  bool all() const { return partition && a1_in_lattice && sum_within_budget && a2_within_budget && product_bound; }
};

struct DecompositionReport {
  ScalarSet a1, a2;
  Scalar r;            // generator of A1
  Scalar r_lemma;      // a / D
  Integer normalized_sum;
  Integer sum_budget;  // floor(D ((2m - 1) T + C' n^2))
  std::size_t a2_budget = 0;
  std::uint64_t fs_size = 0;
  Integer product_rhs;
  DecompositionChecks checks;
  ConstantLog stage_log;
};

struct DecomposeOptions {
  PieceOptions piece;
  std::optional<Rational> eps;  // default from the lower bound on |FS(A')|
};

DecompositionReport decompose(const ScalarSet& a, const Rational& C, const DecomposeOptions& opts = {});

// Recomputes every check of a report against A from scratch.
DecompositionChecks verify_decomposition(const ScalarSet& a, const DecompositionReport& report);

}  // namespace subsum
