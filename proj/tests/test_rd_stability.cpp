#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "subsum/error.hpp"
#include "subsum/fs_engine.hpp"
#include "subsum/rd_stability.hpp"

using namespace subsum;

namespace {

LatticePoint pt(std::initializer_list<long> c) { return LatticePoint(c); }

PointSet random_points(std::mt19937_64& rng, std::size_t d, std::size_t n, long r, bool allow_zero) {
  std::set<std::vector<std::int64_t>> seen;
  std::vector<LatticePoint> pts;
  while (pts.size() < n) {
    std::vector<std::int64_t> v(d);
    for (auto& x : v) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * r + 1)) - r;
    if (!allow_zero && std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; })) continue;
    if (seen.insert(v).second) pts.push_back(oracle::point(v));
  }
  return PointSet(d, pts);
}

// Oracle: max over proper subspaces = largest m with some m-subset not spanning R^d.
std::size_t max_subspace_oracle(const PointSet& a) {
  const std::size_t n = a.size(), d = a.dim();
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<LatticePoint> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(a[i]);
    if (oracle::point_rank(s) < d) best = std::max(best, s.size());
  }
  return best;
}

bool in_xi(const std::vector<LatticePoint>& pts, std::size_t d, std::size_t m) {
  return max_subspace_count(PointSet(d, pts)) <= m;
}

// Equivalence up to signed coordinate permutations and element negations.
bool equivalent(std::vector<LatticePoint> a, std::vector<LatticePoint> b, std::size_t d) {
  auto canon = [](std::vector<LatticePoint> s) {
    for (auto& p : s) {
      for (std::size_t c = 0; c < p.dim(); ++c)
        if (p[c] != 0) {
          if (p[c] < 0) p = -p;
          break;
        }
    }
    std::sort(s.begin(), s.end());
    return s;
  };
  auto target = canon(b);
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (std::uint32_t signs = 0; signs < (1u << d); ++signs) {
      std::vector<LatticePoint> img;
      for (const auto& p : a) {
        std::vector<Integer> q(d);
        for (std::size_t c = 0; c < d; ++c) q[c] = (signs >> c & 1 ? -1 : 1) * p[perm[c]];
        img.emplace_back(q);
      }
      if (canon(img) == target) return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("max_subspace_count examples") {
  CHECK(max_subspace_count(PointSet(2, {pt({1, 0}), pt({2, 0}), pt({0, 1})})) == 2);
  CHECK(max_subspace_count(PointSet(2, {pt({1, 0}), pt({0, 1}), pt({1, 1})})) == 1);
  CHECK(max_subspace_count(PointSet(1, {pt({3}), pt({-2}), pt({7})})) == 0);
  CHECK_THROWS_AS(max_subspace_count(PointSet(2, {pt({0, 0}), pt({1, 0})})), Error);
  CHECK(max_subspace_count(PointSet(3, {pt({1, 0, 0}), pt({0, 1, 0}), pt({1, 1, 0}), pt({0, 0, 1})})) == 3);
}

TEST_CASE("max_subspace_count agrees with the (m+1)-subset spanning oracle") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 300; ++it) {
    std::size_t d = 2 + rng() % 3, n = 1 + rng() % 8;
    long r = it % 3 == 0 ? 1 : 3;
    std::size_t side = static_cast<std::size_t>(2 * r + 1);
    std::size_t cells = 1;
    for (std::size_t c = 0; c < d; ++c) cells *= side;
    if (n >= cells) continue;
    auto a = random_points(rng, d, n, r, false);
    CHECK(max_subspace_count(a) == max_subspace_oracle(a));
  }
  // large coordinates take the arbitrary-precision path
  PointSet big(3, {pt({100000, 0, 1}), pt({0, 100000, 1}), pt({100000, 100000, 2}), pt({1, 1, 1})});
  CHECK(max_subspace_count(big) == max_subspace_oracle(big));
}

TEST_CASE("collision_count") {
  PointSet sq(2, {pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})});
  CHECK(collision_count(sq, pt({1, 0})) == 2);
  CHECK(collision_count(sq, pt({1, 1})) == 1);
  CHECK(collision_count(sq, pt({2, 7})) == 0);
  CHECK_THROWS_AS(collision_count(sq, pt({0, 0})), Error);
}

TEST_CASE("ungar_pair") {
  PointSet sq(2, {pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})});
  auto u = ungar_pair(sq);
  CHECK(u.collisions <= 2);
  CHECK(collision_count(sq, u.a - u.b) == u.collisions);
  auto t = ungar_pair(PointSet(2, {pt({0, 0}), pt({1, 0}), pt({0, 1})}));
  CHECK(t.collisions <= 1);
  try {
    ungar_pair(PointSet(2, {pt({0, 0}), pt({1, 1}), pt({2, 2})}));
    FAIL("expected CollinearInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CollinearInput);
  }
  // lexicographically least qualifying pair, by brute force
  std::mt19937_64 rng(5);
  for (int it = 0; it < 100; ++it) {
    auto a = random_points(rng, 2, 3 + rng() % 6, 3, true);
    std::vector<LatticePoint> diffs;
    bool collinear = true;
    for (std::size_t i = 1; i < a.size(); ++i) diffs.push_back(a[i] - a[0]);
    collinear = oracle::point_rank(diffs) <= 1;
    if (collinear) continue;
    auto got = ungar_pair(a);
    bool found = false;
    for (std::size_t i = 0; i < a.size() && !found; ++i)
      for (std::size_t j = i + 1; j < a.size() && !found; ++j) {
        auto v = a[i] - a[j];
        std::uint64_t c = 0;
        for (std::size_t x = 0; x < a.size(); ++x)
          for (std::size_t y = x + 1; y < a.size(); ++y) {
            auto w = a[x] - a[y];
            if (w[0] * v[1] - w[1] * v[0] == 0) ++c;
          }
        if (2 * c <= a.size()) {
          CHECK(got.a == a[i]);
          CHECK(got.b == a[j]);
          found = true;
        }
      }
    CHECK(found);
  }
}

TEST_CASE("pair_removal_certificate examples") {
  CHECK(pair_removal_certificate(PointSet(2, {pt({1, 0}), pt({0, 1}), pt({1, 1})})).holds);
  CHECK(pair_removal_certificate(PointSet(2, {pt({1, 0}), pt({2, 0}), pt({3, 0}), pt({4, 0}), pt({1, 5})})).holds);
  auto c = pair_removal_certificate(PointSet(2, {pt({1, 1}), pt({2, 2}), pt({3, 3})}));
  CHECK(c.holds);
  CHECK(c.lhs == 7);
}

TEST_CASE("refined_lower_bound") {
  auto ones = FdTable::constant(100, 1);
  CHECK(refined_lower_bound(2, 10, 4, ones) == 4);  // f_2(8,4)-term 3, plus 1
  CHECK(refined_lower_bound(2, 6, 4, ones) == 2);
  auto f1 = FdTable::dimension_one(100);
  // q = ceil(16/14) = 2; min over l in 3..8 of f_1(l, l-2) = f_1(3) = 5
  Integer expect_first = refined_lower_bound(2, 8, 4, f1);
  CHECK(refined_lower_bound(2, 10, 4, f1) == expect_first + 5);
  CHECK_THROWS_AS(refined_lower_bound(2, 5, 4, f1), Error);
  FdTable sparse;
  sparse.set(10, 10, 3);
  try {
    refined_lower_bound(2, 10, 4, sparse);
    FAIL("expected TableGap");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TableGap);
  }
  FdTable same;
  same.set(8, 4, 100);
  CHECK(refined_lower_bound(2, 10, 4, f1, &same) == 105);
  // clamping: stored (l', m'') with l' <= l, m'' >= m bounds f(l, m)
  FdTable t;
  t.set(5, 4, 9);
  CHECK(*t.lower_bound(7, 3) == 9);
  CHECK_FALSE(t.lower_bound(4, 3).has_value());
  CHECK_FALSE(t.lower_bound(7, 5).has_value());
}

TEST_CASE("stability_certificate") {
  auto c = stability_certificate(1, Rational(1, 2), 100);
  CHECK(c.gamma == Rational(1, 8));
  CHECK(c.bound == 1250);
  CHECK_FALSE(c.below_threshold);
  auto small = stability_certificate(2, Rational(1, 2), 5);
  CHECK(small.below_threshold);
  CHECK(small.bound == small.recursive_bound);
  auto big = stability_certificate(2, Rational(1, 2), 20);
  CHECK_FALSE(big.below_threshold);
  CHECK(big.gamma == Rational(1, 2) * Rational(1, 8) / 512);
  CHECK(big.recursive_bound >= 1);
  CHECK_THROWS_AS(stability_certificate(2, Rational(1), 20), Error);
  // d = 1 bound stays below the exact minimum floor((n+1)^2/4)+1 for all n
  for (long n = 1; n <= 200; ++n) {
    auto k = stability_certificate(1, Rational(1, 3), n);
    CHECK(k.bound <= (n + 1) * (n + 1) / 4 + 1);
    CHECK(k.recursive_bound <= (n + 1) * (n + 1) / 4 + 1);
  }
}

TEST_CASE("fd_search reference cells") {
  auto a = fd_search(1, 3, 2, 3);
  CHECK(a.exhaustive);
  CHECK(a.best_value == 5);
  CHECK(a.witness == std::vector<LatticePoint>{pt({-1}), pt({1}), pt({2})});
  auto b = fd_search(1, 4, 3, 3);
  CHECK(b.best_value == 7);
  CHECK(b.witness == std::vector<LatticePoint>{pt({-2}), pt({-1}), pt({1}), pt({2})});
  // With m = 2 a line through the origin may hold two points: {-e1, e1, e2} has 6 subset sums.
  auto c = fd_search(2, 3, 2, 1);
  CHECK(c.best_value == 6);
  CHECK(in_xi(c.witness, 2, 2));
  CHECK(fs_set_points(PointSet(2, c.witness)).size() == 6);
  CHECK(fs_set_points(PointSet(2, {pt({-1, 0}), pt({1, 0}), pt({0, 1})})).size() == 6);
  CHECK(in_xi({pt({-1, 0}), pt({1, 0}), pt({0, 1})}, 2, 2));
  auto c1 = fd_search(2, 3, 1, 1);
  CHECK(c1.best_value == 7);
  CHECK(equivalent(c1.witness, {pt({1, 0}), pt({0, 1}), pt({1, 1})}, 2));
}

TEST_CASE("fd_search matches a plain brute force over all grid subsets") {
  for (auto [d, n, m, N] : std::vector<std::tuple<std::size_t, std::size_t, std::size_t, long>>{
           {1, 3, 0, 2}, {1, 4, 3, 2}, {2, 3, 1, 1}, {2, 3, 2, 1}, {2, 4, 2, 1}, {2, 4, 3, 1}, {2, 5, 3, 1}, {3, 3, 2, 1}, {3, 4, 2, 1}}) {
    CAPTURE(d);
    CAPTURE(n);
    CAPTURE(m);
    std::vector<std::vector<std::int64_t>> grid;
    std::vector<std::int64_t> p(d, -N);
    while (true) {
      if (std::any_of(p.begin(), p.end(), [](std::int64_t x) { return x != 0; })) grid.push_back(p);
      std::size_t c = d;
      while (c > 0 && p[c - 1] == N) p[--c] = -N;
      if (c == 0) break;
      ++p[c - 1];
    }
    std::uint64_t best = ~std::uint64_t{0};
    std::vector<std::size_t> idx(n);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t from) {
      if (k == n) {
        std::vector<LatticePoint> pts;
        std::vector<std::vector<std::int64_t>> raw;
        for (auto i : idx) {
          pts.push_back(oracle::point(grid[i]));
          raw.push_back(grid[i]);
        }
        if (max_subspace_oracle(PointSet(d, pts)) > m) return;
        best = std::min<std::uint64_t>(best, oracle::subset_sums_points(raw, d).size());
        return;
      }
      for (std::size_t i = from; i < grid.size(); ++i) {
        idx[k] = i;
        rec(k + 1, i + 1);
      }
    };
    rec(0, 0);
    auto r = fd_search(d, n, m, N);
    CHECK(r.exhaustive);
    CHECK(r.best_value == best);
    CHECK(in_xi(r.witness, d, m));
    CHECK(fs_set_points(PointSet(d, r.witness)).size() == r.best_value);
  }
}

TEST_CASE("fd_search determinism across job counts and sampling mode") {
  FdSearchOptions one, three;
  three.jobs = 3;
  auto a = fd_search(2, 5, 3, 2, one);
  auto b = fd_search(2, 5, 3, 2, three);
  CHECK(a.best_value == b.best_value);
  CHECK(a.witness == b.witness);
  CHECK(a.evaluated == b.evaluated);

  FdSearchOptions s;
  s.budget = 500;
  s.seed = 9;
  auto x = fd_search(2, 5, 3, 2, s);
  s.jobs = 2;
  auto y = fd_search(2, 5, 3, 2, s);
  CHECK_FALSE(x.exhaustive);
  CHECK(x.budget_exceeded);
  CHECK(x.best_value == y.best_value);
  CHECK(x.witness == y.witness);
  CHECK(x.best_value >= a.best_value);
}

TEST_CASE("fd_search monotonicity on exhaustive cells") {
  const long N = 1;
  for (std::size_t m = 1; m <= 4; ++m) {
    std::uint64_t prev = 0;
    for (std::size_t n = m + 1; n <= 6; ++n) {
      auto r = fd_search(2, n, m, N);
      if (!r.found) continue;
      CHECK(r.best_value >= prev);
      prev = r.best_value;
    }
  }
  for (std::size_t n = 3; n <= 6; ++n) {
    std::uint64_t prev = ~std::uint64_t{0};
    for (std::size_t m = 1; m <= n; ++m) {
      auto r = fd_search(2, n, m, N);
      if (!r.found) continue;
      CHECK(r.best_value <= prev);
      prev = r.best_value;
    }
  }
}
