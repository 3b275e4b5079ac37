#include "subsum/inverse_linear.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>

#include "subsum/error.hpp"
#include "subsum/fs_engine.hpp"

namespace subsum {

namespace {

Integer triangular(std::size_t n) { return Integer(static_cast<unsigned long>(n)) * (n + 1) / 2; }

}  // namespace

Lemma21Result lemma21_delta(const ScalarSet& b, const Scalar& x) {
  if (b.empty()) fail(ErrorKind::InvalidArgument, "lemma21_delta needs |B| >= 1");
  if (!b.all_positive()) fail(ErrorKind::NonPositiveElement, "B must be positive");
  auto sorted = b.sorted_by_value();
  if (compare(x, sorted.back()) != std::strong_ordering::greater)
    fail(ErrorKind::XNotLargest, "x = " + x.to_string() + " does not exceed max(B)");
  const std::size_t m = b.size();
  Lemma21Result r;
  r.delta = ap_cover_count(fs_set(b), x);
  r.equality = r.delta == m + 1;
  r.homogeneous = true;
  for (std::size_t k = 1; k <= m; ++k)
    if (!(sorted[k - 1] == x.scaled(Rational(static_cast<long>(k), static_cast<long>(m + 1))))) r.homogeneous = false;
  return r;
}

Lemma21Scan lemma21_scan(long m, long x_max) {
  if (m < 1) fail(ErrorKind::InvalidArgument, "lemma21_scan needs m >= 1");
  Lemma21Scan out;
  out.m = m;
  out.x_max = x_max;
  std::vector<std::int64_t> b(static_cast<std::size_t>(m));
  for (long x = m + 1; x <= x_max; ++x) {
    // Subsets of [1, x - 1] in lexicographic order.
    for (long i = 0; i < m; ++i) b[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
      auto r = lemma21_delta(ScalarSet::of_integers(b), Scalar(x));
      ++out.checked;
      out.equality_cases += r.equality;
      out.homogeneous_cases += r.homogeneous;
      if (r.equality != r.homogeneous) out.mismatches.emplace_back(b, x);
      long i = m - 1;
      while (i >= 0 && b[static_cast<std::size_t>(i)] == x - m + i) --i;
      if (i < 0) break;
      ++b[static_cast<std::size_t>(i)];
      for (long k = i + 1; k < m; ++k) b[static_cast<std::size_t>(k)] = b[static_cast<std::size_t>(k - 1)] + 1;
    }
  }
  return out;
}

Thm11Verdict thm11_check(const ScalarSet& a, long M) {
  if (a.empty()) fail(ErrorKind::InvalidArgument, "thm11_check needs n >= 1");
  if (M < 0) fail(ErrorKind::InvalidArgument, "M must be nonnegative");
  if (!a.all_positive()) fail(ErrorKind::NonPositiveElement, "A must be positive");
  Thm11Verdict v;
  v.n = a.size();
  v.M = M;
  v.fs_size = fs_set(a).size();
  v.fs_bound = triangular(v.n) + 1 + M;
  v.fs_bound_holds = Integer(static_cast<unsigned long>(v.fs_size)) <= v.fs_bound;
  v.generator_a = group_generator(a.elements());
  if (v.generator_a) {
    Integer total = 0;
    for (const auto& x : a) {
      Rational q = *commensurability_ratio(x, *v.generator_a);
      total += q.get_num();  // integral by construction of the generator
    }
    v.normalized_sum = total;
    v.structure_holds = total <= triangular(v.n) + M;
  }
  v.equivalence_expected = v.n >= 4 && M <= static_cast<long>(v.n) - 4;
  return v;
}

namespace {

struct ScanWorker {
  int n;
  long M;
  long cap;
  std::uint64_t fs_bound;
  std::uint64_t sum_bound;
  std::vector<std::int64_t> tuple;
  ScanResult local;
  std::uint64_t formal_left;
  BasisPtr basis;

  void visit() {
    ++local.enumerated;
    std::uint64_t size = fs_size_small(tuple, 1);
    bool fs_side = size <= fs_bound;
    std::int64_t g = 0, total = 0;
    for (auto x : tuple) {
      g = std::gcd(g, x);
      total += x;
    }
    bool structure = static_cast<std::uint64_t>(total / g) <= sum_bound;
    if (fs_side != structure) local.violations.push_back(tuple);
    if (!fs_side) return;
    ++local.fs_side_true;
    if (formal_left == 0) return;
    --formal_left;
    // a_n + alpha is incommensurable with the rest, so the structure side is false.
    std::vector<Scalar> elems;
    for (std::size_t i = 0; i + 1 < tuple.size(); ++i)
      elems.emplace_back(basis, std::vector<Rational>{Rational(static_cast<long>(tuple[i])), Rational(0)});
    elems.emplace_back(basis, std::vector<Rational>{Rational(static_cast<long>(tuple.back())), Rational(1)});
    auto verdict = thm11_check(ScalarSet(elems), M);
    ++local.formal_checked;
    if (verdict.fs_bound_holds != verdict.structure_holds) {
      std::string s = "{";
      for (std::size_t i = 0; i < elems.size(); ++i) s += (i ? "," : "") + elems[i].to_string();
      local.formal_violations.push_back(s + "}");
    }
  }

  void extend(std::int64_t prev, std::int64_t partial, int k, const std::function<bool()>& over_budget) {
    if (k == n) {
      visit();
      return;
    }
    const std::int64_t rest = n - k - 1;
    for (std::int64_t v = prev + 1;; ++v) {
      if (partial + v + rest * v + rest * (rest + 1) / 2 > cap) break;
      if (over_budget()) return;
      tuple.push_back(v);
      extend(v, partial + v, k + 1, over_budget);
      tuple.pop_back();
    }
  }
};

}  // namespace

ScanResult thm11_scan(int n, long M, long sum_cap, const ScanOptions& opts) {
  if (n < 4) fail(ErrorKind::InvalidArgument, "thm11_scan needs n >= 4");
  if (M < 0) fail(ErrorKind::InvalidArgument, "M must be nonnegative");
  const std::uint64_t sum_bound = static_cast<std::uint64_t>(n) * (n + 1) / 2 + static_cast<std::uint64_t>(M);
  auto basis = Basis::make({{"alpha", Rational(1414213, 1000000), Rational(1, 1000000)}});

  // Shard on the smallest element.
  std::vector<std::int64_t> firsts;
  for (std::int64_t a1 = 1;; ++a1) {
    const std::int64_t rest = n - 1;
    if (a1 + rest * a1 + rest * (rest + 1) / 2 > sum_cap) break;
    firsts.push_back(a1);
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> seen{0};
  std::atomic<bool> exceeded{false};
  std::mutex mu;
  ScanResult result;

  auto work = [&] {
    ScanWorker w{n, M, sum_cap, sum_bound + 1, sum_bound, {}, {}, 0, basis};
    std::function<bool()> over = [&] {
      if (seen.fetch_add(1, std::memory_order_relaxed) >= opts.budget) {
        exceeded = true;
        return true;
      }
      return exceeded.load(std::memory_order_relaxed);
    };
    for (std::size_t i; (i = next.fetch_add(1)) < firsts.size();) {
      w.formal_left = opts.formal_checks;  // per shard, so the outcome is independent of scheduling
      w.tuple = {firsts[i]};
      w.extend(firsts[i], firsts[i], 1, over);
    }
    std::lock_guard lock(mu);
    result.enumerated += w.local.enumerated;
    result.fs_side_true += w.local.fs_side_true;
    result.formal_checked += w.local.formal_checked;
    result.violations.insert(result.violations.end(), w.local.violations.begin(), w.local.violations.end());
    result.formal_violations.insert(result.formal_violations.end(), w.local.formal_violations.begin(),
                                    w.local.formal_violations.end());
  };
  const unsigned jobs = std::max(1u, opts.jobs);
  std::vector<std::thread> threads;
  for (unsigned j = 1; j < jobs; ++j) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();
  if (exceeded) fail(ErrorKind::BudgetExceeded, "thm11_scan enumerated more than " + std::to_string(opts.budget) + " sets");
  std::sort(result.violations.begin(), result.violations.end());
  std::sort(result.formal_violations.begin(), result.formal_violations.end());
  return result;
}

}  // namespace subsum
