#include "subsum/rd_stability.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <tuple>

#include "subsum/error.hpp"
#include "subsum/fs_engine.hpp"
#include "subsum/integer_matrix.hpp"

namespace subsum {

namespace {

using i128 = __int128;

// Visits every k-subset of {0..n-1} as an increasing index vector.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Max number of rows lying in the span of some <= (d-1) rows.
template <class T>
std::size_t max_in_proper_span(const std::vector<std::vector<T>>& rows, std::size_t d) {
  const std::size_t n = rows.size();
  std::size_t best = 0;
  for (std::size_t k = 1; k + 1 <= d && k <= n; ++k) {
    for_each_subset(n, k, [&](const std::vector<std::size_t>& idx) {
      std::vector<std::vector<T>> s;
      for (auto i : idx) s.push_back(rows[i]);
      if (bareiss_rank(s) != k) return;  // spans are covered by independent subsets
      std::size_t count = 0;
      for (std::size_t p = 0; p < n; ++p) {
        s.push_back(rows[p]);
        if (bareiss_rank(s) == k) ++count;
        s.pop_back();
      }
      best = std::max(best, count);
    });
  }
  return best;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

}  // namespace

std::size_t max_subspace_count_small(const std::int64_t* flat, std::size_t n, std::size_t dim) {
  for (std::size_t i = 0; i < n; ++i) {
    bool zero = true;
    for (std::size_t c = 0; c < dim; ++c) zero &= flat[i * dim + c] == 0;
    if (zero) fail(ErrorKind::ZeroElement, "Xi sets exclude the origin");
  }
  if (dim == 1) return 0;
  if (dim == 2) {
    // Lines through the origin: group by primitive direction.
    std::vector<std::pair<std::int64_t, std::int64_t>> dirs(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t x = flat[2 * i], y = flat[2 * i + 1];
      std::int64_t g = gcd64(x, y);
      x /= g;
      y /= g;
      if (x < 0 || (x == 0 && y < 0)) x = -x, y = -y;
      dirs[i] = {x, y};
    }
    std::sort(dirs.begin(), dirs.end());
    std::size_t best = 0;
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j < n && dirs[j] == dirs[i]) ++j;
      best = std::max(best, j - i);
      i = j;
    }
    return best;
  }
  std::vector<std::vector<i128>> rows(n, std::vector<i128>(dim));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < dim; ++c) rows[i][c] = flat[i * dim + c];
  return max_in_proper_span(rows, dim);
}

std::size_t max_subspace_count(const PointSet& a) {
  const std::size_t d = a.dim();
  bool small = d <= 4;
  for (const auto& p : a) {
    if (p.is_zero()) fail(ErrorKind::ZeroElement, "Xi sets exclude the origin");
    for (const auto& x : p.coords()) small &= abs(x) <= 1000;
  }
  if (d == 1) return 0;
  if (small) {
    std::vector<std::int64_t> flat;
    for (const auto& p : a)
      for (const auto& x : p.coords()) flat.push_back(x.get_si());
    return max_subspace_count_small(flat.data(), a.size(), d);
  }
  IntMatrix rows;
  for (const auto& p : a) rows.push_back(p.coords());
  return max_in_proper_span(rows, d);
}

std::uint64_t collision_count(const PointSet& a, const LatticePoint& v) {
  if (v.dim() != a.dim()) fail(ErrorKind::DomainMismatch, "direction has the wrong dimension");
  std::uint64_t total = 0;
  for (auto s : direction_class_sizes(a.points(), v)) total += s * (s - 1) / 2;
  return total;
}

UngarPair ungar_pair(const PointSet& a) {
  const std::size_t n = a.size();
  if (n < 3) fail(ErrorKind::InvalidArgument, "ungar_pair needs at least 3 points");
  IntMatrix diffs;
  for (std::size_t i = 1; i < n; ++i) diffs.push_back((a[i] - a[0]).coords());
  if (rank(diffs) <= 1) fail(ErrorKind::CollinearInput, "points lie on one affine line");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::uint64_t c = collision_count(a, a[i] - a[j]);
      if (2 * c <= n) return {a[i], a[j], c};
    }
  fail(ErrorKind::NotFound, "no pair with |E_A(a-b)| <= n/2");
}

PairRemovalCertificate pair_removal_certificate(const PointSet& a) {
  if (a.size() < 3) fail(ErrorKind::InvalidArgument, "pair_removal_certificate needs at least 3 points");
  PairRemovalCertificate cert;
  cert.lhs = fs_set_points(a).size();
  bool first = true;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      auto rest = fs_set_points(a.without(a[i], a[j]));
      std::uint64_t value = rest.size() + direction_class_count(rest, a[i] - a[j]);
      if (first || value > cert.rhs) {
        cert.rhs = value;
        cert.best_a = a[i];
        cert.best_b = a[j];
        first = false;
      }
    }
  cert.holds = cert.lhs >= cert.rhs;
  return cert;
}

std::optional<Integer> FdTable::lower_bound(long l, long m) const {
  std::optional<Integer> best;
  for (const auto& [key, value] : values_)
    if (key.first <= l && key.second >= m && (!best || value > *best)) best = value;
  return best;
}

FdTable FdTable::dimension_one(long max_l) {
  // Xi_1(l, m) does not depend on m >= 0, so each value is stored at m = l.
  FdTable t;
  for (long l = 0; l <= max_l; ++l) t.set(l, l, Integer((l + 1) * (l + 1) / 4 + 1));
  return t;
}

FdTable FdTable::constant(long max_l, const Integer& value) {
  FdTable t;
  for (long l = 0; l <= max_l; ++l) t.set(l, l, value);
  return t;
}

namespace {

long ceil_div(long a, long b) { return (a + b - 1) / b; }

bool recursion_applies(std::size_t d, long n, long m) {
  return d >= 2 && n - 2 >= m && m >= static_cast<long>(d) - 1 && m >= 3;
}

long collision_loss(long n, long m) {
  long g = n - 2 - m;
  return ceil_div(g * g, 2 * n - 2 - m);
}

// Provably empty Xi_k(l, m'): the subspace {0} forces m' >= 0, and any
// min(l, k-1) points lie in a proper subspace.
bool class_empty(std::size_t k, long l, long m) {
  if (m < 0) return true;
  return k >= 2 && m < std::min<long>(l, static_cast<long>(k) - 1);
}

}  // namespace

Integer refined_lower_bound(std::size_t d, long n, long m, const FdTable& lower_dim, const FdTable* same_dim) {
  if (!recursion_applies(d, n, m))
    fail(ErrorKind::InvalidArgument, "refined_lower_bound needs n-2 >= m >= d-1 >= 1 and m >= 3");
  const long q = collision_loss(n, m);
  std::optional<Integer> best;
  for (long l = ceil_div(n - 4, 2); l <= n - 2; ++l) {
    if (class_empty(d - 1, l, l - q)) continue;
    auto v = lower_dim.lower_bound(l, l - q);
    if (!v)
      fail(ErrorKind::TableGap, "no f_" + std::to_string(d - 1) + " entry bounds (" + std::to_string(l) + ", " +
                                    std::to_string(l - q) + ")");
    if (!best || *v < *best) best = *v;
  }
  Integer first = 1;
  if (recursion_applies(d, n - 2, m)) first = refined_lower_bound(d, n - 2, m, lower_dim, same_dim);
  if (same_dim)
    if (auto v = same_dim->lower_bound(n - 2, m); v && *v > first) first = *v;
  return first + best.value_or(Integer(0));
}

Integer recursive_lower_bound(std::size_t d, long n, long m) {
  std::map<std::tuple<std::size_t, long, long>, Integer> memo;
  std::function<Integer(std::size_t, long, long)> lb = [&](std::size_t k, long l, long mm) -> Integer {
    if (k == 1) {
      if (l <= 0) return 1;
      long h = l / 2 + 1;  // ceil((l-1)/2) + 1
      return Integer(h * (h - 1) / 2 + 1);
    }
    if (!recursion_applies(k, l, mm)) return 1;
    auto key = std::make_tuple(k, l, mm);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const long q = collision_loss(l, mm);
    std::optional<Integer> best;
    for (long j = ceil_div(l - 4, 2); j <= l - 2; ++j) {
      if (class_empty(k - 1, j, j - q)) continue;
      Integer v = lb(k - 1, j, j - q);
      if (!best || v < *best) best = v;
    }
    Integer out = lb(k, l - 2, mm) + best.value_or(Integer(0));
    memo.emplace(key, out);
    return out;
  };
  if (d == 0) fail(ErrorKind::InvalidArgument, "dimension must be >= 1");
  return lb(d, n, m);
}

namespace {

Rational gamma_of(std::size_t d, const Rational& eps) {
  if (d == 1) return Rational(1, 8);
  Rational inner = gamma_of(d - 1, eps * eps / 32);
  Integer pow8 = 1;
  for (std::size_t i = 0; i < d + 1; ++i) pow8 *= 8;
  Rational g = eps * inner / Rational(pow8);
  g.canonicalize();
  return g;
}

long ceil_rational(const Rational& q) {
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return c.get_si();
}

long threshold_of(std::size_t d, const Rational& eps) {
  if (d == 1) return 1;
  long t = std::max<long>(ceil_rational(Rational(4) / eps), 8);
  const long need = std::max<long>(3, static_cast<long>(d) - 1);
  long n0 = 1;
  while (ceil_rational((1 - eps) * n0) < need) ++n0;
  t = std::max(t, n0);
  return std::max(t, 8 * threshold_of(d - 1, eps * eps / 32));
}

}  // namespace

StabilityCertificate stability_certificate(std::size_t d, const Rational& eps, long n) {
  if (d == 0) fail(ErrorKind::InvalidArgument, "dimension must be >= 1");
  if (eps <= 0 || eps >= 1) fail(ErrorKind::InvalidArgument, "eps must lie in (0, 1)");
  if (n < 1) fail(ErrorKind::InvalidArgument, "n must be >= 1");
  StabilityCertificate c;
  c.d = d;
  c.eps = eps;
  c.n = n;
  c.m = ceil_rational((1 - eps) * n);
  c.gamma = gamma_of(d, eps);
  c.threshold = threshold_of(d, eps);
  c.below_threshold = n < c.threshold;
  c.recursive_bound = recursive_lower_bound(d, n, c.m);
  if (c.below_threshold) {
    c.bound = c.recursive_bound;
  } else {
    Integer power = 1;
    for (std::size_t i = 0; i < d + 1; ++i) power *= n;
    Rational v = c.gamma * Rational(power);
    mpz_cdiv_q(c.bound.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  }
  return c;
}

}  // namespace subsum
