// Acceptance criteria. One line per criterion: "[PASS] criterion k: ..." or "[FAIL] ...".
// Usage: acceptance [--only k]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <numeric>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "subsum/error.hpp"
#include "subsum/fs_engine.hpp"
#include "subsum/gap.hpp"
#include "subsum/inverse_linear.hpp"
#include "subsum/pipeline.hpp"
#include "subsum/rd_stability.hpp"

using namespace subsum;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string join(const std::vector<std::int64_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

Scalar q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return Scalar(r);
}

std::uint64_t fs_size_of(const std::vector<std::int64_t>& a) { return oracle::subset_sums(a).size(); }

// Every k-subset of [lo, hi] in lexicographic order.
void for_each_subset(std::int64_t lo, std::int64_t hi, std::size_t k, const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  std::vector<std::int64_t> cur;
  std::function<void(std::int64_t)> rec = [&](std::int64_t from) {
    if (cur.size() == k) {
      fn(cur);
      return;
    }
    for (std::int64_t x = from; x <= hi; ++x) {
      cur.push_back(x);
      rec(x + 1);
      cur.pop_back();
    }
  };
  rec(lo);
}

void criterion1(Outcome& o) {
  auto t0 = Clock::now();
  for (long n = 1; n <= 20; ++n) {
    std::vector<std::int64_t> v;
    for (long x = 1; x <= n; ++x) v.push_back(x);
    auto got = fs_set(ScalarSet::of_integers(v)).size();
    o.require(got == static_cast<std::uint64_t>(oracle::binom(n + 1, 2) + 1), "|FS([1," + std::to_string(n) + "])|");
  }
  std::uint64_t sets = 0, equal = 0;
  for (std::size_t n : {4u, 5u, 6u}) {
    const std::uint64_t minimum = static_cast<std::uint64_t>(oracle::binom(static_cast<std::int64_t>(n) + 1, 2) + 1);
    for_each_subset(1, 12, n, [&](const std::vector<std::int64_t>& b) {
      ++sets;
      std::uint64_t brute = fs_size_of(b);
      std::uint64_t engine = fs_set(ScalarSet::of_integers(b)).size();
      o.require(brute == engine, "engine disagrees with brute force on " + join(b));
      o.require(brute >= minimum, "below the minimum: " + join(b));
      bool eq = brute == minimum;
      equal += eq;
      o.require(eq == oracle::is_homogeneous_ap(b), "equality without homogeneity: " + join(b));
    });
  }
  double secs = seconds_since(t0);
  o.require(secs < 60, "runtime");
  o.detail << sets << " sets in [1,12], " << equal << " equality cases, " << secs << " s";
}

void criterion2(Outcome& o) {
  auto t0 = Clock::now();
  std::uint64_t enumerated = 0;
  for (auto [n, M] : std::vector<std::pair<int, long>>{{4, 0}, {5, 0}, {5, 1}, {6, 0}, {6, 1}, {6, 2}}) {
    long cap = static_cast<long>(oracle::binom(n + 1, 2)) + M + n;
    auto s = thm11_scan(n, M, cap);
    enumerated += s.enumerated;
    o.require(s.violations.empty() && s.formal_violations.empty(),
              "violations at n=" + std::to_string(n) + ", M=" + std::to_string(M));
  }
  for (long n = 5; n <= 10; ++n) {
    std::vector<std::int64_t> v{1};
    for (long x = 3; x <= n + 1; ++x) v.push_back(x);
    auto verdict = thm11_check(ScalarSet::of_integers(v), n - 3);
    std::uint64_t expected = static_cast<std::uint64_t>(oracle::binom(n + 1, 2) + 1 + (n - 3));
    o.require(fs_size_of(v) == expected, "brute |FS| of the breaker at n=" + std::to_string(n));
    o.require(verdict.fs_size == expected, "|FS| of the breaker at n=" + std::to_string(n));
    o.require(verdict.fs_bound_holds && !verdict.structure_holds, "breaker not flagged at n=" + std::to_string(n));
  }
  double secs = seconds_since(t0);
  o.require(secs < 300, "runtime");
  o.detail << enumerated << " sets scanned, breakers n=5..10 flagged, " << secs << " s";
}

void criterion3(Outcome& o) {
  auto t0 = Clock::now();
  std::uint64_t checked = 0;
  for (long m : {3L, 4L}) {
    // Oracle: direct count of new sums for each B and x.
    for (long x = m + 1; x <= 20; ++x) {
      for_each_subset(1, x - 1, static_cast<std::size_t>(m), [&](const std::vector<std::int64_t>& b) {
        ++checked;
        auto before = oracle::subset_sums(b);
        auto with = b;
        with.push_back(x);
        std::uint64_t delta = oracle::subset_sums(with).size() - before.size();
        bool homogeneous = true;
        for (std::size_t i = 0; i < b.size(); ++i) homogeneous &= b[i] * (m + 1) == static_cast<std::int64_t>(i + 1) * x;
        o.require((delta == static_cast<std::uint64_t>(m + 1)) == homogeneous, "oracle mismatch at " + join(b));
      });
    }
    auto s = lemma21_scan(m, 20);
    o.require(s.mismatches.empty(), "lemma21_scan mismatches for m=" + std::to_string(m));
  }
  std::uint64_t exceptions = 0;
  for (long b1 = 1; b1 <= 12; ++b1)
    for (long b2 = b1 + 1; b2 <= 12; ++b2) {
      if (b2 == 2 * b1) continue;
      auto r = lemma21_delta(ScalarSet::of_integers({b1, b2}), q(b1 + b2));
      o.require(r.delta == 3 && r.equality && !r.homogeneous, "m=2 exception at {" + std::to_string(b1) + "," + std::to_string(b2) + "}");
      ++exceptions;
    }
  double secs = seconds_since(t0);
  o.require(secs < 60, "runtime");
  o.detail << checked << " (B,x) pairs, " << exceptions << " m=2 exceptions confirmed, " << secs << " s";
}

std::vector<std::vector<std::int64_t>> random_points(std::mt19937_64& rng, std::size_t n, std::size_t d, std::int64_t radius) {
  std::set<std::vector<std::int64_t>> s;
  std::uniform_int_distribution<std::int64_t> c(-radius, radius);
  while (s.size() < n) {
    std::vector<std::int64_t> p(d);
    bool zero = true;
    for (auto& x : p) {
      x = c(rng);
      zero &= x == 0;
    }
    if (!zero) s.insert(p);
  }
  return {s.begin(), s.end()};
}

PointSet to_pointset(const std::vector<std::vector<std::int64_t>>& pts, std::size_t d) {
  std::vector<LatticePoint> v;
  for (const auto& p : pts) v.push_back(oracle::point(p));
  return PointSet(d, v);
}

// Pairs of points whose difference is parallel to v.
std::uint64_t brute_collisions(const std::vector<std::vector<std::int64_t>>& pts, const std::vector<std::int64_t>& v) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      std::vector<Rational> diff;
      for (std::size_t k = 0; k < v.size(); ++k) diff.emplace_back(pts[j][k] - pts[i][k]);
      std::vector<Rational> vv(v.begin(), v.end());
      c += oracle::rational_rank({diff, vv}) == 1;
    }
  return c;
}

void criterion4(Outcome& o) {
  std::mt19937_64 rng(4001);
  for (int it = 0; it < 1000; ++it) {
    std::size_t d = 2 + it % 2;
    std::size_t n = 3 + rng() % 6;
    auto pts = random_points(rng, n, d, 5);
    auto cert = pair_removal_certificate(to_pointset(pts, d));
    o.require(cert.holds && cert.lhs >= cert.rhs, "inequality fails on instance " + std::to_string(it));
    o.require(cert.lhs == oracle::subset_sums_points(pts, d).size(), "|FS| disagrees on instance " + std::to_string(it));
    // Recompute the right-hand side for the certificate's best pair.
    std::vector<std::vector<std::int64_t>> rest;
    std::vector<std::int64_t> pa, pb;
    for (std::size_t k = 0; k < d; ++k) {
      pa.push_back(cert.best_a.coords()[k].get_si());
      pb.push_back(cert.best_b.coords()[k].get_si());
    }
    for (const auto& p : pts)
      if (p != pa && p != pb) rest.push_back(p);
    auto sums = oracle::subset_sums_points(rest, d);
    std::vector<std::int64_t> v(d);
    for (std::size_t k = 0; k < d; ++k) v[k] = pa[k] - pb[k];
    // Classes of FS(A') along v: points identified when their difference is parallel to v.
    std::vector<std::vector<std::int64_t>> reps;
    for (const auto& s : sums) {
      bool fresh = true;
      for (const auto& r : reps) {
        std::vector<Rational> diff, vv(v.begin(), v.end());
        for (std::size_t k = 0; k < d; ++k) diff.emplace_back(s[k] - r[k]);
        if (oracle::rational_rank({diff, vv}) == 1) {
          fresh = false;
          break;
        }
      }
      if (fresh) reps.push_back(s);
    }
    o.require(cert.rhs == sums.size() + reps.size(), "right-hand side disagrees on instance " + std::to_string(it));
  }
  o.detail << "1000 instances, d in {2,3}, n <= 8, zero violations";
}

void criterion5(Outcome& o) {
  std::mt19937_64 rng(5001);
  int done = 0;
  while (done < 1000) {
    std::size_t n = 3 + rng() % 8;
    auto pts = random_points(rng, n, 2, 6);
    std::vector<LatticePoint> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(oracle::point({pts[i][0] - pts[0][0], pts[i][1] - pts[0][1]}));
    if (oracle::point_rank(diffs) < 2) continue;  // collinear
    ++done;
    try {
      auto u = ungar_pair(to_pointset(pts, 2));
      std::vector<std::int64_t> v{u.a.coords()[0].get_si() - u.b.coords()[0].get_si(),
                                  u.a.coords()[1].get_si() - u.b.coords()[1].get_si()};
      std::uint64_t c = brute_collisions(pts, v);
      o.require(c == u.collisions, "collision count disagrees on instance " + std::to_string(done));
      o.require(2 * c <= n, "pair exceeds n/2 on instance " + std::to_string(done));
    } catch (const Error& e) {
      o.require(false, std::string("ungar_pair threw: ") + e.what());
    }
  }
  o.detail << "1000 non-collinear instances, d=2, n <= 10, zero failures";
}

void criterion6(Outcome& o) {
  auto t0 = Clock::now();
  for (long k = 3; k <= 7; ++k) {
    auto rec = fd_search(1, static_cast<std::size_t>(k), static_cast<std::size_t>(k - 1), k);
    std::uint64_t formula = static_cast<std::uint64_t>((k + 1) * (k + 1) / 4 + 1);
    o.require(rec.exhaustive, "not exhaustive at k=" + std::to_string(k));
    o.require(rec.found && rec.best_value == formula, "value at k=" + std::to_string(k));
    std::vector<std::int64_t> w;
    for (const auto& p : rec.witness) w.push_back(p.coords()[0].get_si());
    o.require(fs_size_of(w) == rec.best_value, "witness |FS| at k=" + std::to_string(k));
    // Up to dilation, witness plus 0 is a run of consecutive integers centered at 0 or +-1/2.
    std::int64_t g = 0;
    for (auto x : w) g = std::gcd(g, std::abs(x));
    auto full = w;
    for (auto& x : full) x /= g;
    full.push_back(0);
    std::sort(full.begin(), full.end());
    bool run = true;
    for (std::size_t i = 1; i < full.size(); ++i) run &= full[i] == full[i - 1] + 1;
    std::int64_t twice_center = full.front() + full.back();
    o.require(run && std::abs(twice_center) <= 1, "witness shape at k=" + std::to_string(k) + ": " + join(w));
    o.detail << "k=" << k << ":" << rec.best_value << " ";
  }
  double secs = seconds_since(t0);
  o.require(secs < 600, "runtime");
  o.detail << "(" << secs << " s)";
}

void criterion7(Outcome& o) {
  std::mt19937_64 rng(7001);
  std::uint64_t low_dim_cases = 0;
  for (int it = 0; it < 500; ++it) {
    std::size_t r = 1 + rng() % 3;
    BoxSlice s;
    std::int64_t g = 0;
    do {
      s.lambda.clear();
      s.intervals.clear();
      g = 0;
      for (std::size_t j = 0; j < r; ++j) {
        std::int64_t l = static_cast<std::int64_t>(rng() % 9) + 1;
        if (rng() & 1) l = -l;
        std::int64_t lo = static_cast<std::int64_t>(rng() % 21) - 10;
        s.lambda.push_back(l);
        s.intervals.emplace_back(lo, lo + static_cast<std::int64_t>(rng() % 30));
        g = std::gcd(g, std::abs(l));
      }
    } while (g != 1);
    // A level hit by a random box point, so fibers are nonempty.
    std::int64_t level = 0;
    for (std::size_t j = 0; j < r; ++j) {
      auto [lo, hi] = s.intervals[j];
      level += s.lambda[j] * (lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1)));
    }
    s.level = level;

    std::vector<std::vector<std::int64_t>> fiber;
    std::vector<std::int64_t> x(r);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t j, std::int64_t acc) {
      if (j == r) {
        if (acc == s.level) fiber.push_back(x);
        return;
      }
      for (std::int64_t v = s.intervals[j].first; v <= s.intervals[j].second; ++v) {
        x[j] = v;
        rec(j + 1, acc + s.lambda[j] * v);
      }
    };
    rec(0, 0);
    Integer exact = fiber_count_exact(s);
    o.require(exact == Integer(static_cast<unsigned long>(fiber.size())), "exact count on instance " + std::to_string(it));

    Rational prod = 1, max_li = 0, max_i = 0, min_i = -1;
    long fact = 1;
    for (std::size_t j = 0; j < r; ++j) {
      Rational len(s.intervals[j].second - s.intervals[j].first + 1);
      prod *= len;
      max_li = std::max(max_li, Rational(Rational(std::abs(s.lambda[j])) * len));
      max_i = std::max(max_i, len);
      min_i = min_i < 0 ? len : std::min(min_i, len);
      if (j) fact *= static_cast<long>(j);
    }
    Rational full_bound = Rational(fact) * prod / max_li + Rational(static_cast<long>(r) - 1);
    o.require(Rational(exact) <= full_bound, "full-dimensional bound on instance " + std::to_string(it));
    o.require(fiber_bound_full_dim(s) == full_bound, "library bound value on instance " + std::to_string(it));

    std::vector<LatticePoint> rel;
    for (const auto& p : fiber) {
      std::vector<std::int64_t> d(r);
      for (std::size_t j = 0; j < r; ++j) d[j] = p[j] - fiber[0][j];
      rel.push_back(oracle::point(d));
    }
    long dim = static_cast<long>(oracle::point_rank(rel));
    if (r >= 2 && dim <= static_cast<long>(r) - 2) {
      ++low_dim_cases;
      Rational low_bound = prod / (max_i * min_i);
      o.require(Rational(exact) <= low_bound, "low-dimensional bound on instance " + std::to_string(it));
    }
  }
  o.detail << "500 slices, " << low_dim_cases << " low-dimensional fibers, zero violations";
}

void criterion8(Outcome& o) {
  std::mt19937_64 rng(8001);
  int instances = 0;
  for (int it = 0; it < 60; ++it) {
    std::size_t r = 2 + it % 2;
    std::vector<Scalar> t{q(1), q(100), q(10000)};
    t.resize(r);
    std::vector<std::int64_t> s(r, 3);
    s[0] = 8;
    auto g = make_gap(t, s);
    if (!g.proper) {
      o.require(false, "planted GAP not proper");
      continue;
    }
    // Plant most of B on the hyperplane x_last = 0, a few points off it.
    std::set<Rational> seen;
    std::vector<Scalar> b;
    std::size_t on = 10 + rng() % 6, off = 1 + rng() % 3;  // 16 nonzero points lie on the plane
    auto draw = [&](bool on_plane) {
      while (true) {
        Rational v = 0;
        for (std::size_t j = 0; j < r; ++j) {
          std::int64_t c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * s[j] + 1)) - s[j];
          if (j + 1 == r) {
            if (on_plane) c = 0;
            else if (c == 0) c = 1;
          }
          v += Rational(c) * t[j].as_rational();
        }
        if (v != 0 && seen.insert(v).second) return Scalar(v);
      }
    };
    for (std::size_t i = 0; i < on; ++i) b.push_back(draw(true));
    for (std::size_t i = 0; i < off; ++i) b.push_back(draw(false));
    Rational eps(51, 100);
    ScalarSet bs(b);
    auto res = clean(g, bs, eps);
    ++instances;
    o.require(res.gap.proper && is_proper(res.gap), "output not proper on instance " + std::to_string(it));
    o.require(res.gap.rank() < r, "rank did not drop on instance " + std::to_string(it));
    for (const auto& y : res.b) o.require(bs.contains(y), "output not a subset on instance " + std::to_string(it));
    if (res.gap.rank() >= 2) {
      auto lift = gap_lift(res.gap, res.b);
      auto worst = oracle::max_in_proper_subspace(lift.points(), res.gap.rank());
      o.require(Rational(static_cast<long>(worst)) <= (1 - eps) * Rational(static_cast<long>(res.b.size())) + 1,
                "subspace condition on instance " + std::to_string(it));
    } else {
      for (const auto& y : res.b) o.require(gap_lift_one(res.gap, y).has_value(), "output outside the GAP");
    }
  }
  o.detail << instances << " planted rank-2/3 instances, zero violations";
}

void criterion9(Outcome& o) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(9001);
  auto basis = Basis::make({{"alpha", Rational(1414213, 1000000), Rational(1, 1000000)},
                            {"beta", Rational(1732050, 1000000), Rational(1, 1000000)}});
  auto formal = [&](Rational c0, Rational ca, Rational cb) { return Scalar(basis, {c0, ca, cb}); };
  std::size_t max_a2 = 0, max_k = 0;
  const std::size_t slack = 0;
  for (int it = 0; it < 50; ++it) {
    std::size_t n = 10 + rng() % 31;
    std::size_t k = rng() % 4;
    Rational d(static_cast<long>(rng() % 5) + 1, static_cast<long>(rng() % 3) + 1);
    d.canonicalize();
    bool use_formal = it % 2 == 1;
    std::vector<Scalar> xs;
    std::set<std::string> seen;
    auto add = [&](const Scalar& x) {
      if (!seen.insert(x.to_string()).second) return false;
      xs.push_back(x);
      return true;
    };
    for (std::size_t i = 1; i <= n - k; ++i) add(formal(d * Rational(static_cast<long>(i)), 0, 0));
    while (xs.size() < n) {
      Scalar x = formal(0, 0, 0);
      if (use_formal) {
        // At most alpha and beta, with small integer coefficients.
        long a = static_cast<long>(rng() % 3), b = static_cast<long>(rng() % 3);
        if (a == 0 && b == 0) a = 1;
        x = formal(0, a, b);
      } else {
        Rational v(static_cast<long>(rng() % 5000) + 1, static_cast<long>(rng() % 7) + 1);
        v.canonicalize();
        x = formal(v, 0, 0);
      }
      add(x);
    }
    ScalarSet a(basis, xs);
    std::uint64_t fs = fs_set(a).size();
    Rational C(Integer(static_cast<unsigned long>(fs)), Integer(static_cast<unsigned long>(n * n)));
    if (std::getenv("ACCEPTANCE_DUMP")) {
      std::cerr << "input " << it << ":";
      for (const auto& x : a) std::cerr << " " << x.to_string();
      std::cerr << "\n";
    }
    std::string tag = "input " + std::to_string(it) + " (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")";
    try {
      auto rep = decompose(a, C);
      o.require(rep.checks.all(), "checks false on " + tag);
      o.require(verify_decomposition(a, rep).all(), "recheck false on " + tag);
      o.require(rep.a2.size() <= k + slack, "|A2| too large on " + tag);
      max_a2 = std::max(max_a2, rep.a2.size());
      max_k = std::max(max_k, k);
      // Exact recomputation of the partition, lattice and product conditions.
      o.require(rep.a1.united(rep.a2) == a && rep.a1.size() + rep.a2.size() == n, "partition on " + tag);
      Integer total = 0;
      bool lattice = true;
      for (const auto& x : rep.a1) {
        auto ratio = commensurability_ratio(x, rep.r);
        lattice &= ratio && ratio->get_den() == 1 && *ratio > 0;
        if (ratio) total += ratio->get_num();
      }
      o.require(lattice, "A1 outside r Z>0 on " + tag);
      Integer rhs = (1 + total) * (Integer(1) << static_cast<mp_bitcnt_t>(rep.a2.size()));
      o.require(Integer(static_cast<unsigned long>(fs)) <= rhs, "product bound on " + tag);
    } catch (const Error& e) {
      o.require(false, std::string(e.what()) + " on " + tag);
    }
  }
  double secs = seconds_since(t0);
  o.require(secs < 600, "runtime");
  o.detail << "50 inputs, n <= 40, max |A2| = " << max_a2 << " with slack " << slack << ", " << secs << " s";
}

void criterion10(Outcome& o) {
  std::mt19937_64 rng(10001);
  FsOptions dense;
  dense.path = FsOptions::Path::Dense;
  FsOptions sparse;
  sparse.path = FsOptions::Path::Sparse;
  double worst = 0;
  for (int it = 0; it < 5; ++it) {
    auto v = oracle::random_distinct(rng, 100, 1, 100000);
    auto a = ScalarSet::of_integers(v);
    auto t0 = Clock::now();
    auto fs = fs_set(a, dense);
    double secs = seconds_since(t0);
    worst = std::max(worst, secs);
    o.require(fs.path() == "dense", "bit-vector path not taken");
    o.require(secs < 1.0, "fs_set took " + std::to_string(secs) + " s");
  }
  for (int it = 0; it < 100; ++it) {
    std::size_t n = 2 + rng() % 60;
    auto v = oracle::random_distinct(rng, n, 1, static_cast<std::int64_t>(100000 / n));
    auto a = ScalarSet::of_integers(v);
    auto x = fs_set(a, dense), y = fs_set(a, sparse);
    o.require(x.path() == "dense" && y.path() != "dense", "path selection");
    o.require(x.size() == y.size() && *x.integer_values() == *y.integer_values(), "paths disagree on instance " + std::to_string(it));
    if (n <= 18) o.require(*x.integer_values() == oracle::subset_sums(v), "brute force disagrees on instance " + std::to_string(it));
  }
  o.detail << "n=100 in [1,1e5]: worst " << worst << " s; 100 dense/sparse comparisons agree";
}

void criterion11(Outcome& o) {
  for (long n = 3; n <= 8; ++n) {
    auto c = stability_certificate(1, Rational(1, 2), n);
    o.require(c.gamma == Rational(1, 8), "gamma for d=1");
    auto rec = fd_search(1, static_cast<std::size_t>(n), static_cast<std::size_t>(c.m), n);
    o.require(rec.exhaustive && rec.found, "d=1 search incomplete at n=" + std::to_string(n));
    o.require(c.bound <= Integer(static_cast<unsigned long>(rec.best_value)), "d=1 certificate exceeds f at n=" + std::to_string(n));
    o.detail << "d1n" << n << ":" << c.bound.get_str() << "<=" << rec.best_value << " ";
  }
  auto big = stability_certificate(1, Rational(1, 2), 100);
  o.require(big.bound == 1250, "d=1, n=100 bound");
  for (long n = 3; n <= 6; ++n) {
    auto c = stability_certificate(2, Rational(1, 2), n);
    FdSearchOptions opts;
    opts.budget = 2'000'000;
    auto rec = fd_search(2, static_cast<std::size_t>(n), static_cast<std::size_t>(std::max(c.m, 1L)), 2, opts);
    o.require(rec.found, "d=2 search found nothing at n=" + std::to_string(n));
    o.require(c.bound <= Integer(static_cast<unsigned long>(rec.best_value)), "d=2 certificate exceeds search at n=" + std::to_string(n));
    o.detail << "d2n" << n << ":" << c.bound.get_str() << "<=" << rec.best_value << " ";
  }
}

struct Criterion {
  const char* name;
  void (*run)(Outcome&);
};

const Criterion kCriteria[] = {
    {"minimum-count law and equality cases", criterion1},
    {"inverse theorem scan and optimality breaker", criterion2},
    {"one-step equality, exhaustive", criterion3},
    {"pair-removal inequality", criterion4},
    {"small-collision pair existence", criterion5},
    {"one-dimensional extremal formula", criterion6},
    {"fiber bounds", criterion7},
    {"cleaning contract", criterion8},
    {"end-to-end decomposition", criterion9},
    {"performance floor and path agreement", criterion10},
    {"stability certificate consistency", criterion11},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  bool all_pass = true;
  int idx = 0;
  for (const auto& c : kCriteria) {
    ++idx;
    if (only && only != idx) continue;
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("threw: ") + e.what());
    }
    std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << idx << ": " << c.name << " -- " << o.detail.str() << "\n";
    for (const auto& f : o.failures) std::cout << "       " << f << "\n";
    all_pass &= o.pass;
  }
  return all_pass ? 0 : 1;
}
