// Exhaustive / sampled search for f_d(n, m) over the grid [-N, N]^d \ {0}.
//
// Negating a single element translates FS and preserves Xi, so a
// configuration is determined up to equivalence by a multiset over "classes"
// {p, -p} (p with first nonzero coordinate positive) with multiplicity 1
// (p alone) or 2 (both p and -p). Signed coordinate permutations act on
// classes; only configurations that are lexicographically least in their
// orbit are evaluated.

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "subsum/error.hpp"
#include "subsum/fs_engine.hpp"
#include "subsum/rd_stability.hpp"

namespace subsum {

namespace {

using Point = std::vector<std::int64_t>;
using Witness = std::vector<Point>;

struct Best {
  bool found = false;
  std::uint64_t value = 0;
  Witness witness;

  void offer(std::uint64_t v, Witness&& w) {
    if (!found || v < value || (v == value && w < witness)) {
      found = true;
      value = v;
      witness = std::move(w);
    }
  }
  void merge(const Best& o) {
    if (o.found) offer(o.value, Witness(o.witness));
  }
};

struct Grid {
  std::size_t d;
  long N;
  std::vector<Point> classes;                 // half-grid representatives, lexicographic
  std::vector<std::vector<std::uint32_t>> images;  // images[g][class]

  std::int64_t key(const Point& p) const {
    std::int64_t k = 0;
    for (auto x : p) k = k * (2 * N + 1) + (x + N);
    return k;
  }

  static bool positive_half(const Point& p) {
    for (auto x : p)
      if (x != 0) return x > 0;
    return false;
  }

  Grid(std::size_t dim, long radius) : d(dim), N(radius) {
    Point p(d, -N);
    while (true) {
      if (positive_half(p)) classes.push_back(p);
      std::size_t c = d;
      while (c > 0 && p[c - 1] == N) p[--c] = -N;
      if (c == 0) break;
      ++p[c - 1];
    }
    std::vector<std::int64_t> keys(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) keys[i] = key(classes[i]);
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (std::uint32_t signs = 0; signs < (1u << d); ++signs) {
        std::vector<std::uint32_t> img(classes.size());
        for (std::size_t i = 0; i < classes.size(); ++i) {
          Point q(d);
          for (std::size_t c = 0; c < d; ++c) q[c] = (signs >> c & 1 ? -1 : 1) * classes[i][perm[c]];
          if (!positive_half(q))
            for (auto& x : q) x = -x;
          img[i] = static_cast<std::uint32_t>(std::lower_bound(keys.begin(), keys.end(), key(q)) - keys.begin());
        }
        images.push_back(std::move(img));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
};

using Config = std::vector<std::pair<std::uint32_t, std::uint8_t>>;  // (class, multiplicity), increasing class

bool is_canonical(const Grid& g, const Config& cfg) {
  Config img;
  for (std::size_t t = 1; t < g.images.size(); ++t) {
    img.clear();
    for (auto [c, mult] : cfg) img.emplace_back(g.images[t][c], mult);
    std::sort(img.begin(), img.end());
    if (img < cfg) return false;
  }
  return true;
}

struct Evaluator {
  std::size_t d, m;
  std::vector<std::int64_t> flat;

  // Returns |FS| when the configuration lies in Xi_d(n, m).
  std::optional<std::uint64_t> operator()(const std::vector<Point>& pts) {
    flat.clear();
    for (const auto& p : pts) flat.insert(flat.end(), p.begin(), p.end());
    if (max_subspace_count_small(flat.data(), pts.size(), d) > m) return std::nullopt;
    return fs_size_small(flat, d);
  }
};

Witness materialize(const Grid& g, const Config& cfg) {
  Witness w;
  for (auto [c, mult] : cfg) {
    w.push_back(g.classes[c]);
    if (mult == 2) {
      Point neg = g.classes[c];
      for (auto& x : neg) x = -x;
      w.push_back(neg);
    }
  }
  std::sort(w.begin(), w.end());
  return w;
}

Integer count_multisets(std::size_t classes, std::size_t n) {
  std::vector<Integer> poly(n + 1, Integer(0));
  poly[0] = 1;
  for (std::size_t i = 0; i < classes; ++i)
    for (std::size_t k = n; k-- > 0;) {
      if (k + 1 <= n) poly[k + 1] += poly[k];
      if (k + 2 <= n) poly[k + 2] += poly[k];
    }
  return poly[n];
}

}  // namespace

FdRecord fd_search(std::size_t d, std::size_t n, std::size_t m, long grid_radius, const FdSearchOptions& opts) {
  if (d < 1 || d > 4) fail(ErrorKind::InvalidArgument, "fd_search supports 1 <= d <= 4");
  if (n < 1) fail(ErrorKind::InvalidArgument, "fd_search needs n >= 1");
  if (m + 1 < d) fail(ErrorKind::InvalidArgument, "fd_search needs m >= d - 1");
  if (grid_radius < 1) fail(ErrorKind::InvalidArgument, "grid radius must be >= 1");

  FdRecord rec;
  rec.d = d;
  rec.n = n;
  rec.m = m;
  rec.grid_radius = grid_radius;
  rec.seed = opts.seed;

  const Grid grid(d, grid_radius);
  const std::size_t H = grid.classes.size();
  rec.search_space = count_multisets(H, n);
  const unsigned jobs = std::max(1u, opts.jobs);
  std::mutex mu;
  Best best;
  std::atomic<std::uint64_t> evaluated{0};

  if (rec.search_space <= Integer(static_cast<unsigned long>(opts.budget))) {
    // Work units: the smallest class and its multiplicity.
    std::vector<std::pair<std::uint32_t, std::uint8_t>> units;
    for (std::uint32_t c = 0; c < H; ++c)
      for (std::uint8_t mult = 1; mult <= 2; ++mult)
        if (mult <= n) units.emplace_back(c, mult);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      Best local;
      Evaluator eval{d, m, {}};
      std::uint64_t count = 0;
      Config cfg;
      std::function<void(std::uint32_t, std::size_t)> rec_fn = [&](std::uint32_t from, std::size_t placed) {
        if (placed == n) {
          if (!is_canonical(grid, cfg)) return;
          ++count;
          auto pts = materialize(grid, cfg);
          if (auto v = eval(pts)) local.offer(*v, std::move(pts));
          return;
        }
        const std::size_t need = n - placed;
        for (std::uint32_t c = from; c < H; ++c) {
          if (2 * (H - c) < need) break;
          for (std::uint8_t mult = 1; mult <= 2 && mult <= need; ++mult) {
            cfg.emplace_back(c, mult);
            rec_fn(c + 1, placed + mult);
            cfg.pop_back();
          }
        }
      };
      for (std::size_t u; (u = next.fetch_add(1)) < units.size();) {
        cfg.assign(1, units[u]);
        rec_fn(units[u].first + 1, units[u].second);
      }
      evaluated += count;
      std::lock_guard lock(mu);
      best.merge(local);
    };
    std::vector<std::thread> threads;
    for (unsigned j = 1; j < jobs; ++j) threads.emplace_back(work);
    work();
    for (auto& t : threads) t.join();
    rec.exhaustive = true;
  } else {
    // Seeded sampling: sample i uses its own generator, so the result does not depend on the job count.
    rec.budget_exceeded = true;
    const std::int64_t side = 2 * grid_radius + 1;
    std::int64_t total_points = 1;
    for (std::size_t c = 0; c < d; ++c) total_points *= side;
    if (static_cast<std::int64_t>(n) <= total_points - 1) {
      std::atomic<std::uint64_t> next{0};
      auto work = [&] {
        Best local;
        Evaluator eval{d, m, {}};
        std::uint64_t count = 0;
        for (std::uint64_t i; (i = next.fetch_add(1)) < opts.budget;) {
          std::seed_seq seq{opts.seed, i};
          std::mt19937_64 rng(seq);
          std::uniform_int_distribution<std::int64_t> coord(-grid_radius, grid_radius);
          std::vector<Point> pts;
          while (pts.size() < n) {
            Point p(d);
            for (auto& x : p) x = coord(rng);
            if (std::all_of(p.begin(), p.end(), [](std::int64_t x) { return x == 0; })) continue;
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
          }
          std::sort(pts.begin(), pts.end());
          ++count;
          if (auto v = eval(pts)) local.offer(*v, std::move(pts));
        }
        evaluated += count;
        std::lock_guard lock(mu);
        best.merge(local);
      };
      std::vector<std::thread> threads;
      for (unsigned j = 1; j < jobs; ++j) threads.emplace_back(work);
      work();
      for (auto& t : threads) t.join();
    }
  }
  rec.evaluated = evaluated;
  rec.found = best.found;
  rec.best_value = best.value;
  for (const auto& p : best.witness) {
    std::vector<Integer> c;
    for (auto x : p) c.emplace_back(static_cast<long>(x));
    rec.witness.emplace_back(c);
  }
  return rec;
}

}  // namespace subsum
