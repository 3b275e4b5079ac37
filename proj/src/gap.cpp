#include "subsum/gap.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <unordered_map>

#include "subsum/error.hpp"
#include "subsum/fs_engine.hpp"

namespace subsum {

namespace {

using i128 = __int128;

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

// Differences as integer vectors over their common basis, scaled by the lcm
// of all denominators.
struct ScaledDiffs {
  BasisPtr basis;
  Integer scale = 1;
  IntMatrix rows;
};

ScaledDiffs scale_diffs(const std::vector<Scalar>& diffs) {
  ScaledDiffs out;
  out.basis = Basis::rational();
  for (const auto& t : diffs) out.basis = common_basis(out.basis, t.basis_ptr());
  std::vector<Scalar> lifted;
  for (const auto& t : diffs) lifted.push_back(t.promoted(out.basis));
  for (const auto& t : lifted)
    for (const auto& c : t.coords()) mpz_lcm(out.scale.get_mpz_t(), out.scale.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& t : lifted) {
    IntVector row;
    for (const auto& c : t.coords()) {
      Rational v = c * out.scale;
      row.push_back(v.get_num());
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

void validate(const SymmetricGAP& q) {
  if (q.diffs.size() != q.half_sides.size()) fail(ErrorKind::InvalidArgument, "GAP needs one half-side per difference");
  for (const auto& t : q.diffs)
    if (t.is_zero()) fail(ErrorKind::InvalidArgument, "GAP differences must be nonzero");
  for (auto s : q.half_sides)
    if (s <= 0) fail(ErrorKind::InvalidArgument, "GAP half-sides must be positive");
}

Scalar combine(const std::vector<Scalar>& t, const std::vector<std::size_t>& idx, const IntVector& coeffs) {
  Scalar acc(0);
  for (std::size_t k = 0; k < idx.size(); ++k)
    if (coeffs[k] != 0) acc += t[idx[k]].scaled(Rational(coeffs[k]));
  return acc;
}

}  // namespace

Integer SymmetricGAP::box_size() const {
  Integer n = 1;
  for (auto s : half_sides) n *= Integer(2 * s + 1);
  return n;
}

std::string SymmetricGAP::to_string() const {
  if (diffs.empty()) return "{0}";
  std::string out;
  for (std::size_t j = 0; j < diffs.size(); ++j) {
    if (j) out += " + ";
    out += diffs[j].to_string() + "*[-" + std::to_string(half_sides[j]) + "," + std::to_string(half_sides[j]) + "]";
  }
  return out;
}

SymmetricGAP make_gap(std::vector<Scalar> diffs, std::vector<std::int64_t> half_sides, std::uint64_t cap) {
  SymmetricGAP q{std::move(diffs), std::move(half_sides), false};
  validate(q);
  q.proper = is_proper(q, cap);
  return q;
}

bool is_proper(const SymmetricGAP& q, std::uint64_t cap) {
  validate(q);
  const std::size_t r = q.rank();
  if (r <= 1) return true;
  auto sd = scale_diffs(q.diffs);
  if (rank(sd.rows) == r) return true;

  Integer box = q.box_size();
  if (box > Integer(std::to_string(cap)))
    fail(ErrorKind::CapacityExceeded, "properness of a GAP with box size " + box.get_str() + " exceeds the enumeration cap");
  std::vector<Scalar> elems;
  Scalar corner(0);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::int64_t k = 0; k < 2 * q.half_sides[j]; ++k) elems.push_back(q.diffs[j]);
    corner -= q.diffs[j].scaled(Rational(q.half_sides[j]));
  }
  std::vector<Scalar> seed{corner};
  auto fs = fs_build(elems, seed);
  // After the copies of t_j the set must have grown by the full factor.
  const auto& steps = fs.step_sizes();
  std::uint64_t expect = 1;
  std::size_t at = 0;
  for (std::size_t j = 0; j < r; ++j) {
    expect *= static_cast<std::uint64_t>(2 * q.half_sides[j] + 1);
    at += static_cast<std::size_t>(2 * q.half_sides[j]);
    if (steps[at - 1] != expect) return false;
  }
  return true;
}

bool in_box(const SymmetricGAP& q, const LatticePoint& x) {
  if (x.dim() != q.rank()) return false;
  for (std::size_t j = 0; j < x.dim(); ++j)
    if (abs(x[j]) > q.half_sides[j]) return false;
  return true;
}

Scalar gap_project(const SymmetricGAP& q, const LatticePoint& x) {
  if (!in_box(q, x)) fail(ErrorKind::InvalidArgument, "point " + x.to_string() + " is outside the GAP box");
  Scalar acc(0);
  for (std::size_t j = 0; j < q.rank(); ++j)
    if (x[j] != 0) acc += q.diffs[j].scaled(Rational(x[j]));
  return acc;
}

std::optional<LatticePoint> gap_lift_one(const SymmetricGAP& q, const Scalar& y) {
  const std::size_t r = q.rank();
  if (r == 0) return y.is_zero() ? std::optional<LatticePoint>(LatticePoint::zero(0)) : std::nullopt;
  std::vector<Integer> x(r, Integer(0));
  std::optional<LatticePoint> found;
  // Enumerate the first r-1 coordinates and solve for the last one.
  std::function<void(std::size_t, const Scalar&)> dfs = [&](std::size_t j, const Scalar& rest) {
    if (found) return;
    if (j + 1 == r) {
      if (rest.is_zero()) {
        x[j] = 0;
        found = LatticePoint(x);
        return;
      }
      auto ratio = commensurability_ratio(rest, q.diffs[j]);
      if (!ratio || ratio->get_den() != 1 || abs(ratio->get_num()) > q.half_sides[j]) return;
      x[j] = ratio->get_num();
      found = LatticePoint(x);
      return;
    }
    for (std::int64_t v = -q.half_sides[j]; v <= q.half_sides[j] && !found; ++v) {
      x[j] = v;
      dfs(j + 1, v == 0 ? rest : rest - q.diffs[j].scaled(Rational(v)));
    }
  };
  dfs(0, y);
  return found;
}

PointSet gap_lift(const SymmetricGAP& q, const ScalarSet& r) {
  if (!q.proper) fail(ErrorKind::InvalidArgument, "lifts are defined for proper GAPs only");
  std::vector<LatticePoint> pts;
  pts.reserve(r.size());
  for (const auto& y : r) {
    auto p = gap_lift_one(q, y);
    if (!p) fail(ErrorKind::NotInGAP, y.to_string() + " is not in " + q.to_string());
    pts.push_back(std::move(*p));
  }
  return PointSet(q.rank(), std::move(pts));
}

SymmetricGAP properize(const SymmetricGAP& q, std::uint64_t cap) {
  validate(q);
  if (is_proper(q, cap)) {
    SymmetricGAP out = q;
    out.proper = true;
    return out;
  }
  auto sd = scale_diffs(q.diffs);
  IntMatrix gens = hermite_basis(sd.rows, sd.basis->dimension());
  std::vector<Integer> spread(gens.size(), Integer(0));
  for (std::size_t j = 0; j < q.rank(); ++j) {
    auto c = lattice_coordinates(gens, sd.rows[j]);
    for (std::size_t l = 0; l < gens.size(); ++l) spread[l] += abs((*c)[l]) * q.half_sides[j];
  }
  SymmetricGAP out;
  for (std::size_t l = 0; l < gens.size(); ++l) {
    if (spread[l] == 0) continue;
    std::vector<Rational> coords;
    for (const auto& e : gens[l]) coords.emplace_back(e, sd.scale);
    out.diffs.emplace_back(sd.basis, std::move(coords));
    if (!spread[l].fits_slong_p()) fail(ErrorKind::CapacityExceeded, "properized half-side overflows");
    out.half_sides.push_back(spread[l].get_si());
  }
  out.proper = true;  // Hermite rows are Q-independent
  return out;
}

SliceResult slice_reduce(const SymmetricGAP& q, const std::vector<Rational>& v, const Rational& eta) {
  validate(q);
  const std::size_t r = q.rank();
  if (!q.proper) fail(ErrorKind::InvalidArgument, "slice_reduce needs a proper GAP");
  if (v.size() != r) fail(ErrorKind::InvalidArgument, "normal vector has the wrong dimension");
  if (eta <= 0 || eta > 1) fail(ErrorKind::InvalidArgument, "eta must lie in (0, 1]");

  Integer den = 1;
  for (const auto& c : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  IntVector vi;
  for (const auto& c : v) vi.push_back(Rational(c * den).get_num());
  vi = primitive(vi);

  std::vector<std::size_t> J, rest;
  for (std::size_t j = 0; j < r; ++j) (vi[j] != 0 ? J : rest).push_back(j);
  if (J.empty()) fail(ErrorKind::InvalidArgument, "normal vector is zero");

  // V is a graph over the other coordinates, so each 2 s_j + 1 (j in J) caps the density.
  for (auto j : J)
    if (Rational(1, 2 * q.half_sides[j] + 1) < eta)
      fail(ErrorKind::HypothesisFailed, "hyperplane density is below eta (side " + std::to_string(2 * q.half_sides[j] + 1) + ")");

  BoxSlice w_slice;
  for (auto j : J) {
    if (!vi[j].fits_slong_p()) fail(ErrorKind::InvalidArgument, "normal vector entries too large");
    w_slice.lambda.push_back(vi[j].get_si());
    w_slice.intervals.emplace_back(-q.half_sides[j], q.half_sides[j]);
  }
  Integer w_count = fiber_count_exact(w_slice);
  SliceResult out;
  out.density = Rational(w_count, w_slice.box_size());
  out.density.canonicalize();
  if (out.density < eta)
    fail(ErrorKind::HypothesisFailed, "hyperplane holds a " + to_string(out.density) + " fraction of the box, below eta = " + to_string(eta));
  out.w_size = w_count.get_ui();

  auto W = fiber_points(w_slice);
  IntMatrix basis = hermite_basis(W, J.size());
  Integer s_w = 0;
  for (const auto& w : W) {
    auto c = lattice_coordinates(basis, w);
    for (const auto& e : *c) s_w = std::max(s_w, Integer(abs(e)));
  }
  out.s_w = s_w.get_si();

  SymmetricGAP next;
  for (const auto& b : basis) {
    Scalar t = combine(q.diffs, J, b);
    if (t.is_zero()) continue;
    next.diffs.push_back(t);
    next.half_sides.push_back(out.s_w);
  }
  for (auto i : rest) {
    next.diffs.push_back(q.diffs[i]);
    next.half_sides.push_back(q.half_sides[i]);
  }
  SymmetricGAP proper = properize(next);
  out.reproperized = proper.diffs != next.diffs || proper.half_sides != next.half_sides;
  out.gap = std::move(proper);
  return out;
}

std::pair<IntVector, std::size_t> densest_hyperplane(const PointSet& points) {
  const std::size_t r = points.dim();
  if (r < 2) fail(ErrorKind::InvalidArgument, "hyperplanes need dimension >= 2");
  std::set<IntVector> dirs;
  for (const auto& p : points)
    if (!p.is_zero()) dirs.insert(primitive(p.coords()));
  for (std::size_t i = 0; i < r; ++i) {
    IntVector e(r, Integer(0));
    e[i] = 1;
    dirs.insert(e);
  }
  std::vector<IntVector> cand(dirs.begin(), dirs.end());

  std::set<IntVector> normals;
  std::vector<std::size_t> pick(r - 1);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t k, std::size_t from) {
    if (k + 1 == r) {
      IntMatrix rows;
      for (auto i : pick) rows.push_back(cand[i]);
      if (auto n = primitive_normal(rows)) normals.insert(*n);
      return;
    }
    for (std::size_t i = from; i < cand.size(); ++i) {
      pick[k] = i;
      choose(k + 1, i + 1);
    }
  };
  choose(0, 0);

  IntVector best;
  std::size_t best_count = 0;
  bool have = false;
  for (const auto& n : normals) {
    std::size_t count = 0;
    LatticePoint np(n);
    for (const auto& p : points)
      if (dot(p, np) == 0) ++count;
    if (!have || count > best_count) {
      best = n;
      best_count = count;
      have = true;
    }
  }
  return {best, best_count};
}

CleanResult clean(const SymmetricGAP& q, const ScalarSet& b, const Rational& eps) {
  validate(q);
  if (!q.proper) fail(ErrorKind::InvalidArgument, "clean needs a proper GAP");
  if (eps <= 0 || eps >= 1) fail(ErrorKind::InvalidArgument, "eps must lie in (0, 1)");
  CleanResult out{b, q, {}, 0, Rational(1), Rational(1)};
  while (out.gap.rank() >= 2 && !out.b.empty()) {
    PointSet lift = gap_lift(out.gap, out.b);
    auto [normal, count] = densest_hyperplane(lift);
    Rational limit = (1 - eps) * Rational(out.b.size()) + 1;
    if (Rational(count) <= limit) {
      out.max_hyperplane_count = count;
      break;
    }
    CleanStep step;
    step.rank_before = out.gap.rank();
    step.b_before = out.b.size();
    step.on_hyperplane = count;
    step.normal = normal;
    step.eta = Rational(count, out.gap.box_size());
    step.eta.canonicalize();

    std::vector<Rational> v(normal.begin(), normal.end());
    auto sliced = slice_reduce(out.gap, v, step.eta);
    LatticePoint np(normal);
    std::vector<Scalar> kept;
    for (const auto& x : lift)
      if (dot(x, np) == 0) kept.push_back(gap_project(out.gap, x));
    out.b = ScalarSet(out.b.basis_ptr(), std::move(kept));
    out.gap = std::move(sliced.gap);
    step.rank_after = out.gap.rank();
    out.steps.push_back(std::move(step));
  }
  if (!b.empty()) out.retained = Rational(out.b.size(), b.size());
  out.retained.canonicalize();
  out.size_ratio = Rational(out.gap.box_size(), q.box_size());
  out.size_ratio.canonicalize();
  return out;
}

Integer BoxSlice::interval_size(std::size_t j) const { return Integer(intervals[j].second - intervals[j].first + 1); }

Integer BoxSlice::box_size() const {
  Integer n = 1;
  for (std::size_t j = 0; j < rank(); ++j) n *= interval_size(j);
  return n;
}

namespace {

void validate(const BoxSlice& s) {
  if (s.lambda.size() != s.intervals.size()) fail(ErrorKind::InvalidArgument, "slice needs one interval per coefficient");
  for (auto l : s.lambda)
    if (l == 0) fail(ErrorKind::InvalidArgument, "slice coefficients must be nonzero");
  for (auto [lo, hi] : s.intervals)
    if (lo > hi) fail(ErrorKind::InvalidArgument, "slice intervals must be nonempty");
}

// Range of sum_{j >= k} lambda_j x_j over the box.
struct SuffixRange {
  std::vector<i128> lo, hi;
  explicit SuffixRange(const BoxSlice& s) : lo(s.rank() + 1, 0), hi(s.rank() + 1, 0) {
    for (std::size_t k = s.rank(); k-- > 0;) {
      i128 a = static_cast<i128>(s.lambda[k]) * s.intervals[k].first;
      i128 b = static_cast<i128>(s.lambda[k]) * s.intervals[k].second;
      lo[k] = lo[k + 1] + std::min(a, b);
      hi[k] = hi[k + 1] + std::max(a, b);
    }
  }
};

// x in I_k with target - lambda_k x inside the range of the remaining coordinates.
std::pair<i128, i128> feasible_range(const BoxSlice& s, const SuffixRange& sr, std::size_t k, i128 target) {
  i128 l = s.lambda[k];
  i128 mn = sr.lo[k + 1], mx = sr.hi[k + 1];
  i128 a, b;
  if (l > 0) {
    a = ceil_div(target - mx, l);
    b = floor_div(target - mn, l);
  } else {
    a = ceil_div(target - mn, l);
    b = floor_div(target - mx, l);
  }
  return {std::max<i128>(a, s.intervals[k].first), std::min<i128>(b, s.intervals[k].second)};
}

}  // namespace

Integer fiber_count_exact(const BoxSlice& s) {
  validate(s);
  const std::size_t r = s.rank();
  if (r == 0) return s.level == 0 ? 1 : 0;
  SuffixRange sr(s);
  std::vector<std::unordered_map<std::int64_t, Integer>> memo(r);
  std::function<Integer(std::size_t, i128)> count = [&](std::size_t k, i128 target) -> Integer {
    if (target < sr.lo[k] || target > sr.hi[k]) return 0;
    if (k + 1 == r) {
      i128 l = s.lambda[k];
      if (target % l != 0) return 0;
      i128 x = target / l;
      return (x >= s.intervals[k].first && x <= s.intervals[k].second) ? 1 : 0;
    }
    auto key = static_cast<std::int64_t>(target);
    auto it = memo[k].find(key);
    if (it != memo[k].end()) return it->second;
    auto [a, b] = feasible_range(s, sr, k, target);
    Integer total = 0;
    for (i128 x = a; x <= b; ++x) total += count(k + 1, target - static_cast<i128>(s.lambda[k]) * x);
    memo[k].emplace(key, total);
    return total;
  };
  return count(0, s.level);
}

std::vector<IntVector> fiber_points(const BoxSlice& s, std::uint64_t cap) {
  validate(s);
  const std::size_t r = s.rank();
  std::vector<IntVector> out;
  if (r == 0) {
    if (s.level == 0) out.emplace_back();
    return out;
  }
  SuffixRange sr(s);
  std::vector<std::int64_t> x(r);
  std::function<void(std::size_t, i128)> walk = [&](std::size_t k, i128 target) {
    if (target < sr.lo[k] || target > sr.hi[k]) return;
    if (k + 1 == r) {
      i128 l = s.lambda[k];
      if (target % l != 0) return;
      i128 v = target / l;
      if (v < s.intervals[k].first || v > s.intervals[k].second) return;
      x[k] = static_cast<std::int64_t>(v);
      if (out.size() >= cap) fail(ErrorKind::CapacityExceeded, "fiber has more than " + std::to_string(cap) + " points");
      IntVector p;
      for (auto c : x) p.emplace_back(static_cast<long>(c));
      out.push_back(std::move(p));
      return;
    }
    auto [a, b] = feasible_range(s, sr, k, target);
    for (i128 v = a; v <= b; ++v) {
      x[k] = static_cast<std::int64_t>(v);
      walk(k + 1, target - static_cast<i128>(s.lambda[k]) * v);
    }
  };
  walk(0, s.level);
  return out;
}

long affine_dimension(const std::vector<IntVector>& points) {
  if (points.empty()) return -1;
  IntMatrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    IntVector d(points[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(d));
  }
  return static_cast<long>(rank(diffs));
}

Rational fiber_bound_low_dim(const BoxSlice& s) {
  validate(s);
  if (s.rank() == 0) fail(ErrorKind::InvalidArgument, "empty slice");
  Integer mx = s.interval_size(0), mn = mx;
  for (std::size_t j = 1; j < s.rank(); ++j) {
    mx = std::max(mx, s.interval_size(j));
    mn = std::min(mn, s.interval_size(j));
  }
  Rational b(s.box_size(), mx * mn);
  b.canonicalize();
  return b;
}

Rational fiber_bound_full_dim(const BoxSlice& s) {
  validate(s);
  const std::size_t r = s.rank();
  if (r == 0) fail(ErrorKind::InvalidArgument, "empty slice");
  IntVector lam;
  for (auto l : s.lambda) lam.emplace_back(static_cast<long>(l));
  if (content(lam) != 1) fail(ErrorKind::InvalidArgument, "the full-dimensional fiber bound needs gcd(lambda) = 1");
  Integer fact = 1;
  for (std::size_t k = 2; k < r; ++k) fact *= Integer(static_cast<long>(k));
  Integer mx = 0;
  for (std::size_t j = 0; j < r; ++j) mx = std::max(mx, Integer(abs(lam[j]) * s.interval_size(j)));
  Rational b(fact * s.box_size(), mx);
  b.canonicalize();
  return b + Rational(static_cast<long>(r - 1));
}

Rational fiber_upper_bound(const BoxSlice& s, long affine_dim) {
  if (affine_dim <= static_cast<long>(s.rank()) - 2) return fiber_bound_low_dim(s);
  return fiber_bound_full_dim(s);
}

std::optional<RankOneCollapse> collapse_to_rank_one(const std::vector<Scalar>& t, const std::vector<Integer>& sizes) {
  if (t.empty()) fail(ErrorKind::InvalidArgument, "collapse needs at least one difference");
  if (sizes.size() != t.size()) fail(ErrorKind::InvalidArgument, "collapse needs one interval size per difference");
  for (const auto& x : t)
    if (x.is_zero()) fail(ErrorKind::ZeroDifference, "GAP difference is zero");
  auto a = group_generator(t);
  if (!a) return std::nullopt;
  RankOneCollapse out{*a, {}, 0};
  for (std::size_t j = 0; j < t.size(); ++j) {
    Rational l = *commensurability_ratio(t[j], *a);
    out.lambda.push_back(l.get_num());
    out.max_product = std::max(out.max_product, Integer(abs(l.get_num()) * sizes[j]));
  }
  return out;
}

}  // namespace subsum
