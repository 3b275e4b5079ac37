#include "subsum/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "subsum/error.hpp"
#include "subsum/fs_engine.hpp"

namespace subsum {

namespace {

Integer ceil_q(const Rational& x) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

Integer floor_q(const Rational& x) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

Integer nearest(const Rational& x) { return floor_q(x + Rational(1, 2)); }

std::string str(Rational q) {
  q.canonicalize();
  return to_string(q);
}

// Integer x with x * unit == v, if any.
std::optional<Integer> integer_multiple(const Scalar& v, const Scalar& unit) {
  auto q = commensurability_ratio(v, unit);
  if (!q || q->get_den() != 1) return std::nullopt;
  return q->get_num();
}

// Exact solution of sum_j x_j t_j = b for Q-independent t, or nullopt.
std::optional<std::vector<Rational>> solve_independent(const std::vector<std::vector<Rational>>& t, const std::vector<Rational>& b) {
  const std::size_t k = t.size(), dim = b.size();
  // Augmented dim x (k + 1) system.
  std::vector<std::vector<Rational>> m(dim, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i][j] = t[j][i];
    m[i][k] = b[i];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < k && row < dim; ++c) {
    std::size_t p = row;
    while (p < dim && m[p][c] == 0) ++p;
    if (p == dim) continue;
    std::swap(m[p], m[row]);
    for (std::size_t i = 0; i < dim; ++i) {
      if (i == row || m[i][c] == 0) continue;
      Rational f = m[i][c] / m[row][c];
      for (std::size_t j = c; j <= k; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t i = row; i < dim; ++i)
    if (m[i][k] != 0) return std::nullopt;
  std::vector<Rational> x(k, Rational(0));
  for (std::size_t i = 0; i < row; ++i) x[pivot_col[i]] = m[i][k] / m[i][pivot_col[i]];
  return x;
}

// y = sum c_j t_j with |c_j| <= kSmallCoefficient for all but the last
// generator in `order`, which is solved exactly. Least sum |c_j| wins.
constexpr long kSmallCoefficient = 4;

std::optional<std::vector<Integer>> small_representation(const Rational& y, const std::vector<Scalar>& t,
                                                         const std::vector<std::size_t>& order) {
  const std::size_t k = t.size();
  const std::size_t last = order.back();
  const Rational t_last = t[last].as_rational();
  std::optional<std::vector<Integer>> best;
  Integer best_cost;
  std::vector<Integer> c(k);
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t depth, const Rational& rem) {
    if (depth + 1 == k) {
      Rational x = rem / t_last;
      if (x.get_den() != 1) return;
      c[last] = x.get_num();
      Integer cost = 0;
      for (const auto& v : c) cost += abs(v);
      if (!best || cost < best_cost) {
        best = c;
        best_cost = cost;
      }
      return;
    }
    const std::size_t j = order[depth];
    for (long v = -kSmallCoefficient; v <= kSmallCoefficient; ++v) {
      c[j] = v;
      rec(depth + 1, rem - t[j].as_rational() * Rational(v));
    }
  };
  rec(0, y);
  return best;
}

// Half-sides of the least box over the given differences that reaches every
// element of B with the chosen representation, or nullopt.
std::optional<std::vector<std::int64_t>> cover_sides(const ScalarSet& b, const std::vector<Scalar>& t) {
  const std::size_t k = t.size();
  std::vector<Integer> worst(k, Integer(1));
  bool rational = std::all_of(t.begin(), t.end(), [](const Scalar& x) { return x.is_rational(); });
  if (rational) {
    if (!b.basis().is_rational()) {
      for (const auto& y : b)
        if (!y.is_rational()) return std::nullopt;
    }
    std::vector<std::size_t> order(k);
    for (std::size_t j = 0; j < k; ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      return abs(t[i].as_rational()) > abs(t[j].as_rational());
    });
    for (const auto& y : b) {
      Rational rem = y.as_rational();
      std::vector<Integer> c(k);
      for (auto j : order) {
        Rational tj = t[j].as_rational();
        c[j] = nearest(rem / tj);
        rem -= tj * Rational(c[j]);
      }
      if (rem != 0) {
        auto exact = small_representation(y.as_rational(), t, order);
        if (!exact) return std::nullopt;
        c = *exact;
      }
      for (std::size_t j = 0; j < k; ++j) worst[j] = std::max(worst[j], Integer(abs(c[j])));
    }
  } else {
    BasisPtr basis = b.basis_ptr();
    for (const auto& x : t) basis = common_basis(basis, x.basis_ptr());
    std::vector<std::vector<Rational>> rows;
    for (const auto& x : t) rows.push_back(x.promoted(basis).coords());
    for (const auto& y : b) {
      auto sol = solve_independent(rows, y.promoted(basis).coords());
      if (!sol) return std::nullopt;
      for (std::size_t j = 0; j < k; ++j) {
        if ((*sol)[j].get_den() != 1) return std::nullopt;
        worst[j] = std::max(worst[j], Integer(abs((*sol)[j].get_num())));
      }
    }
  }
  std::vector<std::int64_t> s;
  for (const auto& w : worst) {
    if (!w.fits_slong_p()) return std::nullopt;
    s.push_back(w.get_si());
  }
  return s;
}

bool independent(const std::vector<Scalar>& t) {
  BasisPtr basis = Basis::rational();
  for (const auto& x : t) basis = common_basis(basis, x.basis_ptr());
  std::vector<std::vector<Rational>> rows;
  for (const auto& x : t) rows.push_back(x.promoted(basis).coords());
  // Rank by elimination over Q.
  std::size_t r = 0;
  const std::size_t cols = basis->dimension();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r == rows.size();
}

}  // namespace

DoublingScan small_doubling_scan(const ScalarSet& a, const Rational& delta, const Rational& C) {
  if (delta <= 0 || delta >= 1) fail(ErrorKind::InvalidArgument, "delta must lie in (0, 1)");
  if (!a.all_positive()) fail(ErrorKind::NonPositiveElement, "small_doubling_scan needs positive elements");
  const long n = static_cast<long>(a.size());
  DoublingScan out;
  out.z_limit = 2 * C * Rational(n) / (1 - delta);
  auto doubling = [&](const ScalarSet& p) {
    out.doubling = sumset(p, p).size();
  };
  if (Rational(n) < 1 / delta) {
    out.prefix = a;
    out.index = a.size();
    out.trivial = true;
    doubling(a);
    out.doubling_bound = out.doubling;
    return out;
  }
  auto trace = incremental_trace(a);
  const long lo = ceil_q(delta * Rational(n)).get_si();
  for (long i = n - 1; i >= std::max(lo, 1L); --i) {
    if (Rational(static_cast<long>(trace.z[static_cast<std::size_t>(i)])) > out.z_limit) continue;
    out.index = static_cast<std::size_t>(i);
    out.z = trace.z[out.index];
    std::vector<Scalar> pre(trace.order.begin(), trace.order.begin() + i);
    out.prefix = ScalarSet(a.basis_ptr(), std::move(pre));
    doubling(out.prefix);
    out.doubling_bound = 2 * out.z + out.index;
    return out;
  }
  fail(ErrorKind::NoIndexFound, "no index i >= " + std::to_string(lo) + " with z_i <= " + str(out.z_limit));
}

CoverSearch gap_cover_search(const ScalarSet& b, const CoverOptions& opts) {
  CoverSearch out;
  if (b.empty()) return out;
  auto sorted = b.sorted_by_value();
  sorted.insert(sorted.begin(), Scalar(0));  // 0 lies in every symmetric GAP
  std::map<Scalar, std::uint64_t, CanonicalLess> freq;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j) ++freq[sorted[j] - sorted[i]];
  std::vector<std::pair<Scalar, std::uint64_t>> cands(freq.begin(), freq.end());
  std::stable_sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
  std::vector<Scalar> cand;
  if (std::none_of(b.begin(), b.end(), [](const Scalar& x) { return x.is_zero(); })) {
    if (auto g = group_generator(b.elements())) cand.push_back(*g);
  }
  for (const auto& [d, f] : cands)
    if (!d.is_zero() && std::find(cand.begin(), cand.end(), d) == cand.end()) cand.push_back(d);

  // Pool for rank >= 2: the most frequent candidates, then one representative
  // of each further commensurability class. Representatives without a rational
  // part come first, then fewer nonzero coordinates.
  std::vector<Scalar> pool_list(cand.begin(), cand.begin() + std::min(cand.size(), opts.candidate_limit));
  std::vector<Scalar> rest(cand.begin() + static_cast<std::ptrdiff_t>(pool_list.size()), cand.end());
  auto support = [](const Scalar& x) {
    auto nonzero = std::count_if(x.coords().begin(), x.coords().end(), [](const Rational& c) { return c != 0; });
    bool mixed = !x.is_rational() && x.coords()[0] != 0;
    return std::make_pair(mixed, nonzero);
  };
  std::stable_sort(rest.begin(), rest.end(), [&](const Scalar& x, const Scalar& y) { return support(x) < support(y); });
  std::size_t extra = 0;
  for (std::size_t i = 0; i < rest.size() && extra < opts.candidate_limit; ++i) {
    bool fresh = std::none_of(pool_list.begin(), pool_list.end(),
                              [&](const Scalar& p) { return commensurability_ratio(rest[i], p).has_value(); });
    if (fresh) {
      pool_list.push_back(rest[i]);
      ++extra;
    }
  }

  const Integer limit = floor_q(opts.size_factor * Rational(static_cast<long>(b.size())));
  for (std::size_t k = 1; k <= opts.rank_max; ++k) {
    const std::vector<Scalar>& list = k == 1 ? cand : pool_list;
    const std::size_t pool = list.size();
    std::optional<SymmetricGAP> best;
    std::vector<std::size_t> pick(k);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) -> bool {
      if (depth == k) {
        if (out.tried >= opts.budget) {
          out.budget_exhausted = true;
          return false;
        }
        ++out.tried;
        std::vector<Scalar> t;
        for (auto i : pick) t.push_back(list[i]);
        bool rational = std::all_of(t.begin(), t.end(), [](const Scalar& x) { return x.is_rational(); });
        if (!rational && !independent(t)) return true;
        auto s = cover_sides(b, t);
        if (!s) return true;
        SymmetricGAP g{t, *s, false};
        if (g.box_size() > limit) return true;
        if (best && g.box_size() >= best->box_size()) return true;
        try {
          if (!is_proper(g)) return true;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::CapacityExceeded) throw;
          return true;
        }
        g.proper = true;
        best = std::move(g);
        return true;
      }
      for (std::size_t i = from; i < pool; ++i) {
        pick[depth] = i;
        if (!rec(depth + 1, i + 1)) return false;
      }
      return true;
    };
    bool finished = rec(0, 0);
    if (best) {
      out.gap = std::move(best);
      return out;
    }
    if (!finished) return out;
  }
  return out;
}

Piece piece_of_structure(const ScalarSet& a, const Rational& C, const PieceOptions& opts) {
  if (a.empty()) fail(ErrorKind::InvalidArgument, "piece_of_structure needs a nonempty set");
  const long n = static_cast<long>(a.size());
  Piece out;
  try {
    out.scan = small_doubling_scan(a, opts.delta, C);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoIndexFound) throw;
    fail(ErrorKind::PipelineStalled, std::string("small_doubling_scan: ") + e.what());
  }
  out.log.emplace_back("scan.index", std::to_string(out.scan.index));
  out.log.emplace_back("scan.z", std::to_string(out.scan.z));
  out.log.emplace_back("scan.doubling", std::to_string(out.scan.doubling));
  out.log.emplace_back("scan.doubling_ratio", str(Rational(static_cast<long>(out.scan.doubling), static_cast<long>(out.scan.index))));

  CoverOptions cover_opts = opts.cover;
  std::uint64_t tried = 0;
  CoverSearch cover;
  while (true) {
    cover = gap_cover_search(out.scan.prefix, cover_opts);
    tried += cover.tried;
    if (cover.gap || cover.budget_exhausted || cover_opts.size_factor * 2 > opts.size_factor_max) break;
    cover_opts.size_factor *= 2;
  }
  if (!cover.gap)
    fail(ErrorKind::PipelineStalled, "gap_cover_search: no proper GAP of rank <= " + std::to_string(opts.cover.rank_max) +
                                         " with size factor <= " + str(cover_opts.size_factor) + " (" +
                                         std::to_string(tried) + " tuples tried)");
  out.cover = *cover.gap;
  out.log.emplace_back("cover.size_factor", str(cover_opts.size_factor));
  out.log.emplace_back("cover.rank", std::to_string(out.cover.rank()));
  out.log.emplace_back("cover.size", out.cover.box_size().get_str());
  out.log.emplace_back("cover.size_ratio", str(Rational(out.cover.box_size(), Integer(static_cast<long>(out.scan.prefix.size())))));

  out.cleaned = clean(out.cover, out.scan.prefix, opts.clean_eps);
  out.log.emplace_back("clean.rank", std::to_string(out.cleaned.gap.rank()));
  out.log.emplace_back("clean.retained", str(out.cleaned.retained));
  out.log.emplace_back("clean.size_ratio", str(out.cleaned.size_ratio));

  std::vector<Integer> sizes;
  for (auto s : out.cleaned.gap.half_sides) sizes.push_back(Integer(2 * n * s + 1));
  std::optional<RankOneCollapse> col;
  if (out.cleaned.gap.rank() > 0) col = collapse_to_rank_one(out.cleaned.gap.diffs, sizes);
  if (!col) fail(ErrorKind::PipelineStalled, "collapse_to_rank_one: cleaned GAP differences are not commensurable");
  out.collapse = *col;
  out.a = col->a;
  out.aprime = out.cleaned.b;
  out.log.emplace_back("collapse.a", out.a.to_string());
  out.log.emplace_back("collapse.max_product", col->max_product.get_str());
  out.log.emplace_back("collapse.max_product_over_n2", str(Rational(col->max_product, Integer(n * n))));

  Integer top = 0;
  for (const auto& x : out.aprime) {
    auto k = integer_multiple(x, out.a);
    if (!k || *k <= 0) fail(ErrorKind::PipelineStalled, "collapse_to_rank_one: " + x.to_string() + " is not a positive multiple of a");
    top = std::max(top, *k);
  }
  out.c_realized = Rational(static_cast<long>(out.aprime.size()), n);
  out.c_realized.canonicalize();
  out.cprime_realized = Rational(top, Integer(n));
  out.cprime_realized.canonicalize();
  out.log.emplace_back("piece.c", str(out.c_realized));
  out.log.emplace_back("piece.C_prime", str(out.cprime_realized));
  return out;
}

LocalGlobal local_to_global(const ScalarSet& r, const std::vector<Integer>& s, long n, const Rational& eps,
                            const Rational& C, const Scalar& unit, const LocalGlobalOptions& opts) {
  if (eps <= 0 || C <= 0 || n <= 0) fail(ErrorKind::InvalidArgument, "local_to_global needs n, eps, C > 0");
  if (sign(unit) <= 0) fail(ErrorKind::InvalidArgument, "unit must be positive");
  LocalGlobal out;
  const Rational n2(n * n);
  if (opts.check_hypotheses) {
    out.hypotheses_checked = true;
    const Integer top = floor_q(n2 / eps);
    for (const auto& x : s)
      if (x < 0 || x > top) fail(ErrorKind::HypothesisFailed, "S element " + x.get_str() + " outside [0, " + top.get_str() + "]");
    if (Rational(static_cast<long>(s.size())) < eps * n2) fail(ErrorKind::HypothesisFailed, "|S| < eps n^2");
    if (!r.all_positive()) fail(ErrorKind::HypothesisFailed, "R must be positive");
    if (static_cast<long>(r.size()) > n) fail(ErrorKind::HypothesisFailed, "|R| > n");
    std::vector<Scalar> seed;
    for (const auto& x : s) seed.push_back(unit.scaled(Rational(x)));
    auto sum = fs_build(r.elements(), seed);
    if (Rational(static_cast<long>(sum.size())) > C * n2)
      fail(ErrorKind::HypothesisFailed, "|FS(R) + S| = " + std::to_string(sum.size()) + " exceeds C n^2");
  }
  out.m = ceil_q(C / eps).get_si();
  out.T = n2 / eps + 1;
  out.D = lcm_range(static_cast<unsigned long>(out.m));

  const Scalar threshold = unit.scaled(out.T);
  std::vector<Scalar> big, rest, bad, keep;
  for (const auto& x : r.sorted_by_value()) (sign(x - threshold) >= 0 ? big : rest).push_back(x);
  out.big_count_ok = static_cast<long>(big.size()) < out.m;

  // Greedy blocks of partial sums, each of length >= T.
  Scalar last(0), p(0);
  for (const auto& y : rest) {
    p += y;
    if (sign(p - last - threshold) >= 0) {
      ++out.greedy_blocks;
      last = p;
    }
  }
  out.rest_bound = Rational(2 * out.m - 1) * out.T;
  auto rest_ratio = rest.empty() ? std::optional<Rational>(Rational(0)) : commensurability_ratio(p, unit);
  if (rest_ratio) {
    out.rest_sum = *rest_ratio;
    out.rest_sum_ok = out.rest_sum <= Rational(static_cast<long>(2 * out.greedy_blocks + 1)) * out.T &&
                      static_cast<long>(out.greedy_blocks) <= out.m - 1;
  } else {
    // Incommensurable with the unit: compare through certified signs.
    out.rest_sum = -1;
    out.rest_sum_ok = sign(unit.scaled(Rational(static_cast<long>(2 * out.greedy_blocks + 1)) * out.T) - p) >= 0 &&
                      static_cast<long>(out.greedy_blocks) <= out.m - 1;
  }

  for (const auto& x : rest) {
    auto q = commensurability_ratio(x, unit);
    if (!q || q->get_den() > out.m) bad.push_back(x);
    else keep.push_back(x);
  }
  std::vector<Scalar> two = big;
  two.insert(two.end(), bad.begin(), bad.end());
  out.r_big = ScalarSet(r.basis_ptr(), big);
  out.r_bad = ScalarSet(r.basis_ptr(), bad);
  out.r1 = ScalarSet(r.basis_ptr(), keep);
  out.r2 = ScalarSet(r.basis_ptr(), two);
  out.r2_size_ok = static_cast<long>(out.r2.size()) <= out.m + out.m * out.m;
  return out;
}

DecompositionChecks verify_decomposition(const ScalarSet& a, const DecompositionReport& rep) {
  DecompositionChecks c;
  std::vector<Scalar> both(rep.a1.begin(), rep.a1.end());
  both.insert(both.end(), rep.a2.begin(), rep.a2.end());
  try {
    c.partition = ScalarSet(a.basis_ptr(), both) == a;
  } catch (const Error&) {
    c.partition = false;  // overlap
  }
  Integer total = 0;
  c.a1_in_lattice = sign(rep.r) > 0;
  for (const auto& x : rep.a1) {
    auto k = integer_multiple(x, rep.r);
    if (!k || *k <= 0) {
      c.a1_in_lattice = false;
      break;
    }
    total += *k;
  }
  c.sum_within_budget = c.a1_in_lattice && total == rep.normalized_sum && total <= rep.sum_budget;
  c.a2_within_budget = rep.a2.size() <= rep.a2_budget;
  Integer fs = Integer(std::to_string(fs_set(a).size()));
  Integer rhs = (1 + total) * (Integer(1) << static_cast<mp_bitcnt_t>(rep.a2.size()));
  c.product_bound = c.a1_in_lattice && fs <= rhs;
  return c;
}

DecompositionReport decompose(const ScalarSet& a, const Rational& C, const DecomposeOptions& opts) {
  if (a.empty()) fail(ErrorKind::InvalidArgument, "decompose needs a nonempty set");
  if (!a.all_positive()) fail(ErrorKind::NonPositiveElement, "decompose needs positive elements");
  const long n = static_cast<long>(a.size());
  const Rational n2(n * n);
  DecompositionReport rep;
  rep.fs_size = fs_set(a).size();
  if (Rational(static_cast<long>(rep.fs_size)) > C * n2)
    fail(ErrorKind::HypothesisFailed, "|FS(A)| = " + std::to_string(rep.fs_size) + " exceeds C n^2 = " + str(C * n2));
  rep.stage_log.emplace_back("fs_size", std::to_string(rep.fs_size));
  rep.stage_log.emplace_back("fs_over_n2", str(Rational(static_cast<long>(rep.fs_size)) / n2));

  Piece piece = piece_of_structure(a, C, opts.piece);
  rep.stage_log.insert(rep.stage_log.end(), piece.log.begin(), piece.log.end());

  std::vector<std::int64_t> coeffs;
  for (const auto& x : piece.aprime) coeffs.push_back(integer_multiple(x, piece.a)->get_si());
  auto fs_prime = fs_set(ScalarSet::of_integers(coeffs));
  std::vector<Integer> S;
  const auto s_values = fs_prime.integer_values();
  for (auto v : *s_values) S.emplace_back(static_cast<long>(v));
  const long ap = static_cast<long>(piece.aprime.size());
  Rational eps;
  if (opts.eps) {
    eps = *opts.eps;
  } else {
    Rational dens(Integer(ap * (ap + 1) / 2 + 1), Integer(n * n));
    dens.canonicalize();
    Rational fit(Integer(n * n), std::max(S.back(), Integer(1)));
    fit.canonicalize();
    eps = std::min(dens, fit);
  }
  rep.stage_log.emplace_back("local.eps", str(eps));

  ScalarSet rest = a.without(piece.aprime);
  LocalGlobal lg = local_to_global(rest, S, n, eps, C, piece.a);
  rep.stage_log.emplace_back("local.m", std::to_string(lg.m));
  rep.stage_log.emplace_back("local.D", lg.D.get_str());
  rep.stage_log.emplace_back("local.T", str(lg.T));
  rep.stage_log.emplace_back("local.r_big", std::to_string(lg.r_big.size()));
  rep.stage_log.emplace_back("local.r_bad", std::to_string(lg.r_bad.size()));
  rep.stage_log.emplace_back("local.greedy_blocks", std::to_string(lg.greedy_blocks));
  if (!lg.big_count_ok || !lg.rest_sum_ok) fail(ErrorKind::PipelineStalled, "local_to_global: block counting bound violated");

  rep.a1 = piece.aprime.united(lg.r1);
  rep.a2 = lg.r2;
  rep.r_lemma = piece.a.scaled(Rational(Integer(1), lg.D));
  rep.r = rep.a1.empty() ? rep.r_lemma : *group_generator(rep.a1.elements());
  rep.stage_log.emplace_back("r", rep.r.to_string());
  rep.stage_log.emplace_back("r_lemma", rep.r_lemma.to_string());

  rep.normalized_sum = 0;
  for (const auto& x : rep.a1) rep.normalized_sum += *integer_multiple(x, rep.r);
  rep.sum_budget = floor_q(Rational(lg.D) * (lg.rest_bound + piece.cprime_realized * n2));
  rep.a2_budget = static_cast<std::size_t>(lg.m + lg.m * lg.m);
  rep.product_rhs = (1 + rep.normalized_sum) * (Integer(1) << static_cast<mp_bitcnt_t>(rep.a2.size()));
  rep.stage_log.emplace_back("normalized_sum_over_n2", str(Rational(rep.normalized_sum, Integer(n * n))));
  rep.checks = verify_decomposition(a, rep);
  return rep;
}

}  // namespace subsum
