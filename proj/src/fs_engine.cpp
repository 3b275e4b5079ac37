#include "subsum/fs_engine.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "subsum/error.hpp"
#include "subsum/kernels.hpp"

namespace subsum {
namespace detail {
namespace {

const Integer kInt64Limit = Integer(1) << 62;

bool fits64(const Integer& x) { return abs(x) < kInt64Limit; }
std::int64_t to64(const Integer& x) { return static_cast<std::int64_t>(x.get_si()); }

}  // namespace

Radix Radix::for_box(const IntVector& lo, const IntVector& hi) {
  Radix r;
  r.dim = lo.size();
  r.lo = lo;
  r.width.resize(r.dim);
  r.stride.resize(r.dim);
  for (std::size_t c = 0; c < r.dim; ++c) r.width[c] = hi[c] - lo[c] + 1;
  Integer acc = 1;
  for (std::size_t c = r.dim; c-- > 0;) {
    r.stride[c] = acc;
    acc *= r.width[c];
  }
  r.volume = acc;
  r.small = r.volume < kInt64Limit && std::all_of(lo.begin(), lo.end(), fits64);
  if (r.small) {
    for (std::size_t c = 0; c < r.dim; ++c) {
      r.lo64.push_back(to64(r.lo[c]));
      r.width64.push_back(to64(r.width[c]));
      r.stride64.push_back(to64(r.stride[c]));
    }
  }
  return r;
}

std::optional<Integer> Radix::encode(const IntVector& v) const {
  Integer e = 0;
  for (std::size_t c = 0; c < dim; ++c) {
    Integer off = v[c] - lo[c];
    if (off < 0 || off >= width[c]) return std::nullopt;
    e += off * stride[c];
  }
  return e;
}

IntVector Radix::decode(const Integer& e) const {
  IntVector v(dim);
  Integer rest = e;
  for (std::size_t c = 0; c < dim; ++c) {
    Integer q;
    mpz_fdiv_qr(q.get_mpz_t(), rest.get_mpz_t(), rest.get_mpz_t(), stride[c].get_mpz_t());
    v[c] = lo[c] + q;
  }
  return v;
}

IntVector Radix::decode64(std::int64_t e) const {
  IntVector v(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    std::int64_t q = e / stride64[c];
    e -= q * stride64[c];
    v[c] = Integer(static_cast<long>(lo64[c] + q));
  }
  return v;
}

Integer Radix::shift(const IntVector& delta) const {
  Integer e = 0;
  for (std::size_t c = 0; c < dim; ++c) e += delta[c] * stride[c];
  return e;
}

EncodedSet EncodedSet::build(const std::vector<IntVector>& elements, const std::vector<IntVector>& seed,
                             std::size_t dim, const FsOptions& opts) {
  std::vector<IntVector> seeds = seed.empty() ? std::vector<IntVector>{IntVector(dim, Integer(0))} : seed;
  IntVector lo = seeds[0], hi = seeds[0];
  for (const auto& s : seeds)
    for (std::size_t c = 0; c < dim; ++c) {
      if (s[c] < lo[c]) lo[c] = s[c];
      if (s[c] > hi[c]) hi[c] = s[c];
    }
  for (const auto& e : elements)
    for (std::size_t c = 0; c < dim; ++c) (e[c] < 0 ? lo[c] : hi[c]) += e[c];

  EncodedSet out;
  out.radix_ = Radix::for_box(lo, hi);

  std::vector<Integer> shifts;
  Integer negative = 0, total_shift = 0;
  for (const auto& e : elements) {
    Integer d = out.radix_.shift(e);
    if (d < 0) negative += d;
    shifts.push_back(abs(d));
    total_shift += abs(d);
  }
  std::vector<Integer> enc;
  for (const auto& s : seeds) enc.push_back(*out.radix_.encode(s));
  std::sort(enc.begin(), enc.end());
  enc.erase(std::unique(enc.begin(), enc.end()), enc.end());
  const Integer smin = enc.front();
  out.base_ = smin + negative;
  const Integer span = enc.back() - smin + total_shift + 1;

  const bool dense_ok = span <= Integer(static_cast<unsigned long>(opts.dense_bit_cap));
  if (opts.path == FsOptions::Path::Dense && !dense_ok)
    fail(ErrorKind::CapacityExceeded, "dense subset-sum vector would need " + span.get_str() + " bits");
  if (opts.path != FsOptions::Path::Sparse && dense_ok) {
    out.mode_ = Mode::Dense;
    out.nbits_ = span.get_ui();
    out.words_.assign((out.nbits_ + 63) / 64, 0);
    for (const auto& e : enc) {
      std::uint64_t rel = Integer(e - smin).get_ui();
      out.words_[rel / 64] |= std::uint64_t{1} << (rel % 64);
    }
    const auto& k = kernels::active();
    for (const auto& s : shifts) {
      k.shift_or(out.words_, s.get_ui());
      out.step_sizes_.push_back(k.popcount(out.words_));
    }
    out.count_ = out.step_sizes_.empty() ? enc.size() : out.step_sizes_.back();
    return out;
  }

  auto check_cap = [&](std::size_t n) {
    if (n > opts.max_cardinality)
      fail(ErrorKind::CapacityExceeded, "subset-sum set exceeds " + std::to_string(opts.max_cardinality) + " elements");
  };
  if (fits64(span)) {
    out.mode_ = Mode::Sparse64;
    out.nbits_ = span.get_ui();
    for (const auto& e : enc) out.rel64_.push_back(to64(e - smin));
    std::vector<std::int64_t> shifted, merged;
    for (const auto& s : shifts) {
      const std::int64_t d = to64(s);
      shifted.resize(out.rel64_.size());
      for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = out.rel64_[i] + d;
      merged.clear();
      std::set_union(out.rel64_.begin(), out.rel64_.end(), shifted.begin(), shifted.end(), std::back_inserter(merged));
      check_cap(merged.size());
      out.rel64_.swap(merged);
      out.step_sizes_.push_back(out.rel64_.size());
    }
    out.count_ = out.rel64_.size();
    return out;
  }
  out.mode_ = Mode::SparseBig;
  for (const auto& e : enc) out.relbig_.push_back(e - smin);
  std::vector<Integer> shifted, merged;
  for (const auto& s : shifts) {
    shifted.resize(out.relbig_.size());
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = out.relbig_[i] + s;
    merged.clear();
    std::set_union(out.relbig_.begin(), out.relbig_.end(), shifted.begin(), shifted.end(), std::back_inserter(merged));
    check_cap(merged.size());
    out.relbig_.swap(merged);
    out.step_sizes_.push_back(out.relbig_.size());
  }
  out.count_ = out.relbig_.size();
  return out;
}

bool EncodedSet::contains_encoded(const Integer& e) const {
  Integer rel = e - base_;
  if (rel < 0) return false;
  switch (mode_) {
    case Mode::Dense: {
      if (rel >= Integer(static_cast<unsigned long>(nbits_))) return false;
      std::uint64_t r = rel.get_ui();
      return (words_[r / 64] >> (r % 64)) & 1;
    }
    case Mode::Sparse64:
      if (!fits64(rel)) return false;
      return std::binary_search(rel64_.begin(), rel64_.end(), to64(rel));
    case Mode::SparseBig: return std::binary_search(relbig_.begin(), relbig_.end(), rel);
  }
  return false;
}

bool EncodedSet::contains(const IntVector& v) const {
  if (v.size() != radix_.dim) return false;
  auto e = radix_.encode(v);
  return e && contains_encoded(*e);
}

std::vector<std::int64_t> EncodedSet::offsets64() const {
  std::vector<std::int64_t> out;
  if (mode_ == Mode::Dense) {
    out.reserve(count_);
    for (std::size_t w = 0; w < words_.size(); ++w)
      for (std::uint64_t bits = words_[w]; bits; bits &= bits - 1)
        out.push_back(static_cast<std::int64_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
  } else if (mode_ == Mode::Sparse64) {
    out = rel64_;
  } else {
    fail(ErrorKind::CapacityExceeded, "encoded offsets exceed 64 bits");
  }
  return out;
}

void EncodedSet::for_each(const std::function<void(const IntVector&)>& fn) const {
  if (mode_ == Mode::SparseBig) {
    for (const auto& r : relbig_) fn(radix_.decode(base_ + r));
    return;
  }
  const bool small = radix_.small;
  const std::int64_t base64 = small ? to64(base_) : 0;
  auto visit = [&](std::int64_t rel) {
    if (small) fn(radix_.decode64(base64 + rel));
    else fn(radix_.decode(base_ + Integer(static_cast<long>(rel))));
  };
  if (mode_ == Mode::Sparse64) {
    for (auto r : rel64_) visit(r);
    return;
  }
  for (std::size_t w = 0; w < words_.size(); ++w)
    for (std::uint64_t bits = words_[w]; bits; bits &= bits - 1)
      visit(static_cast<std::int64_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
}

}  // namespace detail

namespace {

// Coordinates of x over `basis`, times `scale`, when they are all integers.
std::optional<IntVector> scaled_coords(const Scalar& x, const BasisPtr& basis, const Integer& scale) {
  std::vector<Rational> coords;
  if (x.basis_ptr() == basis || x.basis() == *basis) {
    coords = x.coords();
  } else if (x.is_rational()) {
    coords.assign(basis->dimension(), Rational(0));
    coords[0] = x.rational_part();
  } else {
    return std::nullopt;
  }
  IntVector out;
  for (const auto& c : coords) {
    Rational s = c * scale;
    if (s.get_den() != 1) return std::nullopt;
    out.push_back(s.get_num());
  }
  return out;
}

}  // namespace

std::string_view SumSet::path() const {
  switch (set_.mode()) {
    case detail::EncodedSet::Mode::Dense: return "dense";
    case detail::EncodedSet::Mode::Sparse64: return "sparse";
    case detail::EncodedSet::Mode::SparseBig: return "sparse-big";
  }
  return "unknown";
}

bool SumSet::contains(const Scalar& x) const {
  auto v = scaled_coords(x, basis_, scale_);
  return v && set_.contains(*v);
}

std::vector<Scalar> SumSet::values() const {
  std::vector<Scalar> out;
  out.reserve(size());
  const bool rational = basis_->is_rational();
  set_.for_each([&](const IntVector& v) {
    if (rational) {
      Rational q(v[0], scale_);
      q.canonicalize();
      out.emplace_back(q);
      return;
    }
    std::vector<Rational> c;
    for (const auto& z : v) {
      Rational q(z, scale_);
      q.canonicalize();
      c.push_back(q);
    }
    out.emplace_back(basis_, std::move(c));
  });
  return out;
}

std::optional<std::vector<std::int64_t>> SumSet::integer_values() const {
  if (!basis_->is_rational() || scale_ != 1 || !set_.radix().small) return std::nullopt;
  if (set_.mode() == detail::EncodedSet::Mode::SparseBig) return std::nullopt;
  auto out = set_.offsets64();
  const std::int64_t origin = set_.radix().lo64[0] + static_cast<std::int64_t>(set_.base().get_si());
  for (auto& v : out) v += origin;
  return out;
}

SumSet fs_build(std::span<const Scalar> elements, std::span<const Scalar> seed, const FsOptions& opts) {
  SumSet out;
  BasisPtr basis = Basis::rational();
  for (const auto& x : elements) basis = common_basis(basis, x.basis_ptr());
  for (const auto& x : seed) basis = common_basis(basis, x.basis_ptr());
  Integer scale = 1;
  auto absorb = [&](const Scalar& x) {
    for (const auto& c : x.coords()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
  };
  for (const auto& x : elements) absorb(x);
  for (const auto& x : seed) absorb(x);
  std::vector<IntVector> elems, seeds;
  for (const auto& x : elements) elems.push_back(*scaled_coords(x, basis, scale));
  for (const auto& x : seed) seeds.push_back(*scaled_coords(x, basis, scale));
  out.basis_ = basis;
  out.scale_ = scale;
  out.source_size_ = elements.size();
  out.set_ = detail::EncodedSet::build(elems, seeds, basis->dimension(), opts);
  return out;
}

SumSet fs_set(const ScalarSet& a, const FsOptions& opts) { return fs_build(a.elements(), {}, opts); }

PointSumSet fs_set_points(const PointSet& a, const FsOptions& opts) {
  PointSumSet out;
  out.dim_ = a.dim();
  std::vector<IntVector> elems;
  for (const auto& p : a) elems.push_back(p.coords());
  out.set_ = detail::EncodedSet::build(elems, {}, a.dim(), opts);
  return out;
}

bool PointSumSet::contains(const LatticePoint& p) const { return set_.contains(p.coords()); }

std::vector<LatticePoint> PointSumSet::values() const {
  std::vector<LatticePoint> out;
  out.reserve(size());
  set_.for_each([&](const IntVector& v) { out.emplace_back(v); });
  return out;
}

IncrementalTrace incremental_trace(const ScalarSet& a, const FsOptions& opts) {
  for (const auto& x : a)
    if (sign(x) <= 0) fail(ErrorKind::NonPositiveElement, "incremental_trace needs positive elements, got " + x.to_string());
  IncrementalTrace t;
  t.order = a.sorted_by_value();
  SumSet s = fs_build(t.order, {}, opts);
  std::uint64_t prev = 1;
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    std::uint64_t cur = s.step_sizes()[i];
    t.z.push_back(cur - prev);
    t.y.push_back(static_cast<std::int64_t>(cur - prev) - static_cast<std::int64_t>(i + 1));
    prev = cur;
  }
  return t;
}

std::uint64_t ap_cover_count(const SumSet& s, const Scalar& x) {
  if (x.is_zero()) fail(ErrorKind::ZeroDifference, "AP cover count needs a nonzero difference");
  auto d = scaled_coords(x, s.basis_ptr(), s.scale());
  if (!d) return s.size();  // x is off the lattice carrying S: no two elements differ by x
  const auto& enc = s.encoded();
  if (enc.radix().dim == 1 && enc.mode() == detail::EncodedSet::Mode::Dense) {
    // Chains s, s+|x|, ... have one start and one end each, so counting
    // starts for |x| equals counting elements with s - x absent.
    Integer shift = abs((*d)[0]);
    if (shift >= Integer(static_cast<unsigned long>(enc.bits()))) return s.size();
    return kernels::active().chain_starts(enc.words(), shift.get_ui());
  }
  std::uint64_t count = 0;
  enc.for_each([&](const IntVector& v) {
    IntVector w = v;
    for (std::size_t c = 0; c < w.size(); ++c) w[c] -= (*d)[c];
    if (!enc.contains(w)) ++count;
  });
  return count;
}

namespace {

ScalarSet dedup_set(std::vector<Scalar> xs) {
  std::sort(xs.begin(), xs.end(), CanonicalLess{});
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return ScalarSet(std::move(xs));
}

}  // namespace

ScalarSet sumset(const ScalarSet& a, const ScalarSet& b) {
  std::vector<Scalar> out;
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x + y);
  return dedup_set(std::move(out));
}

ScalarSet restricted_sumset(const ScalarSet& a) {
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) out.push_back(a[i] + a[j]);
  return dedup_set(std::move(out));
}

std::vector<std::uint64_t> direction_class_sizes(std::span<const LatticePoint> points, const LatticePoint& v) {
  if (v.is_zero()) fail(ErrorKind::ZeroDirection, "direction vector must be nonzero");
  const Integer vv = dot(v, v);
  std::map<IntVector, std::uint64_t> classes;
  for (const auto& p : points) {
    const Integer pv = dot(p, v);
    IntVector key(p.dim());
    for (std::size_t c = 0; c < p.dim(); ++c) key[c] = vv * p[c] - pv * v[c];
    ++classes[key];
  }
  std::vector<std::uint64_t> sizes;
  for (const auto& [k, n] : classes) sizes.push_back(n);
  return sizes;
}

std::uint64_t direction_class_count(std::span<const LatticePoint> points, const LatticePoint& v) {
  return direction_class_sizes(points, v).size();
}

std::uint64_t direction_class_count(const PointSumSet& s, const LatticePoint& v) {
  if (v.dim() != s.dim()) fail(ErrorKind::DomainMismatch, "direction has the wrong dimension");
  auto pts = s.values();
  return direction_class_count(pts, v);
}

std::uint64_t fs_size_small(std::span<const std::int64_t> flat, std::size_t dim) {
  const std::size_t n = dim == 0 ? 0 : flat.size() / dim;
  std::int64_t lo[8] = {}, hi[8] = {}, stride[8] = {};
  if (dim > 8) fail(ErrorKind::InvalidArgument, "fs_size_small supports dimension <= 8");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < dim; ++c) (flat[i * dim + c] < 0 ? lo[c] : hi[c]) += flat[i * dim + c];
  std::int64_t acc = 1;
  for (std::size_t c = dim; c-- > 0;) {
    stride[c] = acc;
    acc *= hi[c] - lo[c] + 1;
  }
  std::uint64_t span = 1;
  std::vector<std::uint64_t> shifts(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t d = 0;
    for (std::size_t c = 0; c < dim; ++c) d += flat[i * dim + c] * stride[c];
    shifts[i] = static_cast<std::uint64_t>(d < 0 ? -d : d);
    span += shifts[i];
  }
  thread_local std::vector<std::uint64_t> words;
  words.assign((span + 63) / 64, 0);
  words[0] = 1;
  const auto& k = kernels::active();
  for (auto s : shifts) k.shift_or(words, s);
  return k.popcount(words);
}

}  // namespace subsum
