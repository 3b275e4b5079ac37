#include "subsum/sets.hpp"

#include <algorithm>

#include "subsum/error.hpp"

namespace subsum {

LatticePoint::LatticePoint(std::initializer_list<long> coords) {
  coords_.reserve(coords.size());
  for (long c : coords) coords_.emplace_back(c);
}

bool LatticePoint::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
}

LatticePoint LatticePoint::operator-() const {
  LatticePoint r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

LatticePoint operator+(const LatticePoint& a, const LatticePoint& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DomainMismatch, "point dimensions differ");
  LatticePoint r = a;
  for (std::size_t i = 0; i < a.dim(); ++i) r.coords_[i] += b.coords_[i];
  return r;
}

LatticePoint operator-(const LatticePoint& a, const LatticePoint& b) { return a + (-b); }

std::string LatticePoint::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ",";
    out += coords_[i].get_str();
  }
  return out + ")";
}

Integer dot(const LatticePoint& a, const LatticePoint& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DomainMismatch, "point dimensions differ");
  Integer acc = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
  return acc;
}

ScalarSet::ScalarSet(std::vector<Scalar> elements) : basis_(Basis::rational()) {
  for (const auto& e : elements) basis_ = common_basis(basis_, e.basis_ptr());
  *this = ScalarSet(basis_, std::move(elements));
}

ScalarSet::ScalarSet(BasisPtr basis, std::vector<Scalar> elements) : basis_(std::move(basis)) {
  elements_.reserve(elements.size());
  for (auto& e : elements) elements_.push_back(e.promoted(basis_));
  std::sort(elements_.begin(), elements_.end(), CanonicalLess{});
  auto dup = std::adjacent_find(elements_.begin(), elements_.end());
  if (dup != elements_.end()) fail(ErrorKind::DuplicateElement, "element " + dup->to_string() + " listed twice");
}

ScalarSet ScalarSet::of_integers(std::initializer_list<long> values) {
  std::vector<Scalar> elems;
  for (long v : values) elems.emplace_back(v);
  return ScalarSet(Basis::rational(), std::move(elems));
}

ScalarSet ScalarSet::of_integers(const std::vector<std::int64_t>& values) {
  std::vector<Scalar> elems;
  elems.reserve(values.size());
  for (auto v : values) elems.emplace_back(Rational(static_cast<long>(v)));
  return ScalarSet(Basis::rational(), std::move(elems));
}

bool ScalarSet::contains(const Scalar& x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x, CanonicalLess{});
}

std::vector<Scalar> ScalarSet::sorted_by_value() const {
  std::vector<Scalar> out = elements_;
  if (!basis_->is_rational())
    std::sort(out.begin(), out.end(), [](const Scalar& a, const Scalar& b) { return compare(a, b) < 0; });
  return out;
}

bool ScalarSet::all_positive() const {
  return std::all_of(elements_.begin(), elements_.end(), [](const Scalar& x) { return sign(x) > 0; });
}

Scalar ScalarSet::total() const {
  Scalar acc = Scalar(Rational(0)).promoted(basis_);
  for (const auto& x : elements_) acc += x;
  return acc;
}

ScalarSet ScalarSet::dilated(const Rational& c) const {
  std::vector<Scalar> out;
  out.reserve(size());
  for (const auto& x : elements_) out.push_back(x.scaled(c));
  return ScalarSet(basis_, std::move(out));
}

ScalarSet ScalarSet::with(const Scalar& x) const {
  std::vector<Scalar> out = elements_;
  out.push_back(x);
  auto basis = common_basis(basis_, x.basis_ptr());
  return ScalarSet(basis, std::move(out));
}

ScalarSet ScalarSet::without(const ScalarSet& removed) const {
  std::vector<Scalar> out;
  for (const auto& x : elements_)
    if (!removed.contains(x)) out.push_back(x);
  return ScalarSet(basis_, std::move(out));
}

ScalarSet ScalarSet::united(const ScalarSet& other) const {
  auto basis = common_basis(basis_, other.basis_);
  std::vector<Scalar> out = elements_;
  out.insert(out.end(), other.elements_.begin(), other.elements_.end());
  return ScalarSet(basis, std::move(out));
}

PointSet::PointSet(std::size_t dim, std::vector<LatticePoint> points) : dim_(dim), points_(std::move(points)) {
  if (dim_ == 0) fail(ErrorKind::InvalidArgument, "point sets need dimension >= 1");
  for (const auto& p : points_)
    if (p.dim() != dim_) fail(ErrorKind::DomainMismatch, "point " + p.to_string() + " has the wrong dimension");
  std::sort(points_.begin(), points_.end());
  auto dup = std::adjacent_find(points_.begin(), points_.end());
  if (dup != points_.end()) fail(ErrorKind::DuplicateElement, "point " + dup->to_string() + " listed twice");
}

bool PointSet::contains(const LatticePoint& p) const { return std::binary_search(points_.begin(), points_.end(), p); }

PointSet PointSet::without(const LatticePoint& a, const LatticePoint& b) const {
  std::vector<LatticePoint> out;
  for (const auto& p : points_)
    if (!(p == a) && !(p == b)) out.push_back(p);
  return PointSet(dim_, std::move(out));
}

}  // namespace subsum
