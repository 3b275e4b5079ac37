#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "subsum/scalar.hpp"

namespace subsum {

class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  LatticePoint(std::initializer_list<long> coords);
  static LatticePoint zero(std::size_t dim) { return LatticePoint(std::vector<Integer>(dim, Integer(0))); }

  std::size_t dim() const { return coords_.size(); }
  const std::vector<Integer>& coords() const { return coords_; }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const;

  LatticePoint operator-() const;
  friend LatticePoint operator+(const LatticePoint& a, const LatticePoint& b);
  friend LatticePoint operator-(const LatticePoint& a, const LatticePoint& b);
  friend bool operator==(const LatticePoint& a, const LatticePoint& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const LatticePoint& a, const LatticePoint& b) { return a.coords_ < b.coords_; }

  std::string to_string() const;

 private:
  std::vector<Integer> coords_;
};

Integer dot(const LatticePoint& a, const LatticePoint& b);

// Finite duplicate-free set of scalars in canonical order, tagged with its
// ground domain (the basis).
class ScalarSet {
 public:
  ScalarSet() : basis_(Basis::rational()) {}
  explicit ScalarSet(std::vector<Scalar> elements);
  ScalarSet(BasisPtr basis, std::vector<Scalar> elements);
  static ScalarSet of_integers(std::initializer_list<long> values);
  static ScalarSet of_integers(const std::vector<std::int64_t>& values);

  const BasisPtr& basis_ptr() const { return basis_; }
  const Basis& basis() const { return *basis_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const std::vector<Scalar>& elements() const { return elements_; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }
  const Scalar& operator[](std::size_t i) const { return elements_[i]; }
  bool contains(const Scalar& x) const;

  // Increasing real order; uses certified comparisons for formal reals.
  std::vector<Scalar> sorted_by_value() const;
  bool all_positive() const;
  Scalar total() const;

  ScalarSet dilated(const Rational& c) const;
  ScalarSet with(const Scalar& x) const;
  ScalarSet without(const ScalarSet& removed) const;
  ScalarSet united(const ScalarSet& other) const;

  friend bool operator==(const ScalarSet& a, const ScalarSet& b) { return a.elements_ == b.elements_; }

 private:
  BasisPtr basis_;
  std::vector<Scalar> elements_;
};

class PointSet {
 public:
  explicit PointSet(std::size_t dim) : dim_(dim) {}
  PointSet(std::size_t dim, std::vector<LatticePoint> points);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<LatticePoint>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }
  const LatticePoint& operator[](std::size_t i) const { return points_[i]; }
  bool contains(const LatticePoint& p) const;

  PointSet without(const LatticePoint& a, const LatticePoint& b) const;
  friend bool operator==(const PointSet& a, const PointSet& b) { return a.points_ == b.points_; }

 private:
  std::size_t dim_;
  std::vector<LatticePoint> points_;
};

}  // namespace subsum
