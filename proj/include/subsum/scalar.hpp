#pragma once

// Exact ground domains: canonical rationals (GMP) and "formal reals", i.e.
// Q-linear combinations over a declared basis (1, alpha_1, ..., alpha_k) of
// formally independent irrationals. Order on formal reals is only reported
// when the declared approximation budget certifies the sign.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace subsum {

using Integer = mpz_class;
using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Rational rational_gcd(const Rational& a, const Rational& b);  // gcd(|a|, |b|), gcd(0, b) = |b|
Integer lcm_range(unsigned long m);                          // lcm(1, 2, ..., m)

struct BasisElement {
  std::string name;
  Rational approx;  // centre of the enclosing interval
  Rational error;   // half-width, > 0
};

class Basis;
using BasisPtr = std::shared_ptr<const Basis>;

class Basis {
 public:
  static BasisPtr rational();
  static BasisPtr make(std::vector<BasisElement> irrationals);

  // Number of coordinates including the leading "1".
  std::size_t dimension() const { return irrationals_.size() + 1; }
  bool is_rational() const { return irrationals_.empty(); }
  const std::vector<BasisElement>& irrationals() const { return irrationals_; }

  bool operator==(const Basis& other) const;

 private:
  explicit Basis(std::vector<BasisElement> irrationals) : irrationals_(std::move(irrationals)) {}
  std::vector<BasisElement> irrationals_;
};

class Scalar {
 public:
  Scalar() : Scalar(Rational(0)) {}
  Scalar(const Rational& q);  // NOLINT(google-explicit-constructor)
  Scalar(long v) : Scalar(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(BasisPtr basis, std::vector<Rational> coords);

  static Scalar parse(std::string_view text) { return Scalar(parse_rational(text)); }

  const Basis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const;       // all irrational coordinates vanish
  const Rational& rational_part() const { return coords_[0]; }
  Rational as_rational() const;   // throws DomainMismatch unless is_rational()

  // Same value expressed over `basis` (which must extend this scalar's basis).
  Scalar promoted(const BasisPtr& basis) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar scaled(const Rational& c) const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

  // Coordinatewise equality after promotion to a common basis.
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  BasisPtr basis_;
  std::vector<Rational> coords_;
};

// Common basis of two scalars; throws DomainMismatch for incompatible formal bases.
BasisPtr common_basis(const BasisPtr& a, const BasisPtr& b);

// Lexicographic order on coordinates. Coincides with the real order on
// rationals; for formal reals it is only a canonical storage order.
bool canonical_less(const Scalar& a, const Scalar& b);

struct CanonicalLess {
  bool operator()(const Scalar& a, const Scalar& b) const { return canonical_less(a, b); }
};

// Certified sign: -1, 0, +1. Throws UncertifiedComparison when the
// approximation budget cannot decide.
int sign(const Scalar& x);

std::strong_ordering compare(const Scalar& x, const Scalar& y);

// Largest a > 0 with every x in a*Z, or nullopt when the elements are not
// pairwise commensurable. Elements must be nonzero.
std::optional<Scalar> group_generator(std::span<const Scalar> xs);

// x / y when rational.
std::optional<Rational> commensurability_ratio(const Scalar& x, const Scalar& y);

// Additive order modulo 1: reduced denominator for rationals, nullopt (infinite) otherwise.
std::optional<Integer> order_mod_one(const Scalar& x);

}  // namespace subsum
