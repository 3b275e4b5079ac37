#include "subsum/scalar.hpp"

#include <algorithm>
#include <cctype>

#include "subsum/error.hpp"

namespace subsum {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UncertifiedComparison: return "UncertifiedComparison";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NonPositiveElement: return "NonPositiveElement";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::ZeroDifference: return "ZeroDifference";
    case ErrorKind::ZeroDirection: return "ZeroDirection";
    case ErrorKind::XNotLargest: return "XNotLargest";
    case ErrorKind::CollinearInput: return "CollinearInput";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::TableGap: return "TableGap";
    case ErrorKind::NotInGAP: return "NotInGAP";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::NoIndexFound: return "NoIndexFound";
    case ErrorKind::PipelineStalled: return "PipelineStalled";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateElement: return "DuplicateElement";
    case ErrorKind::StorageError: return "StorageError";
  }
  return "Unknown";
}

namespace {

bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_decimal_integer(num) || !is_decimal_integer(den) || den.front() == '-')
    fail(ErrorKind::ParseError, "malformed scalar '" + std::string(text) + "'");
  Integer p(std::string(num), 10);
  Integer q(std::string(den), 10);
  if (q == 0) fail(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Rational rational_gcd(const Rational& a, const Rational& b) {
  Integer num, den;
  mpz_gcd(num.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
  mpz_lcm(den.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer lcm_range(unsigned long m) {
  Integer acc = 1;
  for (unsigned long k = 2; k <= m; ++k) {
    Integer kk(k);
    mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), kk.get_mpz_t());
  }
  return acc;
}

BasisPtr Basis::rational() {
  static const BasisPtr instance(new Basis({}));
  return instance;
}

BasisPtr Basis::make(std::vector<BasisElement> irrationals) {
  if (irrationals.empty()) return rational();
  for (const auto& e : irrationals)
    if (e.error <= 0) fail(ErrorKind::InvalidArgument, "basis element '" + e.name + "' needs a positive error bound");
  return BasisPtr(new Basis(std::move(irrationals)));
}

bool Basis::operator==(const Basis& other) const {
  if (irrationals_.size() != other.irrationals_.size()) return false;
  for (std::size_t i = 0; i < irrationals_.size(); ++i) {
    const auto& a = irrationals_[i];
    const auto& b = other.irrationals_[i];
    if (a.name != b.name || a.approx != b.approx || a.error != b.error) return false;
  }
  return true;
}

BasisPtr common_basis(const BasisPtr& a, const BasisPtr& b) {
  if (a == b || *a == *b) return a;
  if (a->is_rational()) return b;
  if (b->is_rational()) return a;
  fail(ErrorKind::DomainMismatch, "scalars live over different formal bases");
}

Scalar::Scalar(const Rational& q) : basis_(Basis::rational()), coords_{q} { coords_[0].canonicalize(); }

Scalar::Scalar(BasisPtr basis, std::vector<Rational> coords) : basis_(std::move(basis)), coords_(std::move(coords)) {
  if (coords_.size() != basis_->dimension())
    fail(ErrorKind::InvalidArgument, "coordinate count does not match basis dimension");
  for (auto& c : coords_) c.canonicalize();
}

bool Scalar::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

bool Scalar::is_rational() const {
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c == 0; });
}

Rational Scalar::as_rational() const {
  if (!is_rational()) fail(ErrorKind::DomainMismatch, "formal real " + to_string() + " is not rational");
  return coords_[0];
}

Scalar Scalar::promoted(const BasisPtr& basis) const {
  if (basis_ == basis || *basis_ == *basis) return *this;
  if (!basis_->is_rational()) fail(ErrorKind::DomainMismatch, "cannot re-express a formal real over another basis");
  std::vector<Rational> c(basis->dimension(), Rational(0));
  c[0] = coords_[0];
  return Scalar(basis, std::move(c));
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  auto b = common_basis(basis_, other.basis_);
  if (b != basis_) *this = promoted(b);
  if (other.coords_.size() == coords_.size()) {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  } else {
    coords_[0] += other.coords_[0];  // other is rational, this is formal
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar Scalar::scaled(const Rational& c) const {
  Scalar r = *this;
  for (auto& x : r.coords_) x *= c;
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.basis_ == b.basis_) return a.coords_ == b.coords_;
  auto basis = common_basis(a.basis_, b.basis_);
  return a.promoted(basis).coords_ == b.promoted(basis).coords_;
}

std::string Scalar::to_string() const {
  if (basis_->is_rational()) return subsum::to_string(coords_[0]);
  std::string out = "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ",";
    out += subsum::to_string(coords_[i]);
  }
  return out + "]";
}

bool canonical_less(const Scalar& a, const Scalar& b) {
  if (a.basis_ptr() == b.basis_ptr()) return a.coords() < b.coords();
  auto basis = common_basis(a.basis_ptr(), b.basis_ptr());
  return a.promoted(basis).coords() < b.promoted(basis).coords();
}

int sign(const Scalar& x) {
  if (x.is_rational()) return sgn(x.rational_part());
  const auto& irr = x.basis().irrationals();
  Rational centre = x.coords()[0];
  Rational radius = 0;
  for (std::size_t i = 0; i < irr.size(); ++i) {
    const Rational& c = x.coords()[i + 1];
    centre += c * irr[i].approx;
    radius += abs(c) * irr[i].error;
  }
  if (centre > radius) return 1;
  if (centre < -radius) return -1;
  fail(ErrorKind::UncertifiedComparison, "approximation budget cannot certify the sign of " + x.to_string());
}

std::strong_ordering compare(const Scalar& x, const Scalar& y) {
  int s = sign(x - y);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::optional<Rational> commensurability_ratio(const Scalar& x, const Scalar& y) {
  if (y.is_zero()) fail(ErrorKind::DivisionByZero, "commensurability ratio with zero denominator");
  auto basis = common_basis(x.basis_ptr(), y.basis_ptr());
  Scalar xs = x.promoted(basis);
  Scalar ys = y.promoted(basis);
  std::size_t pivot = 0;
  while (ys.coords()[pivot] == 0) ++pivot;
  Rational ratio = xs.coords()[pivot] / ys.coords()[pivot];
  for (std::size_t i = 0; i < ys.coords().size(); ++i)
    if (xs.coords()[i] != ratio * ys.coords()[i]) return std::nullopt;
  return ratio;
}

std::optional<Scalar> group_generator(std::span<const Scalar> xs) {
  if (xs.empty()) fail(ErrorKind::InvalidArgument, "group_generator needs a nonempty set");
  const Scalar& unit = xs.front();
  Rational g = 0;
  for (const auto& x : xs) {
    if (x.is_zero()) fail(ErrorKind::ZeroElement, "group_generator requires nonzero elements");
    auto q = commensurability_ratio(x, unit);
    if (!q) return std::nullopt;
    g = rational_gcd(g, *q);
  }
  Scalar a = unit.scaled(g);
  if (sign(a) < 0) a = -a;
  return a;
}

std::optional<Integer> order_mod_one(const Scalar& x) {
  if (!x.is_rational()) return std::nullopt;
  return x.rational_part().get_den();
}

}  // namespace subsum
