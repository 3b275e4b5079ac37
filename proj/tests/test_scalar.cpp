#include <doctest.h>

#include <random>

#include "subsum/error.hpp"
#include "subsum/integer_matrix.hpp"
#include "subsum/scalar.hpp"
#include "subsum/sets.hpp"

using namespace subsum;

namespace {

BasisPtr sqrt2_basis() { return Basis::make({{"alpha", Rational(577, 408), Rational(1, 10000)}}); }

Scalar formal(const BasisPtr& b, long c0, long c1) { return Scalar(b, {Rational(c0), Rational(c1)}); }

}  // namespace

TEST_CASE("rational parse/print round trip") {
  for (const char* s : {"0", "-7", "3/2", "-9/4", "1000000000000000000000/7"}) CHECK(to_string(parse_rational(s)) == s);
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-0")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    long p = static_cast<long>(rng() % 2001) - 1000;
    long q = static_cast<long>(rng() % 999) + 1;
    Rational canon(p, q);
    canon.canonicalize();
    CHECK(to_string(canon) == to_string(parse_rational(to_string(canon))));
  }
}

TEST_CASE("compare") {
  CHECK(compare(Scalar(Rational(3, 2)), Scalar(Rational(9, 4))) == std::strong_ordering::less);
  Scalar x(Rational(5, 3));
  CHECK(compare(x, x) == std::strong_ordering::equal);
  auto b = sqrt2_basis();
  CHECK(compare(formal(b, 1, 0), formal(b, 0, 1)) == std::strong_ordering::less);
  CHECK(compare(formal(b, 0, 1), formal(b, 1, 0)) == std::strong_ordering::greater);

  auto coarse = Basis::make({{"beta", Rational(3, 2), Rational(1)}});
  try {
    (void)compare(Scalar(coarse, {Rational(1), Rational(0)}), Scalar(coarse, {Rational(0), Rational(1)}));
    FAIL("expected UncertifiedComparison");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UncertifiedComparison);
  }
}

TEST_CASE("group_generator") {
  std::vector<Scalar> a{Rational(3, 2), Rational(9, 4)};
  CHECK(group_generator(a)->as_rational() == Rational(3, 4));
  std::vector<Scalar> b{Scalar(2), Scalar(4), Scalar(6)};
  CHECK(group_generator(b)->as_rational() == 2);
  auto basis = sqrt2_basis();
  std::vector<Scalar> c{formal(basis, 1, 0), formal(basis, 0, 1)};
  CHECK_FALSE(group_generator(c).has_value());
  std::vector<Scalar> d{formal(basis, 0, 2), formal(basis, 0, 3)};
  CHECK(*group_generator(d) == formal(basis, 0, 1));
  std::vector<Scalar> neg{Scalar(-4), Scalar(6)};
  CHECK(group_generator(neg)->as_rational() == 2);
}

TEST_CASE("group_generator dilation equivariance and quotient coprimality") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    std::vector<Scalar> xs;
    std::size_t n = 1 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) xs.emplace_back(Rational(static_cast<long>(rng() % 40) + 1, static_cast<long>(rng() % 12) + 1));
    Rational c(static_cast<long>(rng() % 9) + 1, static_cast<long>(rng() % 9) + 1);
    c.canonicalize();
    std::vector<Scalar> ys;
    for (const auto& x : xs) ys.push_back(x.scaled(c));
    auto g = group_generator(xs);
    auto h = group_generator(ys);
    REQUIRE(g);
    REQUIRE(h);
    CHECK(h->as_rational() == g->as_rational() * c);
    Integer common = 0;
    for (const auto& x : xs) {
      Rational q = x.as_rational() / g->as_rational();
      REQUIRE(q.get_den() == 1);
      mpz_gcd(common.get_mpz_t(), common.get_mpz_t(), q.get_num_mpz_t());
    }
    CHECK(common == 1);
  }
}

TEST_CASE("commensurability_ratio") {
  CHECK(*commensurability_ratio(Scalar(Rational(3, 2)), Scalar(Rational(9, 4))) == Rational(2, 3));
  Scalar x(Rational(7, 5));
  CHECK(*commensurability_ratio(x, x) == 1);
  auto b = sqrt2_basis();
  CHECK_FALSE(commensurability_ratio(formal(b, 1, 0), formal(b, 0, 1)).has_value());
  CHECK_THROWS_AS(commensurability_ratio(x, Scalar(0)), Error);
  // ratio present iff generator present
  std::vector<std::pair<Scalar, Scalar>> pairs{{formal(b, 1, 1), formal(b, 2, 2)}, {formal(b, 1, 1), formal(b, 2, 1)},
                                               {Scalar(3), formal(b, 0, 1)}};
  for (auto& [p, q] : pairs) {
    std::vector<Scalar> v{p, q};
    CHECK(commensurability_ratio(p, q).has_value() == group_generator(v).has_value());
  }
}

TEST_CASE("order mod one and lcm") {
  CHECK(*order_mod_one(Scalar(Rational(1, 3))) == 3);
  CHECK(*order_mod_one(Scalar(7)) == 1);
  CHECK_FALSE(order_mod_one(formal(sqrt2_basis(), 0, 1)).has_value());
  CHECK(lcm_range(3) == 6);
  CHECK(lcm_range(10) == 2520);
}

TEST_CASE("scalar sets reject duplicates and keep canonical order") {
  auto s = ScalarSet::of_integers({5, 1, 3});
  CHECK(s[0] == Scalar(1));
  CHECK(s[2] == Scalar(5));
  try {
    (void)ScalarSet::of_integers({3, 3});
    FAIL("expected DuplicateElement");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateElement);
  }
  CHECK(s.total() == Scalar(9));
  CHECK(s.dilated(Rational(1, 2)).contains(Scalar(Rational(5, 2))));
}

TEST_CASE("integer matrix helpers") {
  IntMatrix m{{Integer(1), Integer(2)}, {Integer(2), Integer(4)}};
  CHECK(rank(m) == 1);
  std::vector<std::vector<std::int64_t>> m64{{1, 0, 1}, {0, 1, 1}, {1, 1, 2}};
  CHECK(bareiss_rank(m64) == 2);
  CHECK(determinant({{Integer(2), Integer(1)}, {Integer(1), Integer(3)}}) == 5);
  CHECK(determinant({{Integer(0), Integer(1)}, {Integer(1), Integer(0)}}) == -1);
  auto h = hermite_basis({{Integer(2), Integer(1)}, {Integer(-2), Integer(-1)}, {Integer(4), Integer(2)}}, 2);
  REQUIRE(h.size() == 1);
  CHECK(h[0] == IntVector{Integer(2), Integer(1)});
  auto h2 = hermite_basis({{Integer(4), Integer(0)}, {Integer(0), Integer(6)}, {Integer(2), Integer(3)}}, 2);
  REQUIRE(h2.size() == 2);
  CHECK(lattice_coordinates(h2, {Integer(2), Integer(3)}).has_value());
  CHECK_FALSE(lattice_coordinates(h2, {Integer(1), Integer(0)}).has_value());
  auto n = primitive_normal({{Integer(1), Integer(1), Integer(0)}, {Integer(0), Integer(2), Integer(2)}});
  REQUIRE(n);
  CHECK(*n == IntVector{Integer(1), Integer(-1), Integer(1)});
  CHECK_FALSE(primitive_normal(IntMatrix{{Integer(0), Integer(0)}}).has_value());
}
