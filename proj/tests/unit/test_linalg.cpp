#include <doctest.h>

#include "../support.hpp"
#include "recaut/errors.hpp"
#include "recaut/matrix.hpp"
#include "recaut/quadratic.hpp"

using namespace recaut;

TEST_SUITE("linalg") {
  TEST_CASE("rational parsing and printing") {
    CHECK(Rational::parse("6/4").str() == "3/2");
    CHECK(Rational::parse("-3").str() == "-3");
    CHECK(Rational::parse("0/5").is_zero());
    CHECK_THROWS_AS(Rational::parse("1/0"), FormatError);
    CHECK_THROWS_AS(Rational::parse("x"), FormatError);
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
  }

  TEST_CASE("gaussian rationals") {
    const GaussianRational i(Rational(0), Rational(1));
    CHECK(i * i == GaussianRational(Rational(-1)));
    CHECK(conj(i) == GaussianRational(Rational(0), Rational(-1)));
    const GaussianRational z(Rational(3), Rational(4));
    CHECK(z / z == GaussianRational(Rational(1)));
  }

  TEST_CASE("products") {
    const RatMatrix f{{1, 1}, {1, 0}};
    CHECK(RatMatrix::identity(2) * RatMatrix::identity(2) == RatMatrix::identity(2));
    CHECK(f * f == RatMatrix{{2, 1}, {1, 1}});
    CHECK(f * RatMatrix::column({1, 0}) == RatMatrix::column({1, 1}));
    CHECK_THROWS_AS(f * RatMatrix::row({1, 0}), DimensionError);
  }

  TEST_CASE("tensor product and direct sum") {
    const RatMatrix f{{1, 1}, {1, 0}};
    CHECK(tensor_product(RatMatrix::identity(2), RatMatrix::identity(2)) == RatMatrix::identity(4));
    const RatMatrix k = tensor_product(f, f);
    CHECK(k.rows() == 4);
    CHECK(k(0, 0) == 1);
    CHECK(k(0, 1) == 1);
    CHECK(k(1, 0) == 1);
    CHECK(k(1, 1) == 0);
    CHECK(tensor_product(RatMatrix::column({1, 0}), RatMatrix::column({1, 0})) == RatMatrix::column({1, 0, 0, 0}));
    CHECK(direct_sum(RatMatrix::identity(1), RatMatrix::identity(1)) == RatMatrix::identity(2));
    CHECK(direct_sum(RatMatrix{{2}}, RatMatrix{{3}}) == RatMatrix{{2, 0}, {0, 3}});
    CHECK(concat_columns(RatMatrix::column({1, 0}), RatMatrix::column({1})) == RatMatrix::column({1, 0, 1}));
  }

  TEST_CASE("mixed-product laws on random matrices") {
    testing::Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const RatMatrix a = testing::random_matrix(rng, 2, 2), b = testing::random_matrix(rng, 2, 2);
      const RatMatrix c = testing::random_matrix(rng, 2, 2), d = testing::random_matrix(rng, 2, 2);
      CHECK(tensor_product(a, b) * tensor_product(c, d) == tensor_product(a * c, b * d));
      CHECK(direct_sum(a, b) * direct_sum(c, d) == direct_sum(a * c, b * d));
    }
  }

  TEST_CASE("characteristic polynomial") {
    CHECK(char_poly(RatMatrix::identity(2)) == std::vector<Rational>{1, -2, 1});
    CHECK(char_poly(RatMatrix{{1, 1}, {1, 0}}) == std::vector<Rational>{1, -1, -1});
    CHECK(char_poly(RatMatrix{{2, 3}, {1, 0}}) == std::vector<Rational>{1, -2, -3});
  }

  TEST_CASE("Cayley-Hamilton and determinant") {
    testing::Rng rng(12);
    for (std::size_t n = 1; n <= 5; ++n) {
      const RatMatrix a = testing::random_matrix(rng, n, n);
      const auto p = char_poly(a);
      RatMatrix acc(n, n);
      for (const auto& c : p) acc = acc * a + RatMatrix::identity(n) * c;
      CHECK(acc == RatMatrix(n, n));
      const Rational sign = n % 2 == 0 ? Rational(1) : Rational(-1);
      CHECK(p.back() == sign * determinant(a));
    }
  }

  TEST_CASE("conjugate transpose") {
    const GaussianRational i(Rational(0), Rational(1));
    ComplexMatrix m(2, 2);
    m(0, 0) = i;
    m(1, 1) = GaussianRational(Rational(1));
    ComplexMatrix expected = m;
    expected(0, 0) = conj(i);
    CHECK(conj_transpose(m) == expected);
    const RatMatrix r{{1, 2}, {3, 4}};
    CHECK(conj_transpose(r) == r.transpose());
  }

  TEST_CASE("stochastic predicates") {
    CHECK(is_column_stochastic(RatMatrix{{Rational(1, 2), 1}, {Rational(1, 2), 0}}));
    CHECK_FALSE(is_column_stochastic(RatMatrix{{Rational(1, 2), 1}, {Rational(1, 3), 0}}));
    CHECK_FALSE(is_column_stochastic(RatMatrix{{2, 1}, {-1, 0}}));
  }

  TEST_CASE("quadratic numbers") {
    const QuadraticNumber r5 = QuadraticNumber::sqrt_of(Rational(5));
    const QuadraticNumber phi = (QuadraticNumber(Rational(1)) + r5) * QuadraticNumber(Rational(1, 2));
    CHECK(phi * phi == phi + QuadraticNumber(Rational(1)));
    CHECK(phi.sign() > 0);
    CHECK((QuadraticNumber(Rational(2)) - r5).sign() < 0);
    CHECK((QuadraticNumber(Rational(9, 4)) - r5).sign() > 0);
    CHECK(QuadraticNumber::sqrt_of(Rational(9, 4)).is_rational());
    CHECK(QuadraticNumber::sqrt_of(Rational(0)).is_zero());
    const auto [lo, hi] = r5.bounds(20);
    CHECK(lo * lo < Rational(5));
    CHECK(hi * hi > Rational(5));
    CHECK(hi - lo <= Rational(1, 1 << 19));
  }
}
