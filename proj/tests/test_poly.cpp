#include "doctest.h"
#include "kvsp/poly.hpp"
#include "oracles.hpp"

using namespace kvsp;

namespace {

RForm x(int i) { return RForm::variable(3, i); }

}  // namespace

TEST_CASE("multinomial basis order and coefficients") {
  const auto b22 = multinomial_basis<Rational>(2, 2);
  REQUIRE(b22.size() == 6);
  CHECK(b22[0] == x(0) * x(0));
  CHECK(b22[1] == (x(0) * x(1)).scaled(2));
  CHECK(b22[2] == (x(0) * x(2)).scaled(2));
  CHECK(b22[3] == x(1) * x(1));
  CHECK(b22[4] == (x(1) * x(2)).scaled(2));
  CHECK(b22[5] == x(2) * x(2));

  const auto b20 = multinomial_basis<Rational>(2, 0);
  REQUIRE(b20.size() == 1);
  CHECK(b20[0] == RForm::constant(3, 1));

  const auto b12 = multinomial_basis<Rational>(1, 2);
  const RForm y0 = RForm::variable(2, 0), y1 = RForm::variable(2, 1);
  REQUIRE(b12.size() == 3);
  CHECK(b12[0] == y0 * y0);
  CHECK(b12[1] == (y0 * y1).scaled(2));
  CHECK(b12[2] == y1 * y1);
}

TEST_CASE("space_dim") {
  CHECK(space_dim(2, 4) == 14);
  CHECK(space_dim(0, 7) == 0);
  CHECK(space_dim(2, 2) == 5);
  CHECK_THROWS_AS(space_dim(-1, 2), Error);
}

TEST_CASE("partial derivatives") {
  const RForm f4 = klein_quartic<Rational>();
  CHECK(partial(f4, 0) == parse_form("3*x0^2*x1 + x2^3", 3));
  CHECK(partial(x(0) * x(0) * x(0) * x(1), 1) == x(0) * x(0) * x(0));
  CHECK(partial(x(0) * x(0) * x(0) * x(0), 2).is_zero());
  const RForm c = RForm::constant(3, 5);
  CHECK(partial(c, 1).is_zero());
}

TEST_CASE("evaluate") {
  const RForm f4 = klein_quartic<Rational>();
  CHECK(evaluate(f4, Triple3{1, 1, 1}) == 3);
  CHECK(evaluate(f4, Triple3{1, 0, 0}) == 0);
  CHECK(evaluate(RForm(3, 4), Triple3{2, 3, 5}) == 0);
}

TEST_CASE("pow_linear") {
  CHECK(pow_linear(Triple3{1, 0, 0}, 4) == parse_form("x0^4", 3));
  CHECK(pow_linear(Triple3{1, 1, 0}, 4) ==
        parse_form("x0^4 + 4*x0^3*x1 + 6*x0^2*x1^2 + 4*x0*x1^3 + x1^4", 3));
  CHECK(pow_linear(Triple3{0, 0, 1}, 2) == parse_form("x2^2", 3));
  CHECK_THROWS_AS(pow_linear(Triple3{1, 2, 3}, 0), Error);
}

TEST_CASE("pow_linear matches an independent expansion") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto l = oracle::random_rational_point(rng);
    for (int d = 1; d <= 6; ++d) {
      const RForm f = pow_linear(l, d);
      const auto expected = oracle::expand_power(l, d);
      for (const auto& [e, c] : expected) CHECK(f.coeff(e) == c);
      CHECK(f.terms().size() <= expected.size());
    }
  }
}

TEST_CASE("rational arithmetic: (F + G) - G == F") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = static_cast<int>(rng() % 7);
    const RForm f = oracle::random_form(rng, d, 5);
    const RForm g = oracle::random_form(rng, d, 7);
    CHECK((f + g) - g == f);
  }
}

TEST_CASE("Euler identity d F = sum x_i d_i F") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 6);
    const RForm f = oracle::random_form(rng, d, 8);
    RForm euler(3, d);
    for (int i = 0; i < 3; ++i) euler += x(i) * partial(f, i);
    CHECK(euler == f.scaled(d));
  }
}

TEST_CASE("L^2 in the multinomial basis is (a^2, ab, ac, b^2, bc, c^2)") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto l = oracle::random_rational_point(rng);
    const auto v = coefficient_vector(pow_linear(l, 2));
    const auto& [a, b, c] = l;
    CHECK(v == std::vector<Rational>{a * a, a * b, a * c, b * b, b * c, c * c});
  }
}

TEST_CASE("complex evaluation agrees with rational evaluation") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = static_cast<int>(rng() % 7);
    const RForm f = oracle::random_form(rng, d, 6);
    const auto p = oracle::random_rational_point(rng);
    const double exact = Rational(evaluate(f, p)).get_d();
    const Triple3c pc{Complex(p[0].get_d()), Complex(p[1].get_d()), Complex(p[2].get_d())};
    const Complex approx = evaluate(to_complex(f), pc);
    CHECK(std::abs(approx.imag()) == 0.0);
    CHECK(std::abs(approx.real() - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("product degree cap") {
  const RForm q = pow_linear(Triple3{1, 2, 3}, 5);
  CHECK_NOTHROW(q * pow_linear(Triple3{1, 0, 0}, 3));
  CHECK_THROWS_AS(q * pow_linear(Triple3{1, 0, 0}, 4), Error);
}

TEST_CASE("shape errors") {
  CHECK_THROWS_AS(x(0) + x(0) * x(1), Error);
  RForm f(3, 2);
  CHECK_THROWS_AS(f.add_term({1, 0, 0}, 1), Error);
  CHECK_THROWS_AS(f.add_term({1, 1}, 1), Error);
}

TEST_CASE("text serialization round trip") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const RForm f = oracle::random_form(rng, 1 + static_cast<int>(rng() % 5), 6);
    if (f.is_zero()) continue;
    CHECK(parse_form(to_string(f), 3) == f);
  }
  CHECK(to_string(parse_form("3*x0^2*x1 + x2^3", 3)) == "3*x0^2*x1 + x2^3");
  CHECK(to_string(parse_form("-1/2*x0 + 2/4*x1", 3)) == "-1/2*x0 + 1/2*x1");
  CHECK_THROWS_AS(parse_form("x0^2 + x1", 3), Error);
  CHECK_THROWS_AS(parse_form("x5", 3), Error);
  CHECK_THROWS_AS(parse_form("1/0*x0", 3), Error);
  CHECK_THROWS_AS(parse_form("", 3), Error);
}
