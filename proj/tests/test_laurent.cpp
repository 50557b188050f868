#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dworklab/catalog.hpp"
#include "dworklab/error.hpp"
#include "dworklab/laurent.hpp"
#include "dworklab/text_format.hpp"

using namespace dworklab;

namespace {

LaurentPolynomial P(const char* text) { return parse_polynomial(text); }

LaurentPolynomial random_poly(std::mt19937_64& rng, std::size_t nvars, int terms) {
  std::uniform_int_distribution<int> e(-3, 3), c(-5, 5);
  std::vector<LaurentPolynomial::Term> ts;
  for (int t = 0; t < terms; ++t) {
    ExponentVector v(nvars);
    for (std::size_t i = 0; i < nvars; ++i) v[i] = e(rng);
    ts.push_back({v, Integer(c(rng))});
  }
  return LaurentPolynomial::from_terms(default_variable_names(nvars), ts);
}

} // namespace

TEST_CASE("parse reads terms and signs") {
  auto f = P("x + x^-1");
  REQUIRE(f.size() == 2);
  CHECK(f.coefficient(ExponentVector{1}) == 1);
  CHECK(f.coefficient(ExponentVector{-1}) == 1);

  auto g = P("x1*x2 - 3*x1^-2");
  REQUIRE(g.nvars() == 2);
  CHECK(g.variables() == std::vector<std::string>{"x1", "x2"});
  CHECK(g.coefficient(ExponentVector{1, 1}) == 1);
  CHECK(g.coefficient(ExponentVector{-2, 0}) == -3);
}

TEST_CASE("parse of the 23-term catalog polynomial") {
  auto f = get_entry("bk24").polynomial();
  CHECK(f.size() == 23);
  CHECK(f.nvars() == 4);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(f.coeff(i) == 1);
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(P("1/x"), ParseError);
  CHECK_THROWS_AS(P("x +"), ParseError);
  CHECK_THROWS_AS(P("x^"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x + z", {"x", "y"}), ParseError);
}

TEST_CASE("natural variable order") {
  auto f = P("x10 + x2");
  CHECK(f.variables() == std::vector<std::string>{"x2", "x10"});
}

TEST_CASE("multiply") {
  auto f = P("x + x^-1");
  CHECK(f * f == P("x^2 + 2 + x^-2"));
  CHECK(f * LaurentPolynomial::constant(f.variables(), 1) == f);
  auto r4 = CoefficientRing::modular(2, 2);
  auto r2 = CoefficientRing::modular(2, 1);
  CHECK(multiply(f.reduced(r4), f.reduced(r4)) == P("x^2 + 2 + x^-2").reduced(r4));
  auto sq2 = multiply(f.reduced(r2), f.reduced(r2));
  CHECK(sq2.size() == 2);
  CHECK(sq2 == P("x^2 + x^-2").reduced(r2));
}

TEST_CASE("multiply rejects mismatched operands") {
  auto f = P("x + x^-1");
  CHECK_THROWS_AS(multiply(f, f.reduced(CoefficientRing::modular(3, 1))), DomainError);
  CHECK_THROWS_AS(multiply(f, P("x + y")), DomainError);
}

TEST_CASE("power and constant term") {
  CHECK(power(P("x + y"), 0) == LaurentPolynomial::constant({"x", "y"}, 1));
  CHECK(constant_term(power(P("x + y + x^-1*y^-1"), 3)) == 6);
  CHECK(constant_term(power(P("X^2 + X^-1"), 3)) == 3);
  CHECK(constant_term(power(P("x + y + x^-1*y^-1"), 6)) == 90);
  CHECK(constant_term(power(get_entry("bk24").polynomial(), 2)) == 18);
  CHECK(constant_term(LaurentPolynomial::constant({"x"}, 1)) == 1);
  CHECK(constant_term(LaurentPolynomial(std::vector<std::string>{"x"})) == 0);
}

TEST_CASE("substitute_power") {
  auto f = P("x + x^-1");
  CHECK(substitute_power(f, 2) == P("x^2 + x^-2"));
  CHECK(substitute_power(f, 1) == f);
  auto g = P("5 + x^2*y");
  CHECK(constant_term(substitute_power(g, 3)) == 5);
}

TEST_CASE("constant_term_of_product matches the materialised product") {
  auto f = P("x + y + x^-1*y^-1");
  std::vector<LaurentPolynomial> fs = {power(f, 2), substitute_power(power(f, 1), 3), power(f, 4)};
  CHECK(constant_term_of_product(fs) == constant_term(fs[0] * fs[1] * fs[2]));
}

TEST_CASE("exact_divide") {
  CHECK(exact_divide(P("2*x + 4"), 2) == P("x + 2"));
  CHECK_THROWS_AS(exact_divide(P("2*x + 3"), 2), ArithmeticError);
}

TEST_CASE("JSON form round trip") {
  auto f = P("x1*x2 - 3*x1^-2 + 123456789012345678901234567890");
  auto j = polynomial_to_json(f);
  CHECK(j["variables"] == nlohmann::json({"x1", "x2"}));
  CHECK(j["terms"][0]["coeff"].is_string());
  CHECK(polynomial_from_json(j) == f);
  CHECK(read_polynomial(j.dump()) == f);
}

TEST_CASE("property: parse(format(f)) == f") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    auto f = random_poly(rng, 1 + t % 3, 1 + t % 7);
    CHECK(parse_polynomial(format_polynomial(f), f.variables()) == f);
  }
}

TEST_CASE("property: reduction is a ring homomorphism") {
  std::mt19937_64 rng(11);
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul})
    for (unsigned s = 1; s <= 3; ++s)
      for (int t = 0; t < 10; ++t) {
        auto f = random_poly(rng, 2, 5), g = random_poly(rng, 2, 5);
        auto ring = CoefficientRing::modular(p, s);
        CHECK(multiply(f, g).reduced(ring) == multiply(f.reduced(ring), g.reduced(ring)));
        CHECK((f + g).reduced(ring) == f.reduced(ring) + g.reduced(ring));
      }
}

TEST_CASE("property: constant term is invariant under X -> X^q") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    auto f = random_poly(rng, 1 + t % 3, 6);
    for (unsigned long q = 1; q <= 5; ++q) CHECK(constant_term(substitute_power(f, q)) == constant_term(f));
  }
}

TEST_CASE("property: f^p == f(X^p) mod p") {
  std::mt19937_64 rng(17);
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul})
    for (int t = 0; t < 10; ++t) {
      auto f = random_poly(rng, 2, 4);
      auto ring = CoefficientRing::modular(p, 1);
      CHECK(power(f, p).reduced(ring) == substitute_power(f, p).reduced(ring));
    }
}

TEST_CASE("coefficient ring") {
  CHECK_THROWS_AS(CoefficientRing::modular(4, 1), DomainError);
  auto r = CoefficientRing::modular(5, 3);
  CHECK(r.modulus() == 125);
  CHECK(r.reduce(Integer(-1)) == 124);
  CHECK_THROWS_AS(P("x").reduced(r).reduced(CoefficientRing::exact()), DomainError);
}
