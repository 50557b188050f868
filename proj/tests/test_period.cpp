#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dworklab/catalog.hpp"
#include "dworklab/error.hpp"
#include "dworklab/geometry.hpp"
#include "dworklab/period.hpp"
#include "dworklab/text_format.hpp"

using namespace dworklab;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

std::vector<Integer> first(const PeriodSequence& a, std::size_t count) {
  return std::vector<Integer>(a.values.begin(), a.values.begin() + static_cast<long>(count));
}

} // namespace

TEST_CASE("pruned period of the 23-term polynomial") {
  auto a = period_coefficients_pruned(get_entry("bk24").polynomial(), 6);
  CHECK(a.values == ints({1, 0, 18, 168, 2430, 37200, 605340}));
  CHECK(a.method == PeriodMethod::pruned);
  CHECK(a.ring.is_exact());
}

TEST_CASE("pruned period of x + y + 1/(xy)") {
  auto a = period_coefficients_pruned(parse_polynomial("x + y + x^-1*y^-1"), 9);
  CHECK(a.values == ints({1, 0, 0, 6, 0, 0, 90, 0, 0, 1680}));
}

TEST_CASE("a(0) = 1 for every catalog entry") {
  for (const auto& e : catalog_entries()) {
    CHECK(period_coefficients_pruned(e.polynomial(), 0).values == ints({1}));
    CHECK(period_coefficients_multinomial(e.polynomial(), 0).values == ints({1}));
  }
}

TEST_CASE("multinomial period examples") {
  auto cheb = period_coefficients_multinomial(parse_polynomial("x + x^-1"), 6);
  CHECK(cheb.values == ints({1, 0, 2, 0, 6, 0, 20}));
  auto cross = period_coefficients_multinomial(parse_polynomial("x + y + x^-1 + y^-1"), 4);
  CHECK(cross.values == ints({1, 0, 4, 0, 36}));
  auto b62 = period_coefficients_multinomial(get_entry("bk62").polynomial(), 3);
  CHECK(b62.at(3) == 18);
  CHECK(b62.method == PeriodMethod::multinomial);
}

TEST_CASE("general coefficients enter through prod c_j^l_j") {
  auto f = parse_polynomial("2*x + 3*x^-1 - y + 5*y^-2*x");
  auto pruned = period_coefficients_pruned(f, 10);
  auto multi = period_coefficients_multinomial(f, 10);
  CHECK(pruned.values == multi.values);
  CHECK(pruned.at(2) == 12);
  for (std::size_t n = 0; n <= 6; ++n) CHECK(pruned.at(n) == constant_term(power(f, n)));
}

TEST_CASE("degenerate inputs") {
  auto c = period_coefficients_pruned(parse_polynomial("3"), 3);
  CHECK(c.values == ints({1, 3, 9, 27}));
  CHECK(period_coefficients_multinomial(parse_polynomial("3"), 3).values == c.values);
  auto z = period_coefficients_pruned(LaurentPolynomial(std::vector<std::string>{"x"}), 2);
  CHECK(z.values == ints({1, 0, 0}));
  // No return to the origin: every a(n) with n >= 1 vanishes.
  auto one_sided = period_coefficients_pruned(parse_polynomial("x + x^2"), 5);
  CHECK(one_sided.values == ints({1, 0, 0, 0, 0, 0}));
  CHECK(period_coefficients_multinomial(parse_polynomial("x + x^2"), 5).values == one_sided.values);
}

TEST_CASE("range and limit errors") {
  auto a = period_coefficients_pruned(parse_polynomial("x + x^-1"), 4);
  CHECK_THROWS_AS(a.at(5), DomainError);
  PeriodLimits tight;
  tight.max_terms = 10;
  try {
    period_coefficients_pruned(get_entry("bk24").polynomial(), 6, CoefficientRing::exact(), tight);
    FAIL("expected LimitExceeded");
  } catch (const LimitExceeded& e) {
    CHECK(std::string(e.what()).find("n = ") != std::string::npos);
  }
  PeriodLimits few_nodes;
  few_nodes.max_nodes = 5;
  CHECK_THROWS_AS(period_coefficients_multinomial(get_entry("bk24").polynomial(), 6, few_nodes), LimitExceeded);
}

TEST_CASE("theta operators") {
  ThetaOperator theta;
  theta.terms.emplace_back(0, ints({0, 1}));
  PeriodSequence unit;
  unit.values = ints({1, 0, 0, 0, 0});
  for (const auto& r : apply_theta_operator(theta, unit, 4)) CHECK(r == 0);

  CHECK(theta_product(2, {{1, 1}, {0, 3}}) == ints({0, 6, 6}));
  CHECK(evaluate_theta_polynomial(ints({1, 2, 3}), 2) == 17);

  const auto& op = *get_entry("bk62").theta_operator;
  CHECK(op.verifiable);
  REQUIRE(op.terms.size() == 3);
  CHECK(evaluate_theta_polynomial(op.terms[1].second, 0) == -18);
  PeriodSequence b;
  b.values = ints({1, 18});
  CHECK(apply_theta_operator(op, b, 1) == ints({0, 0}));
  b.values = ints({1, 0});
  CHECK(apply_theta_operator(op, b, 1)[1] == -18);

  auto closed = compress_sequence(closed_form_sequence(get_entry("bk62"), 36), 3);
  for (const auto& r : apply_theta_operator(op, closed, 12)) CHECK(r == 0);
  CHECK_THROWS_AS(apply_theta_operator(op, closed, 13), DomainError);
}

TEST_CASE("property: pruned and multinomial agree on the catalog up to n = 12") {
  for (const auto& e : catalog_entries()) {
    INFO(e.name);
    auto f = e.polynomial();
    CHECK(period_coefficients_pruned(f, 12).values == period_coefficients_multinomial(f, 12).values);
  }
}

TEST_CASE("property: a(n) vanishes off multiples of the covering index") {
  for (const auto& e : catalog_entries()) {
    INFO(e.name);
    auto f = e.polynomial();
    auto k = kernel_and_covering_index(ExponentMatrix::of(f)).covering_index;
    REQUIRE(k.fits_ulong_p());
    auto a = period_coefficients_pruned(f, e.name == "bk24" ? 12 : 30);
    for (std::size_t n = 0; n < a.size(); ++n)
      if (n % k.get_ui() != 0) CHECK(a.at(n) == 0);
  }
}

TEST_CASE("property: modular values are exact values reduced") {
  struct Case {
    const char* name;
    std::size_t n;
    unsigned long p;
    unsigned s;
  };
  for (auto c : {Case{"bk24", 12, 2, 3}, Case{"bk62", 24, 5, 2}, Case{"triangle3", 40, 3, 3},
                 Case{"cross2", 30, 7, 2}, Case{"negative", 30, 2, 4}}) {
    INFO(c.name);
    auto f = get_entry(c.name).polynomial();
    auto ring = CoefficientRing::modular(c.p, c.s);
    auto exact = period_coefficients_pruned(f, c.n);
    auto mod = period_coefficients_pruned(f, c.n, ring);
    CHECK(mod.ring == ring);
    for (std::size_t n = 0; n <= c.n; ++n) CHECK(mod.at(n) == ring.reduce(exact.at(n)));
  }
}

TEST_CASE("property: pruning keeps the constant term of the full power") {
  for (const char* name : {"cross2", "triangle3"}) {
    auto f = get_entry(name).polynomial();
    auto a = period_coefficients_pruned(f, 8);
    for (std::size_t n = 0; n <= 8; ++n) CHECK(a.at(n) == constant_term(power(f, n)));
  }
}

TEST_CASE("property: closed forms agree with computed periods") {
  for (const auto& e : catalog_entries()) {
    if (e.closed_form == ClosedForm::none) continue;
    INFO(e.name);
    const std::size_t n = e.name == "bk62" ? 36 : 40;
    CHECK(period_coefficients_pruned(e.polynomial(), n).values == closed_form_sequence(e, n).values);
  }
  CHECK(first(closed_form_sequence(get_entry("chebyshev"), 6), 7) == ints({1, 0, 2, 0, 6, 0, 20}));
}
