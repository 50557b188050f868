#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dworklab/catalog.hpp"
#include "dworklab/decomposition.hpp"
#include "dworklab/error.hpp"
#include "dworklab/geometry.hpp"
#include "dworklab/period.hpp"
#include "dworklab/text_format.hpp"

using namespace dworklab;

namespace {

LaurentPolynomial P(const char* text) { return parse_polynomial(text); }

SplittingProfile profile(unsigned a, std::vector<unsigned> indices, std::vector<unsigned> digits,
                         unsigned shift = 0) {
  SplittingProfile pr;
  pr.a = a;
  pr.b = a + static_cast<unsigned>(indices.size()) - 1;
  pr.indices = std::move(indices);
  pr.digits = std::move(digits);
  pr.exponent_shift = shift;
  return pr;
}

} // namespace

TEST_CASE("layers of x + 1/x at p = 2") {
  auto f = P("x + x^-1");
  auto d = g_decomposition(f, 1, 2, 2);
  REQUIRE(d.layers.size() == 3);
  CHECK(d.layers[0] == f);
  CHECK(d.layers[1] == LaurentPolynomial::constant(f.variables(), 1));
  auto expected = substitute_power(d.layers[0], 4) + scale(substitute_power(d.layers[1], 2), 2) +
                  scale(d.layers[2], 4);
  CHECK(expected == power(f, 4));
  CHECK(reconstruct(d) == power(f, 4));
}

TEST_CASE("g_{n,0} = f^n") {
  for (const char* name : {"triangle3", "cross2", "negative"}) {
    auto f = get_entry(name).polynomial();
    for (unsigned long n = 1; n <= 3; ++n) CHECK(g_decomposition(f, n, 0, 3).layers[0] == power(f, n));
  }
}

TEST_CASE("constant term products") {
  auto f = P("x + x^-1");
  LayerCache c5(f, 5), c2(f, 2);
  CHECK(constant_term_product_G(c5, profile(0, {0}, {2})) == 2);
  CHECK(constant_term_product_G(c5, profile(0, {0, 0}, {2, 2})) == 4);
  CHECK(constant_term_product_G(c2, profile(0, {0, 0}, {1, 1})) == 0);
  CHECK(splits_at(c5, profile(0, {0, 0}, {2, 2}), 0));
  CHECK(splits_at(c5, profile(0, {0, 0}, {2, 2}), 1));
  CHECK_THROWS_AS(splits_at(c5, profile(0, {0, 0}, {2, 2}), 2), DomainError);
  CHECK_THROWS_AS(validate_profile(profile(0, {1}, {2}), 5), DomainError);
  CHECK_THROWS_AS(validate_profile(profile(0, {0}, {5}), 5), DomainError);
  CHECK_THROWS_AS(validate_profile(profile(1, {1}, {1}, 1), 5), DomainError);
}

TEST_CASE("splitting indices") {
  CHECK(splitting_indices({0, 0}, 0, 1) == std::set<unsigned>{1});
  CHECK(splitting_indices({0, 2}, 0, 1).empty());
  CHECK(splitting_indices({0, 0, 0}, 0, 2) == std::set<unsigned>{1, 2});
  CHECK(lemma_existence_holds({0, 0}, 0, 1));
  CHECK(lemma_multiplicity_holds({0, 0, 0}, 0, 2));
  CHECK(lemma_common_left_holds({0, 0, 0}, {0}, 2));
}

TEST_CASE("summand transformation") {
  auto [i2, j2] = transform_summand({0, 0, 0}, {0}, 1, 2);
  CHECK(i2 == std::vector<unsigned>{0, 0});
  CHECK(j2 == std::vector<unsigned>{0, 0});
  auto back = exchange_tails(i2, j2, 1);
  CHECK(back.first == std::vector<unsigned>{0, 0, 0});
  CHECK(back.second == std::vector<unsigned>{0});
  CHECK_THROWS_AS(transform_summand({0, 1, 1}, {0}, 1, 2), DomainError);
  CHECK_THROWS_AS(transform_summand({0, 2, 0}, {0}, 2, 2), DomainError);

  LayerCache c3(P("x + x^-1"), 3);
  auto e = check_summand_exchange(c3, {1, 1, 1}, {0, 0, 0}, {0}, 1, 2);
  CHECK(e.holds);
  CHECK(e.left == e.right);
}

TEST_CASE("reconstruction checks") {
  LayerCache c(get_entry("triangle3").polynomial(), 3);
  auto r = check_reconstruction(c, 2, 2);
  CHECK(r.holds);
  CHECK_FALSE(r.top_layer_modular);

  DecompositionLimits small;
  small.max_terms = 200;
  LayerCache tight(get_entry("cross2").polynomial(), 3, small);
  auto m = check_reconstruction(tight, 3, 2);
  CHECK(m.holds);
  CHECK(m.top_layer_modular);
  CHECK_FALSE(m.note.empty());
}

TEST_CASE("property: reconstruction holds on the two-variable catalog") {
  for (const char* name : {"cross2", "triangle3", "chebyshev", "negative"}) {
    INFO(name);
    auto f = get_entry(name).polynomial();
    for (unsigned long p : {2ul, 3ul, 5ul}) {
      LayerCache cache(f, p);
      for (unsigned long n = 1; n <= 3; ++n)
        for (unsigned s = 0, ps = 1; s <= 2; ++s, ps *= p) {
          auto d = g_decomposition(cache, n, s);
          CHECK(reconstruct(d) == power(f, n * ps));
        }
    }
  }
}

TEST_CASE("property: split at l when k - i_k >= l for every k >= l") {
  std::mt19937_64 rng(99);
  const char* names[] = {"chebyshev", "triangle3", "cross2"};
  std::vector<LayerCache> caches;
  for (const char* name : names)
    for (unsigned long p : {2ul, 3ul}) caches.emplace_back(get_entry(name).polynomial(), p);
  int checked = 0;
  while (checked < 10000) {
    auto& cache = caches[rng() % caches.size()];
    const unsigned len = 1 + static_cast<unsigned>(rng() % 3);
    SplittingProfile pr;
    pr.a = static_cast<unsigned>(rng() % 2);
    pr.b = pr.a + len - 1;
    for (unsigned k = pr.a; k <= pr.b; ++k) {
      pr.indices.push_back(static_cast<unsigned>(rng() % (k + 1)));
      pr.digits.push_back(static_cast<unsigned>(rng() % cache.p()));
    }
    const unsigned l = pr.a + static_cast<unsigned>(rng() % len);
    bool hyp = true;
    for (unsigned k = l; k <= pr.b; ++k) hyp = hyp && k >= pr.index(k) + l;
    if (!hyp) continue;
    ++checked;
    CHECK(splits_at(cache, pr, l));
  }
}

TEST_CASE("property: shifting every exponent by one keeps G") {
  std::mt19937_64 rng(5);
  LayerCache c2(get_entry("triangle3").polynomial(), 2), c3(get_entry("chebyshev").polynomial(), 3);
  for (int t = 0; t < 300; ++t) {
    auto& cache = t % 2 ? c2 : c3;
    SplittingProfile pr;
    pr.a = 1;
    pr.b = 1 + static_cast<unsigned>(rng() % 3);
    for (unsigned k = pr.a; k <= pr.b; ++k) {
      pr.indices.push_back(static_cast<unsigned>(rng() % k));
      pr.digits.push_back(static_cast<unsigned>(rng() % cache.p()));
    }
    auto shifted = pr;
    shifted.exponent_shift = 1;
    CHECK(constant_term_product_G(cache, pr) == constant_term_product_G(cache, shifted));
  }
}

TEST_CASE("property: [f^n0(X) f^n1(X^p)]_0 = a(n0) a(n1) for n0 < p") {
  for (const char* name : {"cross2", "triangle3", "chebyshev", "bk62"}) {
    INFO(name);
    auto f = get_entry(name).polynomial();
    REQUIRE(certify_interior_origin(ExponentMatrix::of(f)).unique);
    const unsigned maxn = std::string(name) == "bk62" ? 2 : 4;
    auto a = period_coefficients_pruned(f, maxn);
    for (unsigned long p : {2ul, 3ul, 5ul})
      for (unsigned n0 = 0; n0 < p && n0 <= maxn; ++n0)
        for (unsigned n1 = 0; n1 <= maxn; ++n1) {
          std::vector<LaurentPolynomial> fs = {power(f, n0), substitute_power(power(f, n1), p)};
          CHECK(constant_term_of_product(fs) == a.at(n0) * a.at(n1));
        }
  }
}

TEST_CASE("summand exchange sweeps at s = 2") {
  for (const char* name : {"chebyshev", "triangle3"})
    for (unsigned long p : {2ul, 3ul}) {
      INFO(name << " p=" << p);
      LayerCache cache(get_entry(name).polynomial(), p);
      auto sweep = sweep_summand_exchange(cache, 2);
      CHECK(sweep.instances > 0);
      CHECK(sweep.failures == 0);
    }
}

TEST_CASE("splitting lemma verifiers") {
  for (auto lemma : {SplittingLemma::existence, SplittingLemma::multiplicity, SplittingLemma::common_left,
                     SplittingLemma::common_right}) {
    INFO(to_string(lemma));
    auto r = verify_splitting_lemma(lemma, 2000, 20240601, 8, 1);
    CHECK(r.trials == 2000);
    CHECK(r.counterexamples == 0);
    CHECK(r.examples.empty());
  }
}

TEST_CASE("lemma verifier results do not depend on the thread count") {
  auto one = verify_splitting_lemma(SplittingLemma::common_right, 500, 7, 6, 1);
  auto three = verify_splitting_lemma(SplittingLemma::common_right, 500, 7, 6, 3);
  CHECK(one.rejected == three.rejected);
  CHECK(one.counterexamples == three.counterexamples);
}
