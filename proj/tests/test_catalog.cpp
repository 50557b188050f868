#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "dworklab/catalog.hpp"
#include "dworklab/error.hpp"
#include "dworklab/geometry.hpp"
#include "dworklab/period.hpp"

using namespace dworklab;

TEST_CASE("names") {
  auto names = catalog_names();
  CHECK(names.size() == catalog_entries().size());
  for (const char* n : {"bk24", "bk62", "cross2", "triangle3", "chebyshev", "negative"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  CHECK(get_entry("bk62").name == "bk62");
  try {
    get_entry("bk99");
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("bk24") != std::string::npos);
  }
}

TEST_CASE("stored expectations are reproduced by the period computation") {
  for (const auto& e : catalog_entries()) {
    INFO(e.name);
    REQUIRE_FALSE(e.expected.empty());
    CHECK_FALSE(e.expected_source.empty());
    std::uint64_t top = 0;
    for (const auto& x : e.expected) top = std::max(top, x.n);
    auto a = period_coefficients_pruned(e.polynomial(), top);
    for (const auto& x : e.expected) CHECK(a.at(x.n) == x.value);
  }
}

TEST_CASE("covering indices agree with the kernel lattice") {
  for (const auto& e : catalog_entries()) {
    INFO(e.name);
    REQUIRE(e.covering_index.has_value());
    auto k = kernel_and_covering_index(ExponentMatrix::of(e.polynomial())).covering_index;
    CHECK(k == Integer(static_cast<unsigned long>(*e.covering_index)));
  }
}

TEST_CASE("closed forms") {
  CHECK_THROWS_AS(closed_form_sequence(get_entry("bk24"), 4), DomainError);
  auto neg = closed_form_sequence(get_entry("negative"), 9);
  CHECK(neg.at(3) == 3);
  CHECK(neg.at(6) == 15);
  CHECK(neg.at(9) == 84);
  CHECK(neg.at(4) == 0);
  CHECK(neg.method == PeriodMethod::closed_form);
  auto b = compress_sequence(neg, 3);
  CHECK(b.size() == 4);
  CHECK(b.at(2) == 15);
}

TEST_CASE("Picard-Fuchs operator metadata") {
  const auto& b62 = get_entry("bk62");
  REQUIRE(b62.theta_operator);
  CHECK(b62.theta_operator->verifiable);
  CHECK(b62.theta_operator->terms.size() == 3);
  CHECK(b62.theta_operator->terms[2].first == 2);
  const auto& b24 = get_entry("bk24");
  REQUIRE(b24.theta_operator);
  CHECK_FALSE(b24.theta_operator->verifiable);
  CHECK(b24.theta_operator->text.find("88501054") != std::string::npos);
}
