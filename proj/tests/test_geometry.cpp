#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "dworklab/catalog.hpp"
#include "dworklab/error.hpp"
#include "dworklab/geometry.hpp"
#include "dworklab/text_format.hpp"

using namespace dworklab;

namespace {

ExponentMatrix triangle() { return ExponentMatrix(2, {ExponentVector{1, 0}, ExponentVector{0, 1}, ExponentVector{-1, -1}}); }

ExponentMatrix matrix_of(const std::string& name) { return ExponentMatrix::of(get_entry(name).polynomial()); }

// Calls visit(l) for every nonnegative l of length m with sum(l) = total.
template <class F>
void compositions(std::size_t m, std::int64_t total, F&& visit) {
  std::vector<std::int64_t> l(m, 0);
  auto rec = [&](auto&& self, std::size_t i, std::int64_t left) -> void {
    if (i + 1 == m) {
      l[i] = left;
      visit(l);
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      l[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, total);
}

// Every lattice point of the box [lo, hi]^n.
template <class F>
void box_points(const ExponentVector& lo, const ExponentVector& hi, F&& visit) {
  ExponentVector v = lo;
  while (true) {
    visit(v);
    std::size_t i = 0;
    for (; i < v.size(); ++i) {
      if (v[i] < hi[i]) {
        ++v[i];
        break;
      }
      v[i] = lo[i];
    }
    if (i == v.size()) return;
  }
}

// Integer coordinates of v in the basis, if it lies in the lattice it spans.
bool in_lattice(const std::vector<std::vector<Integer>>& basis, const std::vector<std::int64_t>& v) {
  const std::size_t r = basis.size(), m = v.size();
  // Augmented m x (r+1) system basis^T c = v, solved by rational elimination.
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(r + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < r; ++j) a[i][j] = basis[j][i];
    a[i][r] = Rational(static_cast<long>(v[i]));
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < r && row < m; ++col) {
    std::size_t piv = row;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[row]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational factor = a[i][col] / a[row][col];
      for (std::size_t j = col; j <= r; ++j) a[i][j] -= factor * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (a[i][r] != 0) return false;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    Rational c = a[i][r] / a[i][pivots[i]];
    if (c.get_den() != 1) return false;
  }
  return true;
}

} // namespace

TEST_CASE("exponent matrix validation") {
  CHECK_THROWS_AS(ExponentMatrix(2, {}), DomainError);
  CHECK_THROWS_AS(ExponentMatrix(2, {ExponentVector{1, 0}, ExponentVector{1, 0}}), DomainError);
  CHECK_THROWS_AS(ExponentMatrix(2, {ExponentVector{1, 0, 0}}), DomainError);
  auto a = matrix_of("bk62");
  CHECK(a.n() == 4);
  CHECK(a.m() == 8);
  CHECK(a.rank() == 4);
}

TEST_CASE("gauge examples") {
  auto a = triangle();
  CHECK(gauge(a, ExponentVector{0, 0}) == Rational(0));
  CHECK(gauge(a, ExponentVector{1, 0}) == Rational(1));
  CHECK(gauge(a, ExponentVector{1, 1}) == Rational(2));
  CHECK(gauge(a, ExponentVector{-2, -2}) == Rational(2));
  ExponentMatrix cone(2, {ExponentVector{1, 0}, ExponentVector{0, 1}});
  CHECK_FALSE(gauge(cone, ExponentVector{-1, 0}).has_value());
  ExponentMatrix seg(1, {ExponentVector{2}, ExponentVector{-1}});
  CHECK(gauge(seg, ExponentVector{1}) == Rational(1, 2));
}

TEST_CASE("gauge oracle reuses bases and reports dual bounds") {
  GaugeOracle oracle(matrix_of("triangle3"));
  CHECK(oracle.gauge(ExponentVector{3, 1}) == Rational(4));
  CHECK(oracle.gauge(ExponentVector{3, 1}) == Rational(4));
  CHECK(oracle.within(ExponentVector{1, 0}.view(), 1));
  CHECK_FALSE(oracle.within(ExponentVector{1, 1}.view(), 1));
  auto duals = oracle.dual_bounds();
  REQUIRE_FALSE(duals.empty());
  for (const auto& d : duals) {
    CHECK(d.denominator > 0);
    for (const auto& col : oracle.matrix().columns()) {
      std::int64_t dot = 0;
      for (std::size_t i = 0; i < col.size(); ++i) dot += d.numerator[i] * col[i];
      CHECK(dot <= d.denominator);
    }
  }
}

TEST_CASE("interior certificates") {
  auto t = certify_interior_origin(triangle());
  CHECK(t.origin_interior);
  CHECK(t.unique);
  CHECK(t.interior_lattice_points == std::vector<ExponentVector>{ExponentVector{0, 0}});

  auto neg = certify_interior_origin(matrix_of("negative"));
  CHECK(neg.origin_interior);
  CHECK_FALSE(neg.unique);
  CHECK(neg.interior_lattice_points == std::vector<ExponentVector>{ExponentVector{0}, ExponentVector{1}});

  for (const char* name : {"bk24", "bk62", "cross2", "chebyshev"}) {
    INFO(name);
    CHECK(certify_interior_origin(matrix_of(name)).unique);
  }

  // The origin on the boundary: x + y + 1.
  ExponentMatrix corner(2, {ExponentVector{1, 0}, ExponentVector{0, 1}, ExponentVector{0, 0}});
  auto c = certify_interior_origin(corner);
  CHECK_FALSE(c.origin_interior);
  CHECK_FALSE(c.unique);

  // Lower-dimensional polytope: x + x^-1 embedded in 2 variables.
  ExponentMatrix flat(2, {ExponentVector{1, 0}, ExponentVector{-1, 0}});
  auto fl = certify_interior_origin(flat);
  CHECK_FALSE(fl.rank_full);
  CHECK_FALSE(fl.unique);
}

TEST_CASE("gcd bound") {
  auto a = triangle();
  std::vector<std::int64_t> l = {2, 1, 1};
  auto r = check_gcd_bound(a, l);
  CHECK(r.holds);
  CHECK_FALSE(r.excluded);
  CHECK(r.gcd == 1);
  CHECK(r.total == 4);
  std::vector<std::int64_t> k = {1, 1, 1};
  CHECK(check_gcd_bound(a, k).excluded);
  std::vector<std::int64_t> bad = {1, 1};
  CHECK_THROWS_AS(check_gcd_bound(a, bad), DomainError);
}

TEST_CASE("gcd bound is exhaustive on the 23-column matrix up to total 6") {
  auto a = matrix_of("bk24");
  std::size_t checked = 0, failed = 0;
  for (std::int64_t total = 1; total <= 6; ++total)
    compositions(a.m(), total, [&](const std::vector<std::int64_t>& l) {
      ++checked;
      if (!check_gcd_bound(a, l).holds) ++failed;
    });
  CHECK(checked == 475019);
  CHECK(failed == 0);
}

TEST_CASE("kernel lattice and covering index") {
  auto k62 = kernel_and_covering_index(matrix_of("bk62"));
  CHECK(k62.covering_index == 3);
  REQUIRE(k62.basis.size() == 4);
  std::multiset<Integer> sums;
  for (const auto& b : k62.basis) {
    Integer s = 0;
    for (const auto& x : b) s += x;
    sums.insert(s);
  }
  for (const auto& s : sums) CHECK(s % 3 == 0);
  CHECK(sums.count(3) > 0);

  auto kt = kernel_and_covering_index(triangle());
  REQUIRE(kt.basis.size() == 1);
  CHECK(kt.basis[0] == std::vector<Integer>{1, 1, 1});
  CHECK(kt.covering_index == 3);

  auto kc = kernel_and_covering_index(matrix_of("chebyshev"));
  REQUIRE(kc.basis.size() == 1);
  CHECK(kc.basis[0] == std::vector<Integer>{1, 1});
  CHECK(kc.covering_index == 2);

  CHECK(kernel_and_covering_index(matrix_of("bk24")).covering_index == 1);
  CHECK(kernel_and_covering_index(matrix_of("cross2")).covering_index == 2);

  ExponentMatrix free_cols(2, {ExponentVector{1, 0}, ExponentVector{0, 1}});
  auto kf = kernel_and_covering_index(free_cols);
  CHECK(kf.basis.empty());
  CHECK(kf.covering_index == 0);
}

TEST_CASE("kernel gcd condition") {
  auto r62 = check_kernel_gcd_condition(matrix_of("bk62"), 3, 5);
  CHECK(r62.outcome == CheckOutcome::holds);
  CHECK(r62.tuples_examined == r62.search_size);

  CHECK(check_kernel_gcd_condition(matrix_of("chebyshev"), 2, 3).outcome == CheckOutcome::holds);
  CHECK(check_kernel_gcd_condition(matrix_of("chebyshev"), 1, 2).outcome == CheckOutcome::holds);

  // X^2 + X^-1: l = (3, 0) has A l = 6 (or the reverse order), which is even.
  auto neg = matrix_of("negative");
  auto rn = check_kernel_gcd_condition(neg, 3, 2);
  REQUIRE(rn.outcome == CheckOutcome::violated);
  auto image = neg.apply(std::span<const std::int64_t>(rn.witness));
  CHECK(image[0] != 0);
  CHECK(image[0] % 2 == 0);
  CHECK(rn.witness_gcd % 2 == 0);

  CHECK(check_kernel_gcd_condition(matrix_of("bk62"), 3, 5, Integer(10)).outcome == CheckOutcome::not_checked);
  CHECK_THROWS_AS(check_kernel_gcd_condition(neg, 3, 4), DomainError);
}

TEST_CASE("property: gauge is subadditive") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-3, 3);
  for (const char* name : {"triangle3", "cross2", "bk62", "bk24"}) {
    auto a = matrix_of(name);
    GaugeOracle oracle(a);
    for (int t = 0; t < 60; ++t) {
      ExponentVector u(a.n()), v(a.n()), w(a.n());
      for (std::size_t i = 0; i < a.n(); ++i) {
        u[i] = d(rng);
        v[i] = d(rng);
        w[i] = u[i] + v[i];
      }
      auto gu = oracle.gauge(u), gv = oracle.gauge(v), gw = oracle.gauge(w);
      if (gu && gv) {
        REQUIRE(gw.has_value());
        CHECK(*gw <= *gu + *gv);
      }
    }
  }
}

TEST_CASE("property: gauge <= 1 exactly on the convex hull") {
  for (const char* name : {"triangle3", "cross2", "negative", "bk62", "bk24"}) {
    auto a = matrix_of(name);
    GaugeOracle oracle(a);
    box_points(a.box_min(), a.box_max(), [&](const ExponentVector& v) {
      auto g = oracle.gauge(v);
      const bool inside = g && *g <= 1;
      CHECK(inside == in_convex_hull(a, v));
    });
  }
}

TEST_CASE("property: gcd bound holds up to total 8 when the origin is the unique interior point") {
  for (const char* name : {"triangle3", "cross2", "chebyshev", "bk62"}) {
    auto a = matrix_of(name);
    REQUIRE(certify_interior_origin(a).unique);
    std::size_t failed = 0;
    for (std::int64_t total = 1; total <= 8; ++total)
      compositions(a.m(), total, [&](const std::vector<std::int64_t>& l) {
        if (!check_gcd_bound(a, l).holds) ++failed;
      });
    CHECK(failed == 0);
  }
}

TEST_CASE("property: kernel basis generates every small kernel vector") {
  struct Case {
    const char* name;
    int radius;
  };
  for (auto [name, radius] : {Case{"triangle3", 3}, Case{"cross2", 3}, Case{"chebyshev", 3}, Case{"negative", 3},
                              Case{"bk62", 2}}) {
    INFO(name);
    auto a = matrix_of(name);
    auto kernel = kernel_and_covering_index(a);
    for (const auto& b : kernel.basis) {
      auto image = a.apply(std::span<const Integer>(b));
      for (const auto& x : image) CHECK(x == 0);
    }
    std::size_t kernel_vectors = 0, missed = 0;
    ExponentVector lo(a.m()), hi(a.m());
    for (std::size_t j = 0; j < a.m(); ++j) {
      lo[j] = -radius;
      hi[j] = radius;
    }
    box_points(lo, hi, [&](const ExponentVector& l) {
      std::vector<std::int64_t> v(l.begin(), l.end());
      auto image = a.apply(std::span<const std::int64_t>(v));
      for (auto x : image)
        if (x != 0) return;
      ++kernel_vectors;
      if (!in_lattice(kernel.basis, v)) ++missed;
    });
    CHECK(kernel_vectors > 1);
    CHECK(missed == 0);
  }
}
