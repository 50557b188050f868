#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <span>
#include <vector>

#include "dworklab/laurent.hpp"
#include "dworklab/simplex.hpp"

namespace dworklab {

// The n x m matrix whose columns are the exponent vectors of a polynomial.
class ExponentMatrix {
public:
  // Throws DomainError unless n >= 1, m >= 1, every column has length n, and
  // the columns are pairwise distinct.
  ExponentMatrix(std::size_t n, std::vector<ExponentVector> columns);
  // Columns are the support of f in canonical order.
  static ExponentMatrix of(const LaurentPolynomial& f);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return columns_.size(); }
  const ExponentVector& column(std::size_t j) const { return columns_[j]; }
  const std::vector<ExponentVector>& columns() const noexcept { return columns_; }
  std::int32_t entry(std::size_t i, std::size_t j) const { return columns_[j][i]; }

  std::vector<std::int64_t> apply(std::span<const std::int64_t> l) const;
  std::vector<Integer> apply(std::span<const Integer> l) const;
  std::size_t rank() const;

  // Componentwise bounds of the columns; the polytope lies in this box.
  ExponentVector box_min() const;
  ExponentVector box_max() const;

private:
  std::size_t n_;
  std::vector<ExponentVector> columns_;
};

// min sum(alpha) subject to A alpha = v, alpha >= 0, with memoisation per v
// and re-use of previously optimal bases. Not thread safe; use one oracle per
// thread.
class GaugeOracle {
public:
  // With memoize false every query not answered by a cached basis is solved
  // afresh; callers keeping their own memo use this to save memory.
  explicit GaugeOracle(ExponentMatrix a, bool memoize = true);
  ~GaugeOracle();
  GaugeOracle(GaugeOracle&&) noexcept;
  GaugeOracle& operator=(GaugeOracle&&) noexcept;

  const ExponentMatrix& matrix() const noexcept;

  // nullopt when v is outside the cone spanned by the columns.
  std::optional<Rational> gauge(std::span<const std::int32_t> v);
  std::optional<Rational> gauge(const ExponentVector& v) { return gauge(v.view()); }
  // gauge(v) <= bound; false when infeasible.
  bool within(std::span<const std::int32_t> v, long bound);

  // Dual optimal vectors y = numerator / denominator (denominator > 0) of the
  // bases found so far. Each satisfies y.a_j <= 1 for every column, so
  // y.v <= gauge(v) for all v.
  struct DualBound {
    std::vector<std::int64_t> numerator;
    std::int64_t denominator;
  };
  std::vector<DualBound> dual_bounds() const;

  std::size_t lp_solves() const noexcept;
  std::size_t memo_size() const noexcept;

private:
  struct State;
  std::unique_ptr<State> state_;
};

std::optional<Rational> gauge(const ExponentMatrix& a, const ExponentVector& v);

// True iff v is a convex combination of the columns.
bool in_convex_hull(const ExponentMatrix& a, const ExponentVector& v);

struct InteriorCertificate {
  bool origin_interior = false;
  bool rank_full = false;
  // max { t : A lambda = 0, sum lambda = 1, lambda_j >= t }, when that LP is feasible.
  std::optional<Rational> margin;
  std::vector<ExponentVector> interior_lattice_points;
  bool unique = false;
};

InteriorCertificate certify_interior_origin(const ExponentMatrix& a);

struct GcdBoundCheck {
  bool holds = true;
  // A l = 0: the inequality is vacuous and the tuple is excluded.
  bool excluded = false;
  Integer gcd;
  Integer total;
};

// gcd_i |sum_j a_ij l_j| <= sum_j l_j for a nonnegative tuple l.
GcdBoundCheck check_gcd_bound(const ExponentMatrix& a, std::span<const std::int64_t> l);

struct KernelLattice {
  // Basis of ker(A) intersected with Z^m; each vector has positive entry sum,
  // or positive first nonzero entry when its sum is zero.
  std::vector<std::vector<Integer>> basis;
  // gcd of the basis entry sums; 0 when every sum vanishes.
  Integer covering_index;
};

KernelLattice kernel_and_covering_index(const ExponentMatrix& a);

enum class CheckOutcome { holds, violated, not_checked };
std::string to_string(CheckOutcome o);

struct KernelGcdReport {
  CheckOutcome outcome = CheckOutcome::not_checked;
  std::vector<std::int64_t> witness;
  Integer witness_gcd;
  Integer search_size;
  Integer tuples_examined;
};

// Over all l >= 0 with sum(l) = k*mu, 1 <= mu <= p-1: p | gcd_i (A l)_i
// must imply A l = 0. Spaces larger than `ceiling` tuples are not searched.
KernelGcdReport check_kernel_gcd_condition(const ExponentMatrix& a, unsigned long k,
                                           unsigned long p,
                                           const Integer& ceiling = Integer(10000000));

} // namespace dworklab
