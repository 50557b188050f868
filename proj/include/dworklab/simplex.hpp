#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace dworklab {

// Reduced fraction with positive denominator; mpq_class keeps both invariants
// after every arithmetic operation.
using Rational = mpq_class;

// minimize c.x  subject to  A x = b,  x >= 0.  A is rows x cols, row-major.
struct LinearProgram {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> a;
  std::vector<Rational> b;
  std::vector<Rational> c;

  LinearProgram(std::size_t r, std::size_t n) : rows(r), cols(n), a(r * n), b(r), c(n) {}
  Rational& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Rational value;
  std::vector<Rational> x;
  // Structural column basic in each remaining row; rows found redundant are
  // dropped, so basis.size() == rank of A when optimal.
  std::vector<std::size_t> basis;
  // Optimal dual vector y (one entry per original row): y.A <= c, y.b = value.
  std::vector<Rational> duals;
};

// Two-phase tableau simplex over exact rationals with Bland's rule.
LpSolution solve_lp(const LinearProgram& lp);

// Rank of an integer matrix given as rows.
std::size_t rational_rank(std::vector<std::vector<Rational>> rows);

} // namespace dworklab
