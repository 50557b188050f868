#include "dworklab/simplex.hpp"

#include "dworklab/error.hpp"

namespace dworklab {

namespace {

using Row = std::vector<Rational>;

struct Tableau {
  std::vector<Row> rows;             // each: columns..., rhs
  std::vector<std::size_t> basis;    // basic column per row
  std::size_t columns = 0;           // excluding rhs

  const Rational& rhs(std::size_t i) const { return rows[i][columns]; }

  void pivot(std::size_t pr, std::size_t pc, Row& reduced) {
    Row& p = rows[pr];
    const Rational inv = 1 / p[pc];
    for (auto& v : p) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == pr || sgn(rows[i][pc]) == 0) continue;
      const Rational factor = rows[i][pc];
      for (std::size_t j = 0; j <= columns; ++j)
        if (sgn(p[j]) != 0) rows[i][j] -= factor * p[j];
    }
    if (sgn(reduced[pc]) != 0) {
      const Rational factor = reduced[pc];
      for (std::size_t j = 0; j <= columns; ++j)
        if (sgn(p[j]) != 0) reduced[j] -= factor * p[j];
    }
    basis[pr] = pc;
  }

  // Reduced cost row for `cost` (size columns); last entry is -objective.
  Row reduced_costs(const std::vector<Rational>& cost) const {
    Row d(columns + 1);
    for (std::size_t j = 0; j < columns; ++j) d[j] = cost[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rational& cb = cost[basis[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= columns; ++j)
        if (sgn(rows[i][j]) != 0) d[j] -= cb * rows[i][j];
    }
    return d;
  }

  // Bland's rule over columns [0, enter_limit). Returns false if unbounded.
  bool optimise(const std::vector<Rational>& cost, std::size_t enter_limit) {
    Row d = reduced_costs(cost);
    while (true) {
      std::size_t enter = enter_limit;
      for (std::size_t j = 0; j < enter_limit; ++j)
        if (sgn(d[j]) < 0) {
          enter = j;
          break;
        }
      if (enter == enter_limit) return true;
      std::size_t leave = rows.size();
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (sgn(rows[i][enter]) <= 0) continue;
        Rational ratio = rhs(i) / rows[i][enter];
        if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows.size()) return false;
      pivot(leave, enter, d);
    }
  }
};

} // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t r = lp.rows, n = lp.cols;
  if (lp.a.size() != r * n || lp.b.size() != r || lp.c.size() != n)
    throw DomainError("linear program dimensions are inconsistent");

  Tableau t;
  t.columns = n + r;
  std::vector<int> sign(r, 1);
  t.rows.assign(r, Row(n + r + 1));
  t.basis.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    sign[i] = sgn(lp.b[i]) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = sign[i] * lp.at(i, j);
    t.rows[i][n + i] = 1;
    t.rows[i][n + r] = sign[i] * lp.b[i];
    t.basis[i] = n + i;
  }

  LpSolution out;
  std::vector<Rational> phase1(n + r);
  for (std::size_t i = 0; i < r; ++i) phase1[n + i] = 1;
  t.optimise(phase1, n);
  Rational infeasibility = 0;
  for (std::size_t i = 0; i < r; ++i)
    if (t.basis[i] >= n) infeasibility += t.rhs(i);
  if (sgn(infeasibility) > 0) {
    out.status = LpStatus::infeasible;
    return out;
  }

  // Drive zero-valued artificials out of the basis; rows with no structural
  // entry are linear combinations of the others and are dropped.
  Row scratch(t.columns + 1);
  for (std::size_t i = 0; i < t.rows.size();) {
    if (t.basis[i] < n) {
      ++i;
      continue;
    }
    std::size_t j = 0;
    while (j < n && sgn(t.rows[i][j]) == 0) ++j;
    if (j < n) {
      t.pivot(i, j, scratch);
      ++i;
    } else {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  std::vector<Rational> cost(n + r);
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.c[j];
  if (!t.optimise(cost, n)) {
    out.status = LpStatus::unbounded;
    return out;
  }

  out.status = LpStatus::optimal;
  out.x.assign(n, 0);
  out.value = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    out.x[t.basis[i]] = t.rhs(i);
    out.value += lp.c[t.basis[i]] * t.rhs(i);
  }
  out.basis = t.basis;
  out.duals.assign(r, 0);
  for (std::size_t k = 0; k < r; ++k) {
    Rational y = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) y += lp.c[t.basis[i]] * t.rows[i][n + k];
    out.duals[k] = sign[k] * y;
  }
  return out;
}

std::size_t rational_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      Rational f = rows[i][c] / rows[rank][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

} // namespace dworklab
