#include <algorithm>

#include "dworklab/geometry.hpp"

namespace dworklab {

namespace {

using Row = std::vector<Integer>;

void subtract_multiple(Row& target, const Row& source, const Integer& q) {
  if (sgn(q) == 0) return;
  for (std::size_t j = 0; j < target.size(); ++j) target[j] -= q * source[j];
}

Integer entry_sum(const Row& v) {
  Integer s = 0;
  for (const auto& x : v) s += x;
  return s;
}

void normalise_sign(Row& v) {
  Integer s = entry_sum(v);
  int sign = sgn(s);
  if (sign == 0) {
    auto it = std::find_if(v.begin(), v.end(), [](const Integer& x) { return sgn(x) != 0; });
    sign = it == v.end() ? 1 : sgn(*it);
  }
  if (sign < 0)
    for (auto& x : v) x = -x;
}

Integer l1(const Row& v) {
  Integer s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

// Greedy pairwise size reduction; keeps the basis unimodularly equivalent.
void reduce_basis(std::vector<Row>& basis) {
  bool changed = true;
  for (int round = 0; changed && round < 64; ++round) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        for (int sign : {1, -1}) {
          Row t = basis[i];
          for (std::size_t c = 0; c < t.size(); ++c) t[c] -= sign * basis[j][c];
          if (l1(t) < l1(basis[i])) {
            basis[i] = std::move(t);
            changed = true;
          }
        }
      }
  }
}

} // namespace

KernelLattice kernel_and_covering_index(const ExponentMatrix& a) {
  const std::size_t n = a.n(), m = a.m();
  // Integer row reduction of [A^T | I]; unimodular, so the identity part of
  // the rows whose A^T part vanishes is a basis of the saturated kernel.
  std::vector<Row> rows(m, Row(n + m, 0));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) rows[j][i] = a.entry(i, j);
    rows[j][n + j] = 1;
  }
  std::size_t pivot = 0;
  for (std::size_t c = 0; c < n && pivot < m; ++c) {
    while (true) {
      std::size_t best = m;
      for (std::size_t r = pivot; r < m; ++r)
        if (sgn(rows[r][c]) != 0 && (best == m || abs(rows[r][c]) < abs(rows[best][c]))) best = r;
      if (best == m) break;
      std::swap(rows[pivot], rows[best]);
      bool others = false;
      for (std::size_t r = pivot + 1; r < m; ++r) {
        if (sgn(rows[r][c]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[pivot][c].get_mpz_t());
        subtract_multiple(rows[r], rows[pivot], q);
        if (sgn(rows[r][c]) != 0) others = true;
      }
      if (!others) {
        ++pivot;
        break;
      }
    }
  }

  KernelLattice out;
  for (std::size_t r = pivot; r < m; ++r) out.basis.emplace_back(rows[r].begin() + n, rows[r].end());
  reduce_basis(out.basis);
  for (auto& b : out.basis) normalise_sign(b);
  out.covering_index = 0;
  for (const auto& b : out.basis) {
    Integer s = entry_sum(b);
    mpz_gcd(out.covering_index.get_mpz_t(), out.covering_index.get_mpz_t(), s.get_mpz_t());
  }
  return out;
}

} // namespace dworklab
