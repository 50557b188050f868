#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dworklab/laurent.hpp"

namespace dworklab {

enum class PeriodMethod { pruned, multinomial, closed_form };

std::string to_string(PeriodMethod m);

// a(0..N) = [f^n]_0, exact or reduced into `ring`.
struct PeriodSequence {
  std::vector<Integer> values;
  PeriodMethod method = PeriodMethod::pruned;
  CoefficientRing ring = CoefficientRing::exact();
  std::string source;

  std::size_t size() const noexcept { return values.size(); }
  // Largest stored index; the sequence must not be empty.
  std::size_t max_index() const noexcept { return values.size() - 1; }
  // Throws DomainError when n exceeds the stored range.
  const Integer& at(std::size_t n) const;
};

struct PeriodLimits {
  // Largest number of live terms in one pruned product.
  std::size_t max_terms = 40'000'000;
  // Largest number of search nodes in the multinomial enumeration.
  unsigned long long max_nodes = 2'000'000'000ull;
};

// Iterated multiplication by f; after step i every exponent v with
// gauge(-v) > N - i is dropped, since it cannot return to the origin.
PeriodSequence period_coefficients_pruned(const LaurentPolynomial& f, std::size_t max_n,
                                          const CoefficientRing& ring = CoefficientRing::exact(),
                                          const PeriodLimits& limits = {});

// Sum of multinomial(l; ell) * prod c_j^ell_j over ell >= 0 with A ell = 0,
// sum ell = l, found by backtracking with gauge pruning.
PeriodSequence period_coefficients_multinomial(const LaurentPolynomial& f, std::size_t max_n,
                                               const PeriodLimits& limits = {});

// Differential operator sum_j t^j Q_j(theta), theta = t d/dt.
struct ThetaOperator {
  // (j, coefficients of Q_j in increasing powers of theta)
  std::vector<std::pair<unsigned, std::vector<Integer>>> terms;
  bool verifiable = true;
  std::string text;
};

// coefficient * prod of the given factors, each in increasing powers of theta.
std::vector<Integer> theta_product(const Integer& coefficient,
                                   const std::vector<std::vector<long>>& factors);
Integer evaluate_theta_polynomial(const std::vector<Integer>& q, const Integer& x);

// Coefficients of t^n, 0 <= n <= order, in P applied to sum b_m t^m.
std::vector<Integer> apply_theta_operator(const ThetaOperator& op, const PeriodSequence& b,
                                          std::size_t order);

} // namespace dworklab
