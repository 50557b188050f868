#pragma once

#include <string>
#include <vector>

#include "dworklab/period.hpp"

namespace dworklab {

// A residue modulo p^N. Results of arithmetic carry the smaller of the input
// precisions; division is only by units and keeps that precision.
class PadicNumber {
public:
  PadicNumber(unsigned long p, unsigned precision, const Integer& value);

  unsigned long prime() const noexcept { return p_; }
  unsigned precision() const noexcept { return precision_; }
  const Integer& residue() const noexcept { return residue_; }
  Integer modulus() const;

  bool is_unit() const;
  // Largest v <= precision with p^v | residue.
  unsigned valuation() const;
  PadicNumber with_precision(unsigned precision) const;
  PadicNumber pow(unsigned long e) const;
  // Throws DomainError for non-units.
  PadicNumber inverse() const;

  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);
  // Equal as residues at the common precision.
  friend bool operator==(const PadicNumber& a, const PadicNumber& b);

  std::string describe() const;

private:
  unsigned long p_;
  unsigned precision_;
  Integer residue_;
};

// F^s(x) = sum_{n < p^s} a(n) x^n.
PadicNumber truncated_period_eval(const PeriodSequence& a, unsigned long p, unsigned s,
                                  const PadicNumber& x);

// F^1(x) is a unit.
bool domain_check(const PeriodSequence& a, unsigned long p, const PadicNumber& x);

struct UnitRootStep {
  unsigned s = 0;
  PadicNumber ratio;
  // Valuation of ratio(s) - ratio(s-1) at their common precision (s >= 1).
  unsigned agreement = 0;
  bool consistent = true;
};

struct UnitRootApproximation {
  PadicNumber value;
  std::vector<UnitRootStep> steps;
  bool consistent = true;
  std::vector<std::string> findings;
};

// ratio(s') = F^{s'+1}(x) / F^{s'}(x^p) mod p^{min(precision, s'+1)} for
// s' = 0..s; consecutive ratios are expected to agree mod p^{s'}.
// precision 0 means s + 1.
UnitRootApproximation unit_root_approximation(const PeriodSequence& a, unsigned long p,
                                              const PadicNumber& x, unsigned s,
                                              unsigned precision = 0);

} // namespace dworklab
