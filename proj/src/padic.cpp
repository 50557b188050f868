#include "dworklab/padic.hpp"

#include <algorithm>

#include "dworklab/error.hpp"

namespace dworklab {

namespace {

Integer prime_power(unsigned long p, unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

void same_prime(const PadicNumber& a, const PadicNumber& b) {
  if (a.prime() != b.prime()) throw DomainError("p-adic numbers for different primes");
}

} // namespace

PadicNumber::PadicNumber(unsigned long p, unsigned precision, const Integer& value)
    : p_(p), precision_(precision) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (precision == 0) throw DomainError("p-adic precision must be positive");
  Integer m = modulus();
  mpz_fdiv_r(residue_.get_mpz_t(), value.get_mpz_t(), m.get_mpz_t());
}

Integer PadicNumber::modulus() const { return prime_power(p_, precision_); }

bool PadicNumber::is_unit() const { return mpz_fdiv_ui(residue_.get_mpz_t(), p_) != 0; }

unsigned PadicNumber::valuation() const {
  if (sgn(residue_) == 0) return precision_;
  Integer rest, prime(p_);
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), residue_.get_mpz_t(), prime.get_mpz_t()));
}

PadicNumber PadicNumber::with_precision(unsigned precision) const {
  return PadicNumber(p_, std::min(precision, precision_), residue_);
}

PadicNumber PadicNumber::pow(unsigned long e) const {
  Integer r, m = modulus();
  mpz_powm_ui(r.get_mpz_t(), residue_.get_mpz_t(), e, m.get_mpz_t());
  return PadicNumber(p_, precision_, r);
}

PadicNumber PadicNumber::inverse() const {
  if (!is_unit()) throw DomainError("cannot invert the non-unit " + describe());
  Integer r, m = modulus();
  mpz_invert(r.get_mpz_t(), residue_.get_mpz_t(), m.get_mpz_t());
  return PadicNumber(p_, precision_, r);
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  same_prime(a, b);
  return PadicNumber(a.p_, std::min(a.precision_, b.precision_), a.residue_ + b.residue_);
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) {
  same_prime(a, b);
  return PadicNumber(a.p_, std::min(a.precision_, b.precision_), a.residue_ - b.residue_);
}

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  same_prime(a, b);
  return PadicNumber(a.p_, std::min(a.precision_, b.precision_), a.residue_ * b.residue_);
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
  same_prime(a, b);
  const unsigned n = std::min(a.precision_, b.precision_);
  return a.with_precision(n) * b.with_precision(n).inverse();
}

bool operator==(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) return false;
  const unsigned n = std::min(a.precision_, b.precision_);
  return a.with_precision(n).residue_ == b.with_precision(n).residue_;
}

std::string PadicNumber::describe() const {
  return residue_.get_str() + " mod " + std::to_string(p_) + "^" + std::to_string(precision_);
}

PadicNumber truncated_period_eval(const PeriodSequence& a, unsigned long p, unsigned s,
                                  const PadicNumber& x) {
  if (x.prime() != p) throw DomainError("evaluation point is not a " + std::to_string(p) + "-adic number");
  unsigned precision = x.precision();
  if (!a.ring.is_exact()) {
    if (a.ring.prime() != p) throw DomainError("sequence residues are for a different prime");
    precision = std::min(precision, a.ring.exponent());
  }
  Integer terms = prime_power(p, s);
  if (!terms.fits_ulong_p()) throw DomainError("p^s is too large");
  const unsigned long count = terms.get_ui();
  if (a.size() < count)
    throw DomainError("insufficient sequence length: F^" + std::to_string(s) + " needs a(0.." +
                      std::to_string(count - 1) + ")");
  const Integer m = prime_power(p, precision);
  const Integer xr = x.with_precision(precision).residue();
  // Horner from the top index.
  Integer acc = 0;
  for (unsigned long n = count; n-- > 0;) {
    acc = acc * xr + a.values[n];
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return PadicNumber(p, precision, acc);
}

bool domain_check(const PeriodSequence& a, unsigned long p, const PadicNumber& x) {
  return truncated_period_eval(a, p, 1, x.with_precision(1)).is_unit();
}

UnitRootApproximation unit_root_approximation(const PeriodSequence& a, unsigned long p,
                                              const PadicNumber& x, unsigned s,
                                              unsigned precision) {
  if (precision == 0) precision = s + 1;
  if (!domain_check(a, p, x))
    throw DomainError("x = " + x.describe() + " is outside the domain: F^1(x) is not a unit");
  UnitRootApproximation out{PadicNumber(p, 1, 0), {}, true, {}};
  for (unsigned t = 0; t <= s; ++t) {
    const unsigned n = std::min({precision, t + 1, x.precision()});
    const PadicNumber xn = x.with_precision(n);
    const PadicNumber num = truncated_period_eval(a, p, t + 1, xn);
    const PadicNumber den = truncated_period_eval(a, p, t, xn.pow(p));
    if (!den.is_unit())
      throw DomainError("F^" + std::to_string(t) + "(x^p) = " + den.describe() + " is not a unit");
    UnitRootStep step{t, num / den, 0, true};
    if (t >= 1) {
      const PadicNumber& prev = out.steps.back().ratio;
      const PadicNumber diff = step.ratio - prev;
      step.agreement = diff.valuation();
      const unsigned expected = std::min(t, diff.precision());
      step.consistent = step.agreement >= expected;
      if (!step.consistent) {
        out.consistent = false;
        out.findings.push_back("ratio(" + std::to_string(t) + ") and ratio(" + std::to_string(t - 1) +
                               ") agree only mod p^" + std::to_string(step.agreement) +
                               ", expected p^" + std::to_string(expected));
      }
    }
    out.steps.push_back(std::move(step));
  }
  out.value = out.steps.back().ratio;
  return out;
}

} // namespace dworklab
