#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dworklab {

using Integer = mpz_class;

// Integer exponent vector of fixed length; lexicographic order.
class ExponentVector {
public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t n) : e_(n, 0) {}
  ExponentVector(std::initializer_list<std::int32_t> e) : e_(e) {}
  explicit ExponentVector(std::vector<std::int32_t> e) : e_(std::move(e)) {}
  explicit ExponentVector(std::span<const std::int32_t> e) : e_(e.begin(), e.end()) {}

  std::size_t size() const noexcept { return e_.size(); }
  std::int32_t operator[](std::size_t i) const { return e_[i]; }
  std::int32_t& operator[](std::size_t i) { return e_[i]; }
  auto begin() const noexcept { return e_.begin(); }
  auto end() const noexcept { return e_.end(); }
  std::span<const std::int32_t> view() const noexcept { return e_; }
  const std::vector<std::int32_t>& values() const noexcept { return e_; }

  bool is_zero() const noexcept;
  ExponentVector negated() const;

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;

private:
  std::vector<std::int32_t> e_;
};

// Lexicographic three-way comparison of raw exponent spans of equal length.
std::strong_ordering compare_exponents(std::span<const std::int32_t> a,
                                       std::span<const std::int32_t> b) noexcept;

// Exact integers, or integers modulo p^s.
class CoefficientRing {
public:
  static CoefficientRing exact() { return CoefficientRing(); }
  // Throws DomainError unless p is prime and s >= 1.
  static CoefficientRing modular(unsigned long p, unsigned s);

  bool is_exact() const noexcept { return prime_ == 0; }
  unsigned long prime() const noexcept { return prime_; }
  unsigned exponent() const noexcept { return exponent_; }
  // p^s; zero for the exact ring.
  const Integer& modulus() const noexcept { return modulus_; }

  // Canonical representative: identity for exact, [0, p^s) otherwise.
  Integer reduce(const Integer& x) const;
  void reduce_in_place(Integer& x) const;

  std::string describe() const;

  friend bool operator==(const CoefficientRing& a, const CoefficientRing& b) {
    return a.prime_ == b.prime_ && a.exponent_ == b.exponent_;
  }

private:
  CoefficientRing() = default;
  unsigned long prime_ = 0;
  unsigned exponent_ = 0;
  Integer modulus_ = 0;
};

bool is_prime(unsigned long n) noexcept;

// Sparse Laurent polynomial. Terms are kept sorted by exponent vector, with no
// zero coefficients; the zero polynomial has no terms. Exponents are stored in
// one flat array with stride nvars().
class LaurentPolynomial {
public:
  struct TermView {
    std::span<const std::int32_t> exponents;
    const Integer& coeff;
  };
  struct Term {
    ExponentVector exponents;
    Integer coeff;
  };

  // The zero polynomial in variables x1..xn.
  explicit LaurentPolynomial(std::size_t nvars = 0,
                             CoefficientRing ring = CoefficientRing::exact());
  explicit LaurentPolynomial(std::vector<std::string> variables,
                             CoefficientRing ring = CoefficientRing::exact());

  // Combines duplicate exponents, reduces into the ring and drops zeros.
  static LaurentPolynomial from_terms(std::vector<std::string> variables,
                                      std::vector<Term> terms,
                                      CoefficientRing ring = CoefficientRing::exact());
  static LaurentPolynomial constant(std::vector<std::string> variables, const Integer& c,
                                    CoefficientRing ring = CoefficientRing::exact());
  // Internal fast constructor: data must already be canonical.
  static LaurentPolynomial from_sorted(std::shared_ptr<const std::vector<std::string>> variables,
                                       CoefficientRing ring, std::vector<std::int32_t> exponents,
                                       std::vector<Integer> coeffs);

  std::size_t nvars() const noexcept { return variables_->size(); }
  const std::vector<std::string>& variables() const noexcept { return *variables_; }
  const std::shared_ptr<const std::vector<std::string>>& shared_variables() const noexcept {
    return variables_;
  }
  const CoefficientRing& ring() const noexcept { return ring_; }

  std::size_t size() const noexcept { return coeffs_.size(); }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  TermView term(std::size_t i) const {
    return {std::span<const std::int32_t>(exponents_).subspan(i * nvars(), nvars()), coeffs_[i]};
  }
  std::span<const std::int32_t> exponents(std::size_t i) const {
    return std::span<const std::int32_t>(exponents_).subspan(i * nvars(), nvars());
  }
  const Integer& coeff(std::size_t i) const { return coeffs_[i]; }
  std::span<const std::int32_t> flat_exponents() const noexcept { return exponents_; }
  std::span<const Integer> coefficients() const noexcept { return coeffs_; }

  // Coefficient at `e` (zero if absent). Binary search.
  Integer coefficient(std::span<const std::int32_t> e) const;
  Integer coefficient(const ExponentVector& e) const { return coefficient(e.view()); }
  Integer constant_term() const;

  // Largest |exponent| over all terms and coordinates.
  std::int64_t max_abs_exponent() const noexcept;

  // Same terms, coefficients mapped into `target` (exact -> modular, or a
  // coarser modulus). Throws DomainError for modular -> exact.
  LaurentPolynomial reduced(const CoefficientRing& target) const;
  LaurentPolynomial with_variables(std::vector<std::string> variables) const;

  // Ring, arity and terms; variable names are labels only.
  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b);

private:
  std::shared_ptr<const std::vector<std::string>> variables_;
  CoefficientRing ring_;
  std::vector<std::int32_t> exponents_;
  std::vector<Integer> coeffs_;
};

std::vector<std::string> default_variable_names(std::size_t n);

LaurentPolynomial operator+(const LaurentPolynomial& f, const LaurentPolynomial& g);
LaurentPolynomial operator-(const LaurentPolynomial& f, const LaurentPolynomial& g);
LaurentPolynomial operator*(const LaurentPolynomial& f, const LaurentPolynomial& g);
LaurentPolynomial scale(const LaurentPolynomial& f, const Integer& c);

// Distributive product. Throws DomainError on ring or arity mismatch.
LaurentPolynomial multiply(const LaurentPolynomial& f, const LaurentPolynomial& g);
// f^n by iterated multiplication; f^0 = 1.
LaurentPolynomial power(const LaurentPolynomial& f, unsigned long n);
// X -> X^q: every exponent vector multiplied by q >= 1.
LaurentPolynomial substitute_power(const LaurentPolynomial& f, unsigned long q);
Integer constant_term(const LaurentPolynomial& f);
// [f_1 * ... * f_r]_0 without materialising the last product.
Integer constant_term_of_product(std::span<const LaurentPolynomial> factors);
// Exact division of every coefficient by d (exact ring only). Throws
// ArithmeticError if some coefficient is not divisible.
LaurentPolynomial exact_divide(const LaurentPolynomial& f, const Integer& d);

} // namespace dworklab
