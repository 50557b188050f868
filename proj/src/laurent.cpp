#include "dworklab/laurent.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "dworklab/error.hpp"
#include "packed_convert.hpp"

namespace dworklab {

bool ExponentVector::is_zero() const noexcept {
  return std::all_of(e_.begin(), e_.end(), [](std::int32_t x) { return x == 0; });
}

ExponentVector ExponentVector::negated() const {
  ExponentVector r(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) r[i] = -e_[i];
  return r;
}

std::strong_ordering compare_exponents(std::span<const std::int32_t> a,
                                       std::span<const std::int32_t> b) noexcept {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

bool is_prime(unsigned long n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (unsigned long d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

CoefficientRing CoefficientRing::modular(unsigned long p, unsigned s) {
  if (!is_prime(p)) throw DomainError("ring modulus base " + std::to_string(p) + " is not prime");
  if (s == 0) throw DomainError("ring modulus exponent must be >= 1");
  CoefficientRing r;
  r.prime_ = p;
  r.exponent_ = s;
  mpz_ui_pow_ui(r.modulus_.get_mpz_t(), p, s);
  return r;
}

Integer CoefficientRing::reduce(const Integer& x) const {
  Integer r = x;
  reduce_in_place(r);
  return r;
}

void CoefficientRing::reduce_in_place(Integer& x) const {
  if (!is_exact()) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
}

std::string CoefficientRing::describe() const {
  if (is_exact()) return "exact";
  return "mod " + std::to_string(prime_) + "^" + std::to_string(exponent_);
}

std::vector<std::string> default_variable_names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

LaurentPolynomial::LaurentPolynomial(std::size_t nvars, CoefficientRing ring)
    : variables_(std::make_shared<const std::vector<std::string>>(default_variable_names(nvars))),
      ring_(ring) {}

LaurentPolynomial::LaurentPolynomial(std::vector<std::string> variables, CoefficientRing ring)
    : variables_(std::make_shared<const std::vector<std::string>>(std::move(variables))),
      ring_(ring) {}

LaurentPolynomial LaurentPolynomial::from_terms(std::vector<std::string> variables,
                                                std::vector<Term> terms, CoefficientRing ring) {
  const std::size_t n = variables.size();
  for (const auto& t : terms)
    if (t.exponents.size() != n)
      throw DomainError("term has " + std::to_string(t.exponents.size()) +
                        " exponents, expected " + std::to_string(n));
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exponents < b.exponents; });
  LaurentPolynomial f(std::move(variables), ring);
  for (std::size_t i = 0; i < terms.size();) {
    Integer c = 0;
    std::size_t j = i;
    for (; j < terms.size() && terms[j].exponents == terms[i].exponents; ++j) c += terms[j].coeff;
    ring.reduce_in_place(c);
    if (sgn(c) != 0) {
      f.exponents_.insert(f.exponents_.end(), terms[i].exponents.begin(), terms[i].exponents.end());
      f.coeffs_.push_back(std::move(c));
    }
    i = j;
  }
  return f;
}

LaurentPolynomial LaurentPolynomial::constant(std::vector<std::string> variables,
                                              const Integer& c, CoefficientRing ring) {
  const std::size_t n = variables.size();
  std::vector<Term> t;
  t.push_back({ExponentVector(n), c});
  return from_terms(std::move(variables), std::move(t), ring);
}

LaurentPolynomial LaurentPolynomial::from_sorted(
    std::shared_ptr<const std::vector<std::string>> variables, CoefficientRing ring,
    std::vector<std::int32_t> exponents, std::vector<Integer> coeffs) {
  LaurentPolynomial f(0, ring);
  f.variables_ = std::move(variables);
  f.exponents_ = std::move(exponents);
  f.coeffs_ = std::move(coeffs);
  return f;
}

Integer LaurentPolynomial::coefficient(std::span<const std::int32_t> e) const {
  if (e.size() != nvars()) throw DomainError("exponent vector has wrong length");
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto c = compare_exponents(exponents(mid), e);
    if (c == 0) return coeffs_[mid];
    if (c < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return 0;
}

Integer LaurentPolynomial::constant_term() const {
  return coefficient(ExponentVector(nvars()).view());
}

std::int64_t LaurentPolynomial::max_abs_exponent() const noexcept {
  std::int64_t m = 0;
  for (std::int32_t e : exponents_) m = std::max<std::int64_t>(m, e < 0 ? -std::int64_t{e} : e);
  return m;
}

LaurentPolynomial LaurentPolynomial::reduced(const CoefficientRing& target) const {
  if (target == ring_) return *this;
  if (target.is_exact()) throw DomainError("cannot lift a modular polynomial to exact integers");
  if (!ring_.is_exact()) {
    if (ring_.prime() != target.prime() || ring_.exponent() < target.exponent())
      throw DomainError("cannot reduce " + ring_.describe() + " into " + target.describe());
  }
  LaurentPolynomial out(0, target);
  out.variables_ = variables_;
  for (std::size_t i = 0; i < size(); ++i) {
    Integer c = target.reduce(coeffs_[i]);
    if (sgn(c) == 0) continue;
    auto e = exponents(i);
    out.exponents_.insert(out.exponents_.end(), e.begin(), e.end());
    out.coeffs_.push_back(std::move(c));
  }
  return out;
}

LaurentPolynomial LaurentPolynomial::with_variables(std::vector<std::string> variables) const {
  if (variables.size() != nvars()) throw DomainError("variable list has wrong length");
  LaurentPolynomial out = *this;
  out.variables_ = std::make_shared<const std::vector<std::string>>(std::move(variables));
  return out;
}

bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  return a.ring_ == b.ring_ && a.nvars() == b.nvars() && a.exponents_ == b.exponents_ &&
         a.coeffs_ == b.coeffs_;
}

namespace {

void require_compatible(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  if (!(f.ring() == g.ring()))
    throw DomainError("ring mismatch: " + f.ring().describe() + " vs " + g.ring().describe());
  if (f.nvars() != g.nvars())
    throw DomainError("arity mismatch: " + std::to_string(f.nvars()) + " vs " +
                      std::to_string(g.nvars()) + " variables");
}

std::int32_t checked_exponent(std::int64_t v) {
  if (v > std::numeric_limits<std::int32_t>::max() || v < std::numeric_limits<std::int32_t>::min())
    throw DomainError("exponent overflow");
  return static_cast<std::int32_t>(v);
}

LaurentPolynomial linear_combination(const LaurentPolynomial& f, const LaurentPolynomial& g,
                                     int sign) {
  require_compatible(f, g);
  const std::size_t n = f.nvars();
  std::vector<std::int32_t> exps;
  std::vector<Integer> coeffs;
  exps.reserve((f.size() + g.size()) * n);
  coeffs.reserve(f.size() + g.size());
  auto emit = [&](std::span<const std::int32_t> e, Integer c) {
    f.ring().reduce_in_place(c);
    if (sgn(c) == 0) return;
    exps.insert(exps.end(), e.begin(), e.end());
    coeffs.push_back(std::move(c));
  };
  std::size_t i = 0, j = 0;
  while (i < f.size() || j < g.size()) {
    if (j == g.size() || (i < f.size() && compare_exponents(f.exponents(i), g.exponents(j)) < 0)) {
      emit(f.exponents(i), f.coeff(i));
      ++i;
    } else if (i == f.size() || compare_exponents(f.exponents(i), g.exponents(j)) > 0) {
      emit(g.exponents(j), sign > 0 ? g.coeff(j) : Integer(-g.coeff(j)));
      ++j;
    } else {
      emit(f.exponents(i), sign > 0 ? Integer(f.coeff(i) + g.coeff(j))
                                    : Integer(f.coeff(i) - g.coeff(j)));
      ++i;
      ++j;
    }
  }
  return LaurentPolynomial::from_sorted(f.shared_variables(), f.ring(), std::move(exps),
                                        std::move(coeffs));
}

LaurentPolynomial multiply_generic(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  const std::size_t n = f.nvars();
  std::map<std::vector<std::int32_t>, Integer> acc;
  std::vector<std::int32_t> e(n);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      auto a = f.exponents(i), b = g.exponents(j);
      for (std::size_t k = 0; k < n; ++k) e[k] = checked_exponent(std::int64_t{a[k]} + b[k]);
      acc[e] += f.coeff(i) * g.coeff(j);
    }
  std::vector<std::int32_t> exps;
  std::vector<Integer> coeffs;
  for (auto& [k, c] : acc) {
    f.ring().reduce_in_place(c);
    if (sgn(c) == 0) continue;
    exps.insert(exps.end(), k.begin(), k.end());
    coeffs.push_back(std::move(c));
  }
  return LaurentPolynomial::from_sorted(f.shared_variables(), f.ring(), std::move(exps),
                                        std::move(coeffs));
}

} // namespace

LaurentPolynomial operator+(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  return linear_combination(f, g, +1);
}

LaurentPolynomial operator-(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  return linear_combination(f, g, -1);
}

LaurentPolynomial operator*(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  return multiply(f, g);
}

LaurentPolynomial scale(const LaurentPolynomial& f, const Integer& c) {
  std::vector<std::int32_t> exps;
  std::vector<Integer> coeffs;
  for (std::size_t i = 0; i < f.size(); ++i) {
    Integer v = f.coeff(i) * c;
    f.ring().reduce_in_place(v);
    if (sgn(v) == 0) continue;
    auto e = f.exponents(i);
    exps.insert(exps.end(), e.begin(), e.end());
    coeffs.push_back(std::move(v));
  }
  return LaurentPolynomial::from_sorted(f.shared_variables(), f.ring(), std::move(exps),
                                        std::move(coeffs));
}

LaurentPolynomial multiply(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  require_compatible(f, g);
  if (f.is_zero() || g.is_zero()) return LaurentPolynomial::from_sorted(f.shared_variables(), f.ring(), {}, {});
  auto packing = detail::Packing::for_range(f.nvars(), f.max_abs_exponent() + g.max_abs_exponent());
  if (!packing) return multiply_generic(f, g);
  const LaurentPolynomial& big = f.size() >= g.size() ? f : g;
  const LaurentPolynomial& small = f.size() >= g.size() ? g : f;
  detail::BigArith arith;
  if (!f.ring().is_exact()) arith.modulus = &f.ring().modulus();
  auto deltas = detail::shifts_of(small, *packing);
  auto product = detail::merge_multiply(detail::to_packed(big, *packing),
                                        detail::to_packed(small, *packing), deltas, arith,
                                        [](detail::Key) { return true; });
  return detail::from_packed(std::move(product), *packing, f);
}

LaurentPolynomial power(const LaurentPolynomial& f, unsigned long n) {
  LaurentPolynomial result = LaurentPolynomial::constant(f.variables(), 1, f.ring());
  if (n == 0) return result;
  if (f.is_zero()) return LaurentPolynomial::from_sorted(f.shared_variables(), f.ring(), {}, {});
  const std::int64_t reach = f.max_abs_exponent() * static_cast<std::int64_t>(n);
  auto packing = detail::Packing::for_range(f.nvars(), reach);
  if (!packing || reach / static_cast<std::int64_t>(n) != f.max_abs_exponent()) {
    for (unsigned long i = 0; i < n; ++i) result = multiply(result, f);
    return result;
  }
  detail::BigArith arith;
  if (!f.ring().is_exact()) arith.modulus = &f.ring().modulus();
  auto packed_f = detail::to_packed(f, *packing);
  auto deltas = detail::shifts_of(f, *packing);
  auto acc = detail::to_packed(LaurentPolynomial::constant(f.variables(), 1, f.ring()), *packing);
  for (unsigned long i = 0; i < n; ++i)
    acc = detail::merge_multiply(acc, packed_f, deltas, arith, [](detail::Key) { return true; });
  return detail::from_packed(std::move(acc), *packing, f);
}

LaurentPolynomial substitute_power(const LaurentPolynomial& f, unsigned long q) {
  if (q == 0) throw DomainError("substitution power must be >= 1");
  std::vector<std::int32_t> exps(f.flat_exponents().begin(), f.flat_exponents().end());
  for (auto& e : exps) e = checked_exponent(std::int64_t{e} * static_cast<std::int64_t>(q));
  std::vector<Integer> coeffs(f.coefficients().begin(), f.coefficients().end());
  return LaurentPolynomial::from_sorted(f.shared_variables(), f.ring(), std::move(exps),
                                        std::move(coeffs));
}

Integer constant_term(const LaurentPolynomial& f) { return f.constant_term(); }

Integer constant_term_of_product(std::span<const LaurentPolynomial> factors) {
  if (factors.empty()) return 1;
  if (factors.size() == 1) return factors[0].constant_term();
  LaurentPolynomial prefix = factors[0];
  for (std::size_t i = 1; i + 1 < factors.size(); ++i) prefix = multiply(prefix, factors[i]);
  const LaurentPolynomial& last = factors.back();
  require_compatible(prefix, last);
  Integer total = 0;
  std::vector<std::int32_t> neg(last.nvars());
  for (std::size_t i = 0; i < last.size(); ++i) {
    auto e = last.exponents(i);
    for (std::size_t k = 0; k < e.size(); ++k) neg[k] = checked_exponent(-std::int64_t{e[k]});
    Integer c = prefix.coefficient(neg);
    if (sgn(c) != 0) total += c * last.coeff(i);
  }
  last.ring().reduce_in_place(total);
  return total;
}

LaurentPolynomial exact_divide(const LaurentPolynomial& f, const Integer& d) {
  if (!f.ring().is_exact()) throw DomainError("exact division requires the exact ring");
  if (sgn(d) == 0) throw DomainError("division by zero");
  std::vector<std::int32_t> exps(f.flat_exponents().begin(), f.flat_exponents().end());
  std::vector<Integer> coeffs;
  coeffs.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!mpz_divisible_p(f.coeff(i).get_mpz_t(), d.get_mpz_t()))
      throw ArithmeticError("coefficient " + f.coeff(i).get_str() + " not divisible by " +
                            d.get_str());
    Integer q;
    mpz_divexact(q.get_mpz_t(), f.coeff(i).get_mpz_t(), d.get_mpz_t());
    coeffs.push_back(std::move(q));
  }
  return LaurentPolynomial::from_sorted(f.shared_variables(), f.ring(), std::move(exps),
                                        std::move(coeffs));
}

} // namespace dworklab
