#include "dworklab/catalog.hpp"

#include "dworklab/error.hpp"
#include "dworklab/text_format.hpp"

namespace dworklab {

namespace {

std::vector<ExpectedValue> values(std::initializer_list<std::pair<std::uint64_t, const char*>> list) {
  std::vector<ExpectedValue> out;
  for (auto& [n, v] : list) out.push_back({n, Integer(v)});
  return out;
}

ThetaOperator bk62_operator() {
  ThetaOperator op;
  op.terms.emplace_back(0, theta_product(1, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}));
  op.terms.emplace_back(1, theta_product(-3, {{2, 3}, {1, 3}, {3, 11, 11}}));
  op.terms.emplace_back(2, theta_product(-9, {{5, 3}, {2, 3}, {4, 3}, {1, 3}}));
  op.verifiable = true;
  op.text = "θ^4 - 3t(3θ+2)(3θ+1)(11θ^2+11θ+3) - 9t^2(3θ+5)(3θ+2)(3θ+4)(3θ+1)";
  return op;
}

ThetaOperator bk24_operator() {
  ThetaOperator op;
  op.verifiable = false;
  op.text = "88501054θ^4 + ... (published truncated)";
  return op;
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;
  const std::vector<std::string> x4 = {"X1", "X2", "X3", "X4"};

  CatalogEntry bk24;
  bk24.name = "bk24";
  bk24.description = "Batyrev-Kreuzer No. 24, reflexive, 23 monomials in 4 variables";
  bk24.variables = x4;
  bk24.text =
      "X4^-1 + X2 + X1^-1*X4 + X1^-1*X3*X4 + X1^-1*X2^-1*X3*X4 + X3^-1 + X1*X3^-1"
      " + X2*X3^-1*X4^-1 + X1*X3^-1*X4^-1 + X1*X2*X3^-1*X4^-1 + X2*X4^-1 + X2^-1*X4"
      " + X1^-1*X2^-1*X4 + X1^-1*X2 + X1^-1 + X2^-1*X3*X4 + X4 + X2^-1 + X1 + X1*X4^-1"
      " + X3^-1*X4^-1 + X3 + X2^-1*X3";
  bk24.expected = values({{0, "1"}, {1, "0"}, {2, "18"}, {3, "168"}, {4, "2430"}, {5, "37200"},
                          {6, "605340"}});
  bk24.expected_source = "published coefficients a(0..6)";
  bk24.covering_index = 1;
  bk24.theta_operator = bk24_operator();
  out.push_back(bk24);

  CatalogEntry bk62;
  bk62.name = "bk62";
  bk62.description = "Batyrev-Kreuzer No. 62, reflexive, 8 monomials in 4 variables";
  bk62.variables = x4;
  bk62.text = "X1 + X2 + X3 + X4 + X1^-1*X2^-1 + X1^-1*X3^-1 + X1^-1*X4^-1 + X1^-2*X2^-1*X3^-1*X4^-1";
  bk62.expected = values({{0, "1"}, {1, "0"}, {2, "0"}, {3, "18"}, {6, "1710"}, {18, "1800376001424"}});
  bk62.expected_source = "closed form";
  bk62.covering_index = 3;
  bk62.closed_form = ClosedForm::apery_like;
  bk62.closed_form_text = "a(3n)=(3n)!/n!^3*sum_k C(n,k)^2*C(n+k,k), a(m)=0 for 3 not dividing m";
  bk62.theta_operator = bk62_operator();
  out.push_back(bk62);

  CatalogEntry cross2;
  cross2.name = "cross2";
  cross2.description = "x + y + 1/x + 1/y";
  cross2.variables = {"x", "y"};
  cross2.text = "x + y + x^-1 + y^-1";
  cross2.expected = values({{0, "1"}, {1, "0"}, {2, "4"}, {3, "0"}, {4, "36"}, {6, "400"}});
  cross2.expected_source = "closed form";
  cross2.covering_index = 2;
  cross2.closed_form = ClosedForm::central_binomial_squared;
  cross2.closed_form_text = "a(2n)=C(2n,n)^2, a(m)=0 for odd m";
  out.push_back(cross2);

  CatalogEntry triangle3;
  triangle3.name = "triangle3";
  triangle3.description = "x + y + 1/(xy)";
  triangle3.variables = {"x", "y"};
  triangle3.text = "x + y + x^-1*y^-1";
  triangle3.expected = values({{0, "1"}, {3, "6"}, {6, "90"}, {9, "1680"}, {12, "34650"}});
  triangle3.expected_source = "closed form";
  triangle3.covering_index = 3;
  triangle3.closed_form = ClosedForm::trinomial;
  triangle3.closed_form_text = "a(3n)=(3n)!/n!^3, a(m)=0 for 3 not dividing m";
  out.push_back(triangle3);

  CatalogEntry chebyshev;
  chebyshev.name = "chebyshev";
  chebyshev.description = "x + 1/x";
  chebyshev.variables = {"x"};
  chebyshev.text = "x + x^-1";
  chebyshev.expected = values({{0, "1"}, {1, "0"}, {2, "2"}, {4, "6"}, {6, "20"}});
  chebyshev.expected_source = "closed form";
  chebyshev.covering_index = 2;
  chebyshev.closed_form = ClosedForm::central_binomial;
  chebyshev.closed_form_text = "a(2n)=C(2n,n), a(m)=0 for odd m";
  out.push_back(chebyshev);

  CatalogEntry negative;
  negative.name = "negative";
  negative.description = "X^2 + 1/X, origin interior but not the only interior lattice point";
  negative.variables = {"X"};
  negative.text = "X^2 + X^-1";
  negative.expected = values({{0, "1"}, {1, "0"}, {3, "3"}, {6, "15"}});
  negative.expected_source = "closed form";
  negative.covering_index = 3;
  negative.closed_form = ClosedForm::negative_power;
  negative.closed_form_text = "a(3n)=C(3n,n), a(m)=0 for 3 not dividing m";
  out.push_back(negative);

  return out;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

} // namespace

LaurentPolynomial CatalogEntry::polynomial() const { return parse_polynomial(text, variables); }

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& e : catalog_entries()) out.push_back(e.name);
  return out;
}

const CatalogEntry& get_entry(const std::string& name) {
  for (const auto& e : catalog_entries())
    if (e.name == name) return e;
  std::string known;
  for (const auto& n : catalog_names()) known += (known.empty() ? "" : ", ") + n;
  throw DomainError("unknown catalog entry '" + name + "' (known: " + known + ")");
}

PeriodSequence closed_form_sequence(const CatalogEntry& entry, std::size_t max_n) {
  if (entry.closed_form == ClosedForm::none)
    throw DomainError("catalog entry '" + entry.name + "' has no closed form");
  const unsigned long k = entry.closed_form == ClosedForm::central_binomial ||
                                  entry.closed_form == ClosedForm::central_binomial_squared
                              ? 2
                              : 3;
  PeriodSequence out;
  out.method = PeriodMethod::closed_form;
  out.source = entry.name;
  out.values.assign(max_n + 1, Integer(0));
  for (std::size_t m = 0; m <= max_n; m += k) {
    const unsigned long n = m / k;
    Integer v;
    switch (entry.closed_form) {
    case ClosedForm::apery_like: {
      Integer sum = 0;
      for (unsigned long j = 0; j <= n; ++j) {
        Integer c = binomial(n, j);
        sum += c * c * binomial(n + j, j);
      }
      Integer f = factorial(n);
      v = factorial(3 * n) / (f * f * f) * sum;
      break;
    }
    case ClosedForm::trinomial: {
      Integer f = factorial(n);
      v = factorial(3 * n) / (f * f * f);
      break;
    }
    case ClosedForm::central_binomial_squared: {
      Integer c = binomial(2 * n, n);
      v = c * c;
      break;
    }
    case ClosedForm::central_binomial: v = binomial(2 * n, n); break;
    case ClosedForm::negative_power: v = binomial(3 * n, n); break;
    case ClosedForm::none: break;
    }
    out.values[m] = v;
  }
  return out;
}

PeriodSequence compress_sequence(const PeriodSequence& a, std::uint64_t k) {
  if (k == 0) throw DomainError("compression factor must be positive");
  if (a.values.empty()) throw DomainError("cannot compress an empty sequence");
  PeriodSequence out;
  out.method = a.method;
  out.ring = a.ring;
  out.source = a.source;
  for (std::size_t m = 0; m <= a.max_index(); m += k) out.values.push_back(a.values[m]);
  return out;
}

} // namespace dworklab
