#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dworklab/laurent.hpp"
#include "dworklab/period.hpp"

namespace dworklab {

enum class ClosedForm {
  none,
  // a(3n) = (3n)!/n!^3 sum_k C(n,k)^2 C(n+k,k), zero off multiples of 3
  apery_like,
  // a(3n) = (3n)!/n!^3
  trinomial,
  // a(2n) = C(2n,n)^2
  central_binomial_squared,
  // a(2n) = C(2n,n)
  central_binomial,
  // a(3n) = C(3n,n)
  negative_power,
};

struct ExpectedValue {
  std::uint64_t n = 0;
  Integer value;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::vector<std::string> variables;
  std::string text;
  std::vector<ExpectedValue> expected;
  // Where the expected values come from.
  std::string expected_source;
  std::optional<std::uint64_t> covering_index;
  ClosedForm closed_form = ClosedForm::none;
  std::string closed_form_text;
  // Applies to sum_n a(k n) t^n with k the covering index.
  std::optional<ThetaOperator> theta_operator;

  LaurentPolynomial polynomial() const;
};

const std::vector<CatalogEntry>& catalog_entries();
std::vector<std::string> catalog_names();
// Throws DomainError for unknown names.
const CatalogEntry& get_entry(const std::string& name);

// a(0..max_n) from the entry's closed form; throws DomainError if it has none.
PeriodSequence closed_form_sequence(const CatalogEntry& entry, std::size_t max_n);

// b(n) = a(k n) for n <= max_index / k.
PeriodSequence compress_sequence(const PeriodSequence& a, std::uint64_t k);

} // namespace dworklab
