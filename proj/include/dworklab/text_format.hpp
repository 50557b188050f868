#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dworklab/laurent.hpp"

namespace dworklab {

// Grammar:
//   poly   := term (('+'|'-') term)*
//   term   := [integer] ['*'] factor*      (factors joined by '*' or blanks)
//   factor := ident ['^' signed-integer]
// Negative powers are written x^-1; "1/x" is rejected. With no variable list
// the variables are the identifiers that occur, in natural order (x2 < x10).
LaurentPolynomial parse_polynomial(std::string_view text);
LaurentPolynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables);

// Canonical text: terms in increasing lexicographic exponent order.
std::string format_polynomial(const LaurentPolynomial& f);

// {"variables":[...], "terms":[{"coeff":"<decimal>","exponents":[...]}]}
nlohmann::json polynomial_to_json(const LaurentPolynomial& f);
LaurentPolynomial polynomial_from_json(const nlohmann::json& j);

// JSON if the first non-blank character is '{', grammar text otherwise.
LaurentPolynomial read_polynomial(std::string_view text);

bool natural_less(const std::string& a, const std::string& b);

} // namespace dworklab
