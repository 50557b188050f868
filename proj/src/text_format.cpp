#include "dworklab/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <optional>

#include "dworklab/error.hpp"

namespace dworklab {

namespace {

struct RawFactor {
  std::string name;
  std::int64_t exponent;
  std::size_t position;
};

struct RawTerm {
  Integer coeff;
  std::vector<RawFactor> factors;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  void skip_blanks() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_blanks();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_blanks();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  std::size_t position() const { return pos_; }
  void advance() { ++pos_; }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string identifier() {
    skip_blanks();
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string digits() {
    skip_blanks();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::int64_t parse_exponent(Lexer& lex) {
  std::size_t at = lex.position();
  bool negative = false;
  if (lex.peek() == '-' || lex.peek() == '+') {
    negative = lex.peek() == '-';
    lex.advance();
  }
  std::string d = lex.digits();
  if (d.empty()) throw ParseError("expected integer exponent after '^'", lex.position());
  if (d.size() > 10) throw ParseError("exponent overflow", at);
  std::int64_t v = std::stoll(d);
  if (negative) v = -v;
  if (v > std::numeric_limits<std::int32_t>::max() || v < std::numeric_limits<std::int32_t>::min())
    throw ParseError("exponent overflow", at);
  return v;
}

std::vector<RawTerm> parse_terms(std::string_view text) {
  Lexer lex(text);
  std::vector<RawTerm> terms;
  if (lex.at_end()) throw ParseError("empty polynomial", 0);
  bool first = true;
  while (!lex.at_end()) {
    int sign = 1;
    char c = lex.peek();
    if (c == '+' || c == '-') {
      sign = c == '-' ? -1 : 1;
      lex.advance();
    } else if (!first) {
      throw ParseError(std::string("expected '+' or '-' but found '") + c + "'", lex.position());
    }
    first = false;

    RawTerm term;
    term.coeff = sign;
    bool have_content = false;
    if (std::isdigit(static_cast<unsigned char>(lex.peek()))) {
      std::string d = lex.digits();
      term.coeff *= Integer(d);
      have_content = true;
      if (lex.peek() == '*') lex.advance();
    }
    while (true) {
      char n = lex.peek();
      if (n == '/')
        throw ParseError("division is not supported; write negative powers as x^-1",
                         lex.position());
      if (!Lexer::ident_start(n)) break;
      std::size_t at = lex.position();
      RawFactor factor{lex.identifier(), 1, at};
      if (lex.peek() == '^') {
        lex.advance();
        factor.exponent = parse_exponent(lex);
      }
      term.factors.push_back(std::move(factor));
      have_content = true;
      if (lex.peek() == '*') {
        lex.advance();
        if (!Lexer::ident_start(lex.peek()))
          throw ParseError("expected variable after '*'", lex.position());
      }
    }
    if (!have_content) {
      if (lex.at_end()) throw ParseError("unexpected end of input", lex.position());
      throw ParseError(std::string("unexpected character '") + lex.peek() + "'", lex.position());
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

LaurentPolynomial assemble(const std::vector<RawTerm>& raw, std::vector<std::string> variables) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < variables.size(); ++i) index[variables[i]] = i;
  std::vector<LaurentPolynomial::Term> terms;
  terms.reserve(raw.size());
  for (const auto& t : raw) {
    std::vector<std::int64_t> e(variables.size(), 0);
    for (const auto& f : t.factors) {
      auto it = index.find(f.name);
      if (it == index.end()) throw ParseError("unknown variable '" + f.name + "'", f.position);
      e[it->second] += f.exponent;
      if (e[it->second] > std::numeric_limits<std::int32_t>::max() ||
          e[it->second] < std::numeric_limits<std::int32_t>::min())
        throw ParseError("exponent overflow", f.position);
    }
    ExponentVector ev(variables.size());
    for (std::size_t i = 0; i < e.size(); ++i) ev[i] = static_cast<std::int32_t>(e[i]);
    terms.push_back({std::move(ev), t.coeff});
  }
  return LaurentPolynomial::from_terms(std::move(variables), std::move(terms));
}

} // namespace

bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::string na = a.substr(i, ie - i), nb = b.substr(j, je - j);
      na.erase(0, std::min(na.find_first_not_of('0'), na.size()));
      nb.erase(0, std::min(nb.find_first_not_of('0'), nb.size()));
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

LaurentPolynomial parse_polynomial(std::string_view text) {
  auto raw = parse_terms(text);
  std::vector<std::string> names;
  for (const auto& t : raw)
    for (const auto& f : t.factors) names.push_back(f.name);
  std::sort(names.begin(), names.end(), natural_less);
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return assemble(raw, std::move(names));
}

LaurentPolynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables) {
  auto sorted = variables;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("duplicate variable name");
  return assemble(parse_terms(text), variables);
}

std::string format_polynomial(const LaurentPolynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto e = f.exponents(i);
    Integer c = f.coeff(i);
    bool negative = sgn(c) < 0;
    if (negative) c = -c;

    std::string monomial;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!monomial.empty()) monomial += '*';
      monomial += f.variables()[k];
      if (e[k] != 1) monomial += "^" + std::to_string(e[k]);
    }
    std::string body;
    if (monomial.empty())
      body = c.get_str();
    else if (c == 1)
      body = monomial;
    else
      body = c.get_str() + "*" + monomial;

    if (i == 0)
      out += negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  return out;
}

nlohmann::json polynomial_to_json(const LaurentPolynomial& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto e = f.exponents(i);
    terms.push_back({{"coeff", f.coeff(i).get_str()},
                     {"exponents", std::vector<std::int32_t>(e.begin(), e.end())}});
  }
  return {{"variables", f.variables()}, {"terms", std::move(terms)}};
}

LaurentPolynomial polynomial_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("variables") || !j.contains("terms"))
      throw ParseError("polynomial JSON needs \"variables\" and \"terms\"");
    auto variables = j.at("variables").get<std::vector<std::string>>();
    std::vector<LaurentPolynomial::Term> terms;
    for (const auto& t : j.at("terms")) {
      const auto& c = t.at("coeff");
      Integer coeff;
      if (c.is_string()) {
        if (coeff.set_str(c.get<std::string>(), 10) != 0)
          throw ParseError("coefficient is not a decimal integer: " + c.get<std::string>());
      } else if (c.is_number_integer()) {
        coeff = Integer(std::to_string(c.get<long long>()));
      } else {
        throw ParseError("coefficient must be a decimal string");
      }
      auto e = t.at("exponents").get<std::vector<std::int64_t>>();
      if (e.size() != variables.size())
        throw ParseError("term exponent count does not match variable count");
      ExponentVector ev(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] > std::numeric_limits<std::int32_t>::max() ||
            e[i] < std::numeric_limits<std::int32_t>::min())
          throw ParseError("exponent overflow");
        ev[i] = static_cast<std::int32_t>(e[i]);
      }
      terms.push_back({std::move(ev), std::move(coeff)});
    }
    return LaurentPolynomial::from_terms(std::move(variables), std::move(terms));
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed polynomial JSON: ") + ex.what());
  }
}

LaurentPolynomial read_polynomial(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
      throw ParseError(std::string("invalid JSON: ") + ex.what(), ex.byte);
    }
    return polynomial_from_json(j);
  }
  return parse_polynomial(text);
}

} // namespace dworklab
