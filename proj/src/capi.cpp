#include "dworklab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "dworklab/catalog.hpp"
#include "dworklab/decomposition.hpp"
#include "dworklab/dwork.hpp"
#include "dworklab/error.hpp"
#include "dworklab/geometry.hpp"
#include "dworklab/padic.hpp"
#include "dworklab/period.hpp"
#include "dworklab/report_json.hpp"
#include "dworklab/text_format.hpp"

struct dwl_polynomial {
  dworklab::LaurentPolynomial f;
};

struct dwl_sequence {
  dworklab::PeriodSequence a;
};

namespace {

thread_local std::string last_error;

class InvalidArgument : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dwl_status emit(const nlohmann::json& j, char** out, dwl_status status = DWL_OK) {
  *out = copy_string(j.dump(2));
  return status;
}

template <class F>
dwl_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const dworklab::ParseError& e) {
    last_error = e.what();
    return DWL_ERR_PARSE;
  } catch (const dworklab::DomainError& e) {
    last_error = e.what();
    return DWL_ERR_DOMAIN;
  } catch (const dworklab::LimitExceeded& e) {
    last_error = e.what();
    return DWL_ERR_LIMIT;
  } catch (const dworklab::ArithmeticError& e) {
    last_error = e.what();
    return DWL_ERR_ARITHMETIC;
  } catch (const InvalidArgument& e) {
    last_error = e.what();
    return DWL_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return DWL_ERR_LIMIT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DWL_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return DWL_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw InvalidArgument(std::string(what) + " is NULL");
}

dworklab::CongruenceKind parse_kind(const std::string& kind) {
  using dworklab::CongruenceKind;
  if (kind == "d1") return CongruenceKind::d1;
  if (kind == "d3") return CongruenceKind::d3;
  if (kind == "digit") return CongruenceKind::digit;
  if (kind == "thm41" || kind == "theorem41") return CongruenceKind::theorem41;
  if (kind == "covering") return CongruenceKind::covering;
  throw InvalidArgument("unknown congruence kind '" + kind + "'");
}

dworklab::SplittingLemma parse_lemma(const std::string& name) {
  using dworklab::SplittingLemma;
  for (auto l : {SplittingLemma::existence, SplittingLemma::multiplicity, SplittingLemma::common_left,
                 SplittingLemma::common_right})
    if (dworklab::to_string(l) == name) return l;
  throw InvalidArgument("unknown lemma '" + name + "'");
}

dworklab::Integer parse_integer(const char* text) {
  dworklab::Integer v;
  if (v.set_str(text, 10) != 0) throw dworklab::ParseError(std::string("not an integer: ") + text, 0);
  return v;
}

} // namespace

extern "C" {

void dwl_string_free(char* s) { std::free(s); }

const char* dwl_last_error(void) { return last_error.c_str(); }

const char* dwl_status_name(dwl_status status) {
  switch (status) {
  case DWL_OK: return "ok";
  case DWL_FINDING: return "finding";
  case DWL_ERR_PARSE: return "parse error";
  case DWL_ERR_DOMAIN: return "domain error";
  case DWL_ERR_LIMIT: return "limit exceeded";
  case DWL_ERR_ARITHMETIC: return "arithmetic error";
  case DWL_ERR_INVALID_ARGUMENT: return "invalid argument";
  case DWL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* dwl_version(void) { return "1.0.0"; }

dwl_status dwl_polynomial_parse(const char* text, dwl_polynomial** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new dwl_polynomial{dworklab::read_polynomial(text)};
    return DWL_OK;
  });
}

dwl_status dwl_polynomial_from_catalog(const char* name, dwl_polynomial** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = new dwl_polynomial{dworklab::get_entry(name).polynomial()};
    return DWL_OK;
  });
}

void dwl_polynomial_free(dwl_polynomial* f) { delete f; }

dwl_status dwl_polynomial_format(const dwl_polynomial* f, char** text) {
  return guarded([&] {
    require(f, "f");
    require(text, "text");
    *text = copy_string(dworklab::format_polynomial(f->f));
    return DWL_OK;
  });
}

dwl_status dwl_polynomial_to_json(const dwl_polynomial* f, char** json) {
  return guarded([&] {
    require(f, "f");
    require(json, "json");
    return emit(dworklab::polynomial_to_json(f->f), json);
  });
}

dwl_status dwl_polynomial_power(const dwl_polynomial* f, unsigned long n, dwl_polynomial** out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = new dwl_polynomial{dworklab::power(f->f, n)};
    return DWL_OK;
  });
}

dwl_status dwl_constant_term(const dwl_polynomial* f, char** decimal) {
  return guarded([&] {
    require(f, "f");
    require(decimal, "decimal");
    *decimal = copy_string(dworklab::constant_term(f->f).get_str());
    return DWL_OK;
  });
}

dwl_status dwl_analyze(const dwl_polynomial* f, unsigned long kernel_gcd_prime, char** json) {
  return guarded([&] {
    require(f, "f");
    require(json, "json");
    if (f->f.nvars() == 0 || f->f.is_zero())
      throw dworklab::DomainError("analysis needs a nonzero polynomial in at least one variable");
    const auto a = dworklab::ExponentMatrix::of(f->f);
    const auto cert = dworklab::certify_interior_origin(a);
    const auto kernel = dworklab::kernel_and_covering_index(a);
    nlohmann::json out = {{"polynomial", dworklab::format_polynomial(f->f)},
                          {"variables", f->f.variables()},
                          {"exponent_matrix", dworklab::to_json(a)},
                          {"rank", a.rank()}};
    nlohmann::json c = dworklab::to_json(cert);
    for (auto it = c.begin(); it != c.end(); ++it) out[it.key()] = it.value();
    out["kernel"] = dworklab::to_json(kernel);
    out["k"] = dworklab::to_json(kernel.covering_index);
    if (kernel_gcd_prime != 0) {
      if (!dworklab::is_prime(kernel_gcd_prime))
        throw dworklab::DomainError(std::to_string(kernel_gcd_prime) + " is not prime");
      if (sgn(kernel.covering_index) == 0 || !kernel.covering_index.fits_ulong_p())
        throw dworklab::DomainError("covering index is 0; the kernel gcd condition is undefined");
      auto r = dworklab::check_kernel_gcd_condition(a, kernel.covering_index.get_ui(), kernel_gcd_prime);
      nlohmann::json rj = dworklab::to_json(r);
      rj["p"] = kernel_gcd_prime;
      out["kernel_gcd_condition"] = rj;
    }
    return emit(out, json);
  });
}

dwl_status dwl_period(const dwl_polynomial* f, size_t max_n, const char* method,
                      unsigned long modulus_prime, unsigned modulus_exponent, dwl_sequence** out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    const std::string m = method ? method : "pruned";
    dworklab::CoefficientRing ring = dworklab::CoefficientRing::exact();
    if (modulus_prime != 0) ring = dworklab::CoefficientRing::modular(modulus_prime, modulus_exponent);
    if (m == "pruned") {
      *out = new dwl_sequence{dworklab::period_coefficients_pruned(f->f, max_n, ring)};
    } else if (m == "multinomial") {
      if (!ring.is_exact()) throw InvalidArgument("the multinomial method computes exact values only");
      *out = new dwl_sequence{dworklab::period_coefficients_multinomial(f->f, max_n)};
    } else {
      throw InvalidArgument("unknown period method '" + m + "'");
    }
    return DWL_OK;
  });
}

dwl_status dwl_sequence_from_json(const char* json, dwl_sequence** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      throw dworklab::ParseError(e.what(), e.byte);
    }
    *out = new dwl_sequence{dworklab::sequence_from_json(j)};
    return DWL_OK;
  });
}

dwl_status dwl_sequence_to_json(const dwl_sequence* a, char** json) {
  return guarded([&] {
    require(a, "a");
    require(json, "json");
    return emit(dworklab::to_json(a->a), json);
  });
}

size_t dwl_sequence_length(const dwl_sequence* a) { return a ? a->a.size() : 0; }

dwl_status dwl_sequence_value(const dwl_sequence* a, size_t n, char** decimal) {
  return guarded([&] {
    require(a, "a");
    require(decimal, "decimal");
    *decimal = copy_string(a->a.at(n).get_str());
    return DWL_OK;
  });
}

void dwl_sequence_free(dwl_sequence* a) { delete a; }

dwl_status dwl_congruence(const dwl_sequence* a, const dwl_congruence_params* params, char** json) {
  return guarded([&] {
    require(a, "a");
    require(params, "params");
    require(params->kind, "params->kind");
    require(json, "json");
    dworklab::CheckOptions options;
    if (params->max_witnesses != 0) options.max_witnesses = params->max_witnesses;
    dworklab::DworkReport r;
    switch (parse_kind(params->kind)) {
    case dworklab::CongruenceKind::d1: r = dworklab::check_D1(a->a, params->p, params->max_n, options); break;
    case dworklab::CongruenceKind::d3:
      r = dworklab::check_D3(a->a, params->p, params->s, params->max_n, options);
      break;
    case dworklab::CongruenceKind::digit:
      r = dworklab::check_digit_product(a->a, params->p, params->max_n, options);
      break;
    case dworklab::CongruenceKind::theorem41:
      r = dworklab::check_digit_block_congruence(a->a, params->p, params->s, params->digit_bound, options);
      break;
    case dworklab::CongruenceKind::covering:
      r = dworklab::check_covering_congruence(a->a, params->k, params->p, params->s, params->digit_bound,
                                              options);
      break;
    }
    return emit(dworklab::to_json(r), json,
                r.status == dworklab::ReportStatus::fail ? DWL_FINDING : DWL_OK);
  });
}

dwl_status dwl_decompose(const dwl_polynomial* f, unsigned long n, unsigned long p, unsigned s,
                         char** json) {
  return guarded([&] {
    require(f, "f");
    require(json, "json");
    dworklab::LayerCache cache(f->f, p);
    const auto check = dworklab::check_reconstruction(cache, n, s);
    nlohmann::json layers = nlohmann::json::array();
    const unsigned top = check.top_layer_modular ? s - 1 : s;
    if (check.holds || check.top_layer_modular) {
      for (unsigned k = 0; k <= top; ++k) {
        const auto& g = cache.layer(n, k);
        nlohmann::json layer = {{"k", k}, {"terms", g.size()}};
        if (g.size() <= 2000) layer["polynomial"] = dworklab::polynomial_to_json(g);
        layers.push_back(layer);
      }
    }
    nlohmann::json out = {{"f", dworklab::format_polynomial(f->f)},
                          {"n", n},
                          {"p", p},
                          {"s", s},
                          {"layers", layers},
                          {"reconstruction_holds", check.holds},
                          {"top_layer_modular", check.top_layer_modular},
                          {"largest_power_terms", check.largest_power_terms}};
    if (!check.note.empty()) out["note"] = check.note;
    return emit(out, json, check.holds ? DWL_OK : DWL_FINDING);
  });
}

dwl_status dwl_exchange_sweep(const dwl_polynomial* f, unsigned long p, unsigned s, char** json) {
  return guarded([&] {
    require(f, "f");
    require(json, "json");
    dworklab::LayerCache cache(f->f, p);
    const auto sweep = dworklab::sweep_summand_exchange(cache, s);
    nlohmann::json out = dworklab::to_json(sweep);
    out["p"] = p;
    out["s"] = s;
    return emit(out, json, sweep.failures ? DWL_FINDING : DWL_OK);
  });
}

dwl_status dwl_verify_lemma(const char* lemma, uint64_t trials, uint64_t seed, unsigned max_s,
                            unsigned threads, char** json) {
  return guarded([&] {
    require(lemma, "lemma");
    require(json, "json");
    const auto r = dworklab::verify_splitting_lemma(parse_lemma(lemma), trials, seed, max_s,
                                                    threads == 0 ? 1 : threads);
    nlohmann::json out = dworklab::to_json(r);
    out["seed"] = seed;
    out["max_s"] = max_s;
    return emit(out, json, r.counterexamples ? DWL_FINDING : DWL_OK);
  });
}

dwl_status dwl_unit_root(const dwl_sequence* a, unsigned long p, const char* x, unsigned s,
                         unsigned precision, char** json) {
  return guarded([&] {
    require(a, "a");
    require(x, "x");
    require(json, "json");
    const unsigned prec = precision == 0 ? s + 1 : precision;
    const dworklab::PadicNumber px(p, prec, parse_integer(x));
    const auto u = dworklab::unit_root_approximation(a->a, p, px, s, prec);
    nlohmann::json out = dworklab::to_json(u);
    out["p"] = p;
    out["x"] = px.residue().get_str();
    out["s"] = s;
    return emit(out, json, u.consistent ? DWL_OK : DWL_FINDING);
  });
}

dwl_status dwl_domain_check(const dwl_sequence* a, unsigned long p, const char* x, int* in_domain) {
  return guarded([&] {
    require(a, "a");
    require(x, "x");
    require(in_domain, "in_domain");
    *in_domain = dworklab::domain_check(a->a, p, dworklab::PadicNumber(p, 1, parse_integer(x))) ? 1 : 0;
    return DWL_OK;
  });
}

dwl_status dwl_catalog_list(char** json) {
  return guarded([&] {
    require(json, "json");
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : dworklab::catalog_entries())
      out.push_back({{"name", e.name}, {"description", e.description}, {"text", e.text}});
    return emit(out, json);
  });
}

dwl_status dwl_catalog_entry(const char* name, char** json) {
  return guarded([&] {
    require(name, "name");
    require(json, "json");
    return emit(dworklab::to_json(dworklab::get_entry(name)), json);
  });
}

} // extern "C"
