#ifndef DWORKLAB_H
#define DWORKLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(DWL_BUILDING_LIBRARY)
#define DWL_API __attribute__((visibility("default")))
#else
#define DWL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dwl_status {
  DWL_OK = 0,
  /* The computation finished and found a violation or counterexample. */
  DWL_FINDING = 1,
  DWL_ERR_PARSE = 2,
  DWL_ERR_DOMAIN = 3,
  DWL_ERR_LIMIT = 4,
  DWL_ERR_ARITHMETIC = 5,
  DWL_ERR_INVALID_ARGUMENT = 6,
  DWL_ERR_INTERNAL = 7
} dwl_status;

typedef struct dwl_polynomial dwl_polynomial;
typedef struct dwl_sequence dwl_sequence;

/* Strings returned through char** are owned by the caller. */
DWL_API void dwl_string_free(char* s);
/* Message of the last failed call on this thread; never NULL. */
DWL_API const char* dwl_last_error(void);
DWL_API const char* dwl_status_name(dwl_status status);
DWL_API const char* dwl_version(void);

/* Text grammar or the JSON polynomial format. */
DWL_API dwl_status dwl_polynomial_parse(const char* text, dwl_polynomial** out);
DWL_API dwl_status dwl_polynomial_from_catalog(const char* name, dwl_polynomial** out);
DWL_API void dwl_polynomial_free(dwl_polynomial* f);
DWL_API dwl_status dwl_polynomial_format(const dwl_polynomial* f, char** text);
DWL_API dwl_status dwl_polynomial_to_json(const dwl_polynomial* f, char** json);
DWL_API dwl_status dwl_polynomial_power(const dwl_polynomial* f, unsigned long n,
                                        dwl_polynomial** out);
DWL_API dwl_status dwl_constant_term(const dwl_polynomial* f, char** decimal);

/* Exponent matrix, interior certificate and kernel lattice. With kernel_gcd_prime
   nonzero the kernel gcd condition is checked for that prime with the
   polynomial's covering index. */
DWL_API dwl_status dwl_analyze(const dwl_polynomial* f, unsigned long kernel_gcd_prime,
                               char** json);
/* method: "pruned" (default when NULL) or "multinomial". modulus_prime 0 means
   exact values; otherwise values are reduced mod modulus_prime^modulus_exponent
   (pruned only). */
DWL_API dwl_status dwl_period(const dwl_polynomial* f, size_t max_n, const char* method,
                              unsigned long modulus_prime, unsigned modulus_exponent,
                              dwl_sequence** out);
DWL_API dwl_status dwl_sequence_from_json(const char* json, dwl_sequence** out);
DWL_API dwl_status dwl_sequence_to_json(const dwl_sequence* a, char** json);
DWL_API size_t dwl_sequence_length(const dwl_sequence* a);
DWL_API dwl_status dwl_sequence_value(const dwl_sequence* a, size_t n, char** decimal);
DWL_API void dwl_sequence_free(dwl_sequence* a);

typedef struct dwl_congruence_params {
  /* "d1", "d3", "digit", "thm41" or "covering" */
  const char* kind;
  unsigned long p;
  unsigned s;
  uint64_t max_n;
  uint64_t digit_bound;
  uint64_t k;
  size_t max_witnesses;
} dwl_congruence_params;

/* DWL_FINDING when the report status is fail. */
DWL_API dwl_status dwl_congruence(const dwl_sequence* a, const dwl_congruence_params* params,
                                  char** json);

/* Layers g_{n,0..s} and the reconstruction check; DWL_FINDING when the
   reconstruction differs from f^(n p^s). */
DWL_API dwl_status dwl_decompose(const dwl_polynomial* f, unsigned long n, unsigned long p,
                                 unsigned s, char** json);
/* Exhaustive summand exchange sweep; DWL_FINDING on any failure. */
DWL_API dwl_status dwl_exchange_sweep(const dwl_polynomial* f, unsigned long p, unsigned s,
                                      char** json);
/* lemma: "existence", "multiplicity", "common-left" or "common-right". */
DWL_API dwl_status dwl_verify_lemma(const char* lemma, uint64_t trials, uint64_t seed,
                                    unsigned max_s, unsigned threads, char** json);
/* x is a decimal integer read mod p^precision; precision 0 means s + 1.
   DWL_FINDING when consecutive ratios disagree. */
DWL_API dwl_status dwl_unit_root(const dwl_sequence* a, unsigned long p, const char* x,
                                 unsigned s, unsigned precision, char** json);
DWL_API dwl_status dwl_domain_check(const dwl_sequence* a, unsigned long p, const char* x,
                                    int* in_domain);

DWL_API dwl_status dwl_catalog_list(char** json);
DWL_API dwl_status dwl_catalog_entry(const char* name, char** json);

#ifdef __cplusplus
}
#endif

#endif
