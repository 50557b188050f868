#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dworklab/laurent.hpp"

namespace dworklab {

struct DecompositionLimits {
  // Largest term count allowed for any power f^(n p^k), judged before it is
  // computed by extrapolating from the smaller powers already built.
  std::size_t max_terms = 6'000'000;
};

// Lazily built layers g_{n,k}: g_{n,0} = f^n and
//   p^k g_{n,k}(X) = f(X)^{n p^k} - sum_{j<k} p^j g_{n,j}(X^{p^{k-j}}).
// Not thread safe.
class LayerCache {
public:
  LayerCache(LaurentPolynomial f, unsigned long p, DecompositionLimits limits = {});

  const LaurentPolynomial& f() const noexcept { return f_; }
  unsigned long p() const noexcept { return p_; }

  // Throws ArithmeticError if an exact division leaves a remainder and
  // LimitExceeded if a needed power is estimated to exceed the term ceiling.
  const LaurentPolynomial& layer(unsigned long n, unsigned k);
  // f^e, memoised.
  const LaurentPolynomial& power_of_f(unsigned long e);
  // Estimated number of terms of f^e.
  double estimated_terms(unsigned long e);

private:
  LaurentPolynomial f_;
  unsigned long p_;
  DecompositionLimits limits_;
  std::map<unsigned long, LaurentPolynomial> powers_;
  std::map<std::pair<unsigned long, unsigned>, LaurentPolynomial> layers_;
};

struct Decomposition {
  LaurentPolynomial f;
  unsigned long n = 1;
  unsigned long p = 2;
  unsigned s = 0;
  std::vector<LaurentPolynomial> layers;  // g_{n,0..s}
};

Decomposition g_decomposition(const LaurentPolynomial& f, unsigned long n, unsigned s,
                              unsigned long p, const DecompositionLimits& limits = {});
Decomposition g_decomposition(LayerCache& cache, unsigned long n, unsigned s);

// sum_k p^k g_{n,k}(X^{p^{s-k}}); equals f^{n p^s} exactly.
LaurentPolynomial reconstruct(const Decomposition& d);

struct ReconstructionCheck {
  bool holds = false;
  // The top layer was not materialised: g_{n,s} is integral iff
  // (f^{p^s})^n == sum_{k<s} p^k g_{n,k}(X^{p^{s-k}}) mod p^s, and that
  // comparison was made with f^{p^s} reduced mod p^s.
  bool top_layer_modular = false;
  std::size_t largest_power_terms = 0;
  std::string note;
};

// Exact comparison of reconstruct(d) with f^(n p^s); falls back to the
// modular integrality test of the top layer when f^(n p^s) is over the term
// ceiling but f^(p^s) is not.
ReconstructionCheck check_reconstruction(LayerCache& cache, unsigned long n, unsigned s);

// Indices i_a..i_b and digits n_a..n_b. With exponent_shift = 1 the profile
// stands for J+1: layer g_{n_k, j_k} substituted at X^{p^{k-1-j_k}}.
struct SplittingProfile {
  unsigned a = 0;
  unsigned b = 0;
  std::vector<unsigned> indices;
  std::vector<unsigned> digits;
  unsigned exponent_shift = 0;

  unsigned index(unsigned k) const { return indices[k - a]; }
  unsigned digit(unsigned k) const { return digits[k - a]; }
  // Entries k in [from, to] as a profile of their own.
  SplittingProfile slice(unsigned from, unsigned to) const;
};

// Throws DomainError unless a <= b, the lengths match, digits < p and
// 0 <= i_k <= k - exponent_shift.
void validate_profile(const SplittingProfile& profile, unsigned long p);

// G(a,b;I) = [prod_k g_{n_k,i_k}(X^{p^{k - shift - i_k}})]_0.
Integer constant_term_product_G(LayerCache& cache, const SplittingProfile& profile);
Integer constant_term_product_G(const LaurentPolynomial& f, unsigned long p,
                                const SplittingProfile& profile);

// G(a,b;I) == G(a,l-1;I) * G(l,b;I); l = a is the trivial splitting.
bool splits_at(LayerCache& cache, const SplittingProfile& profile, unsigned l);

// { l : a < l <= b, i_k <= k - l for all l <= k <= b }, with I = (i_a..i_b).
std::set<unsigned> splitting_indices(const std::vector<unsigned>& indices, unsigned a, unsigned b);

// Tail exchange at nu of I = (i_0..) and J = (j_1..):
//   I'_k = i_k (k < nu), j_k (k >= nu);  J'_k = j_k (k < nu), i_k (k >= nu).
// Applying it twice with the same nu gives back (I, J).
std::pair<std::vector<unsigned>, std::vector<unsigned>>
exchange_tails(const std::vector<unsigned>& i, const std::vector<unsigned>& j, unsigned nu);

// The exchange for a left-hand summand: I = (i_0..i_s), J = (j_1..j_{s-1}),
// sum <= s-1, nu in S_I and in S_J or {1, s}. Throws DomainError otherwise.
std::pair<std::vector<unsigned>, std::vector<unsigned>>
transform_summand(const std::vector<unsigned>& i, const std::vector<unsigned>& j, unsigned nu,
                  unsigned s);

// Both sides of G(0,s;I) G(1,s-1;J+1) = G(0,s-1;I') G(1,s;J'+1).
struct ExchangeCheck {
  Integer left;
  Integer right;
  bool holds = false;
};
ExchangeCheck check_summand_exchange(LayerCache& cache, const std::vector<unsigned>& digits,
                                     const std::vector<unsigned>& i,
                                     const std::vector<unsigned>& j, unsigned nu, unsigned s);

struct ExchangeSweep {
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  std::optional<std::pair<std::vector<unsigned>, std::vector<unsigned>>> first_failure;
};
// Every digit tuple, every admissible (I, J) and every admissible nu at level s.
ExchangeSweep sweep_summand_exchange(LayerCache& cache, unsigned s);

enum class SplittingLemma { existence, multiplicity, common_left, common_right };
std::string to_string(SplittingLemma l);

struct LemmaCounterexample {
  std::vector<unsigned> i;
  std::vector<unsigned> j;
  unsigned a = 0;
  unsigned b = 0;
};

struct LemmaReport {
  SplittingLemma lemma = SplittingLemma::existence;
  std::uint64_t trials = 0;
  std::uint64_t rejected = 0;
  std::uint64_t counterexamples = 0;
  std::vector<LemmaCounterexample> examples;
};

// Seeded random instances satisfying the lemma's hypothesis, s <= max_s.
// Instance t is drawn from its own generator seeded by (seed, lemma, t), so
// results do not depend on how trials are split across threads.
LemmaReport verify_splitting_lemma(SplittingLemma lemma, std::uint64_t trials,
                                   std::uint64_t seed = 20240601, unsigned max_s = 8,
                                   unsigned threads = 1);

// Conclusion of each lemma for one instance.
bool lemma_existence_holds(const std::vector<unsigned>& i, unsigned a, unsigned b);
bool lemma_multiplicity_holds(const std::vector<unsigned>& i, unsigned a, unsigned b);
bool lemma_common_left_holds(const std::vector<unsigned>& i, const std::vector<unsigned>& j,
                              unsigned s);
bool lemma_common_right_holds(const std::vector<unsigned>& i, const std::vector<unsigned>& j,
                              unsigned s);

} // namespace dworklab
