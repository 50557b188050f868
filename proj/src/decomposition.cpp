#include "dworklab/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "dworklab/error.hpp"
#include "dworklab/geometry.hpp"

namespace dworklab {

namespace {

Integer integer_power(unsigned long p, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

unsigned long checked_power(unsigned long p, unsigned long e) {
  unsigned long r = 1;
  for (unsigned long i = 0; i < e; ++i) {
    if (r > (1ul << 40) / p) throw DomainError("p^k is too large for a substitution exponent");
    r *= p;
  }
  return r;
}

std::size_t polytope_dimension(const LaurentPolynomial& f) {
  if (f.is_zero() || f.nvars() == 0) return 0;
  return ExponentMatrix::of(f).rank();
}

} // namespace

LayerCache::LayerCache(LaurentPolynomial f, unsigned long p, DecompositionLimits limits)
    : f_(std::move(f)), p_(p), limits_(limits) {
  if (!f_.ring().is_exact()) throw DomainError("layers need integer coefficients");
  if (!is_prime(p_)) throw DomainError(std::to_string(p_) + " is not prime");
}

double LayerCache::estimated_terms(unsigned long e) {
  if (e == 0) return 1;
  auto it = powers_.upper_bound(e);
  if (it == powers_.begin()) return std::pow(double(f_.size()), double(e));
  --it;
  if (it->first == 0) return std::pow(double(f_.size()), double(e));
  const double dim = static_cast<double>(polytope_dimension(f_));
  return double(it->second.size()) * std::pow(double(e) / double(it->first), dim);
}

const LaurentPolynomial& LayerCache::power_of_f(unsigned long e) {
  if (auto it = powers_.find(e); it != powers_.end()) return it->second;
  LaurentPolynomial current = LaurentPolynomial::constant(f_.variables(), 1);
  unsigned long d = 0;
  if (auto it = powers_.upper_bound(e); it != powers_.begin()) {
    --it;
    current = it->second;
    d = it->first;
  }
  const double dim = static_cast<double>(polytope_dimension(f_));
  while (d < e) {
    current = multiply(current, f_);
    ++d;
    if (current.size() > limits_.max_terms)
      throw LimitExceeded("f^" + std::to_string(d) + " has " + std::to_string(current.size()) +
                          " terms, above the ceiling of " + std::to_string(limits_.max_terms) +
                          " (needed f^" + std::to_string(e) + ")");
    if (d >= 4 && d < e) {
      const double estimate = double(current.size()) * std::pow(double(e) / double(d), dim);
      if (estimate > double(limits_.max_terms))
        throw LimitExceeded("f^" + std::to_string(e) + " is estimated at " +
                            std::to_string(static_cast<long long>(estimate)) +
                            " terms, above the ceiling of " + std::to_string(limits_.max_terms));
    }
  }
  return powers_.emplace(e, std::move(current)).first->second;
}

const LaurentPolynomial& LayerCache::layer(unsigned long n, unsigned k) {
  const auto key = std::make_pair(n, k);
  if (auto it = layers_.find(key); it != layers_.end()) return it->second;
  LaurentPolynomial g(f_.variables());
  if (n == 0) {
    if (k == 0) g = LaurentPolynomial::constant(f_.variables(), 1);
  } else if (k == 0) {
    g = power_of_f(n);
  } else {
    LaurentPolynomial rest = power_of_f(n * checked_power(p_, k));
    for (unsigned j = 0; j < k; ++j) {
      const LaurentPolynomial& lower = layer(n, j);
      rest = rest - scale(substitute_power(lower, checked_power(p_, k - j)), integer_power(p_, j));
    }
    try {
      g = exact_divide(rest, integer_power(p_, k));
    } catch (const ArithmeticError&) {
      throw ArithmeticError("layer g_{" + std::to_string(n) + "," + std::to_string(k) +
                            "} is not integral for p = " + std::to_string(p_));
    }
  }
  return layers_.emplace(key, std::move(g)).first->second;
}

Decomposition g_decomposition(LayerCache& cache, unsigned long n, unsigned s) {
  if (n == 0) throw DomainError("decomposition needs n >= 1");
  Decomposition d{cache.f(), n, cache.p(), s, {}};
  for (unsigned k = 0; k <= s; ++k) d.layers.push_back(cache.layer(n, k));
  return d;
}

Decomposition g_decomposition(const LaurentPolynomial& f, unsigned long n, unsigned s,
                              unsigned long p, const DecompositionLimits& limits) {
  LayerCache cache(f, p, limits);
  return g_decomposition(cache, n, s);
}

LaurentPolynomial reconstruct(const Decomposition& d) {
  LaurentPolynomial sum(d.f.variables());
  for (unsigned k = 0; k <= d.s; ++k)
    sum = sum + scale(substitute_power(d.layers[k], checked_power(d.p, d.s - k)),
                      integer_power(d.p, k));
  return sum;
}

ReconstructionCheck check_reconstruction(LayerCache& cache, unsigned long n, unsigned s) {
  if (n == 0) throw DomainError("decomposition needs n >= 1");
  const unsigned long p = cache.p();
  const unsigned long e = n * checked_power(p, s);
  ReconstructionCheck out;
  try {
    const Decomposition d = g_decomposition(cache, n, s);
    const LaurentPolynomial& full = cache.power_of_f(e);
    out.largest_power_terms = full.size();
    out.holds = reconstruct(d) == full;
    return out;
  } catch (const ArithmeticError& ex) {
    out.note = ex.what();
    return out;
  } catch (const LimitExceeded& ex) {
    if (s == 0 || n == 1) throw;
    out.note = std::string(ex.what()) + "; top layer checked modulo p^s";
  }
  out.top_layer_modular = true;
  const CoefficientRing ring = CoefficientRing::modular(p, s);
  const LaurentPolynomial& base = cache.power_of_f(checked_power(p, s));
  out.largest_power_terms = base.size();
  const LaurentPolynomial left = power(base.reduced(ring), n);
  LaurentPolynomial right(cache.f().variables());
  try {
    for (unsigned k = 0; k < s; ++k)
      right = right + scale(substitute_power(cache.layer(n, k), checked_power(p, s - k)), integer_power(p, k));
  } catch (const ArithmeticError& ex) {
    out.note = ex.what();
    return out;
  }
  out.holds = left == right.reduced(ring);
  return out;
}

SplittingProfile SplittingProfile::slice(unsigned from, unsigned to) const {
  SplittingProfile out;
  out.a = from;
  out.b = to;
  out.exponent_shift = exponent_shift;
  out.indices.assign(indices.begin() + (from - a), indices.begin() + (to - a) + 1);
  out.digits.assign(digits.begin() + (from - a), digits.begin() + (to - a) + 1);
  return out;
}

void validate_profile(const SplittingProfile& pr, unsigned long p) {
  if (pr.a > pr.b) throw DomainError("profile needs a <= b");
  const std::size_t len = pr.b - pr.a + 1;
  if (pr.indices.size() != len || pr.digits.size() != len)
    throw DomainError("profile lengths do not match b - a + 1");
  if (pr.exponent_shift > 1) throw DomainError("exponent shift must be 0 or 1");
  for (unsigned k = pr.a; k <= pr.b; ++k) {
    if (pr.digit(k) >= p) throw DomainError("digit n_" + std::to_string(k) + " is not below p");
    if (pr.index(k) + pr.exponent_shift > k)
      throw DomainError("index i_" + std::to_string(k) + " = " + std::to_string(pr.index(k)) +
                        " exceeds k" + (pr.exponent_shift ? " - 1" : ""));
  }
}

Integer constant_term_product_G(LayerCache& cache, const SplittingProfile& pr) {
  validate_profile(pr, cache.p());
  std::vector<LaurentPolynomial> factors;
  for (unsigned k = pr.a; k <= pr.b; ++k) {
    const LaurentPolynomial& g = cache.layer(pr.digit(k), pr.index(k));
    if (g.is_zero()) return 0;
    const unsigned e = k - pr.exponent_shift - pr.index(k);
    factors.push_back(substitute_power(g, checked_power(cache.p(), e)));
  }
  return constant_term_of_product(factors);
}

Integer constant_term_product_G(const LaurentPolynomial& f, unsigned long p,
                                const SplittingProfile& profile) {
  LayerCache cache(f, p);
  return constant_term_product_G(cache, profile);
}

bool splits_at(LayerCache& cache, const SplittingProfile& pr, unsigned l) {
  validate_profile(pr, cache.p());
  if (l < pr.a || l > pr.b) throw DomainError("split position must lie in [a, b]");
  if (l == pr.a) return true;
  return constant_term_product_G(cache, pr) ==
         constant_term_product_G(cache, pr.slice(pr.a, l - 1)) *
             constant_term_product_G(cache, pr.slice(l, pr.b));
}

std::set<unsigned> splitting_indices(const std::vector<unsigned>& indices, unsigned a, unsigned b) {
  std::set<unsigned> out;
  if (indices.empty() || b < a) return out;
  if (indices.size() != b - a + 1) throw DomainError("index sequence length does not match b - a + 1");
  for (unsigned l = a + 1; l <= b; ++l) {
    bool ok = true;
    for (unsigned k = l; k <= b && ok; ++k) ok = indices[k - a] + l <= k;
    if (ok) out.insert(l);
  }
  return out;
}

std::pair<std::vector<unsigned>, std::vector<unsigned>>
exchange_tails(const std::vector<unsigned>& i, const std::vector<unsigned>& j, unsigned nu) {
  // i is indexed from 0, j from 1.
  if (nu < 1) throw DomainError("exchange position must be at least 1");
  if (nu > i.size() || nu > j.size() + 1)
    throw DomainError("exchange position lies beyond the sequences");
  std::vector<unsigned> i2(i.begin(), i.begin() + nu), j2(j.begin(), j.begin() + (nu - 1));
  i2.insert(i2.end(), j.begin() + (nu - 1), j.end());
  j2.insert(j2.end(), i.begin() + nu, i.end());
  return {i2, j2};
}

namespace {

unsigned total(const std::vector<unsigned>& v) {
  unsigned s = 0;
  for (auto x : v) s += x;
  return s;
}

std::set<unsigned> indices_of_j(const std::vector<unsigned>& j) {
  if (j.empty()) return {};
  return splitting_indices(j, 1, static_cast<unsigned>(j.size()));
}

} // namespace

std::pair<std::vector<unsigned>, std::vector<unsigned>>
transform_summand(const std::vector<unsigned>& i, const std::vector<unsigned>& j, unsigned nu,
                  unsigned s) {
  if (s < 1) throw DomainError("summand exchange needs s >= 1");
  if (i.size() != s + 1 || j.size() != s - 1)
    throw DomainError("expected I = (i_0..i_s) and J = (j_1..j_{s-1})");
  for (unsigned k = 0; k <= s; ++k)
    if (i[k] > k) throw DomainError("i_k must not exceed k");
  for (unsigned k = 1; k < s; ++k)
    if (j[k - 1] + 1 > k) throw DomainError("j_k must not exceed k - 1");
  if (total(i) + total(j) > s - 1) throw DomainError("sum of I and J exceeds s - 1");
  if (nu < 1 || nu > s) throw DomainError("nu must lie in [1, s]");
  const auto si = splitting_indices(i, 0, s);
  const auto sj = indices_of_j(j);
  if (!si.count(nu) || !(sj.count(nu) || nu == 1 || nu == s))
    throw DomainError("nu = " + std::to_string(nu) + " is not a common splitting position");
  return exchange_tails(i, j, nu);
}

namespace {

Integer product_over(LayerCache& cache, unsigned a, unsigned b, const std::vector<unsigned>& idx,
                     const std::vector<unsigned>& digits, unsigned shift) {
  if (b < a) return 1;
  SplittingProfile pr;
  pr.a = a;
  pr.b = b;
  pr.indices = idx;
  pr.digits.assign(digits.begin() + a, digits.begin() + b + 1);
  pr.exponent_shift = shift;
  return constant_term_product_G(cache, pr);
}

} // namespace

ExchangeCheck check_summand_exchange(LayerCache& cache, const std::vector<unsigned>& digits,
                                     const std::vector<unsigned>& i,
                                     const std::vector<unsigned>& j, unsigned nu, unsigned s) {
  if (digits.size() != s + 1) throw DomainError("expected digits n_0..n_s");
  auto [i2, j2] = transform_summand(i, j, nu, s);
  ExchangeCheck out;
  out.left = product_over(cache, 0, s, i, digits, 0) * product_over(cache, 1, s - 1, j, digits, 1);
  out.right = product_over(cache, 0, s - 1, i2, digits, 0) * product_over(cache, 1, s, j2, digits, 1);
  out.holds = out.left == out.right;
  return out;
}

ExchangeSweep sweep_summand_exchange(LayerCache& cache, unsigned s) {
  if (s < 1) throw DomainError("summand exchange needs s >= 1");
  const unsigned long p = cache.p();
  ExchangeSweep sweep;
  std::vector<unsigned> digits(s + 1, 0), i(s + 1, 0), j(s - 1, 0);
  // odometers over digits, I (i_k <= k) and J (j_k <= k - 1)
  auto next = [](std::vector<unsigned>& v, auto bound) {
    for (std::size_t q = 0; q < v.size(); ++q) {
      if (v[q] < bound(q)) {
        ++v[q];
        return true;
      }
      v[q] = 0;
    }
    return false;
  };
  do {
    std::fill(i.begin(), i.end(), 0);
    do {
      std::fill(j.begin(), j.end(), 0);
      do {
        if (total(i) + total(j) > s - 1) continue;
        const auto si = splitting_indices(i, 0, s);
        const auto sj = indices_of_j(j);
        for (unsigned nu = 1; nu <= s; ++nu) {
          if (!si.count(nu) || !(sj.count(nu) || nu == 1 || nu == s)) continue;
          ++sweep.instances;
          if (!check_summand_exchange(cache, digits, i, j, nu, s).holds) {
            ++sweep.failures;
            if (!sweep.first_failure) sweep.first_failure = std::make_pair(i, j);
          }
        }
      } while (next(j, [](std::size_t q) { return static_cast<unsigned>(q); }));
    } while (next(i, [](std::size_t q) { return static_cast<unsigned>(q); }));
  } while (next(digits, [p](std::size_t) { return static_cast<unsigned>(p - 1); }));
  return sweep;
}

std::string to_string(SplittingLemma l) {
  switch (l) {
  case SplittingLemma::existence: return "existence";
  case SplittingLemma::multiplicity: return "multiplicity";
  case SplittingLemma::common_left: return "common-left";
  case SplittingLemma::common_right: return "common-right";
  }
  return "unknown";
}

bool lemma_existence_holds(const std::vector<unsigned>& i, unsigned a, unsigned b) {
  if (total(i) + 1 > b - a) return true;
  return !splitting_indices(i, a, b).empty();
}

bool lemma_multiplicity_holds(const std::vector<unsigned>& i, unsigned a, unsigned b) {
  if (total(i) + 1 > b - a) return true;
  const unsigned m = b - a - total(i);
  return splitting_indices(i, a, b).size() >= m;
}

bool lemma_common_left_holds(const std::vector<unsigned>& i, const std::vector<unsigned>& j,
                             unsigned s) {
  if (total(i) + total(j) + 1 > s) return true;
  auto si = splitting_indices(i, 0, s);
  auto sj = indices_of_j(j);
  sj.insert(1);
  sj.insert(s);
  for (auto x : si)
    if (sj.count(x)) return true;
  return false;
}

bool lemma_common_right_holds(const std::vector<unsigned>& i, const std::vector<unsigned>& j,
                              unsigned s) {
  if (total(i) + total(j) + 1 > s) return true;
  auto si = splitting_indices(i, 0, s - 1);
  si.insert(s);
  auto sj = indices_of_j(j);
  sj.insert(1);
  for (auto x : si)
    if (sj.count(x)) return true;
  return false;
}

namespace {

// Mostly small entries, occasionally anything up to the cap.
unsigned draw_entry(std::mt19937_64& rng, unsigned cap) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = u(rng);
  unsigned v;
  if (r < 0.55)
    v = 0;
  else if (r < 0.8)
    v = 1;
  else
    v = std::uniform_int_distribution<unsigned>(0, cap)(rng);
  return std::min(v, cap);
}

struct TrialResult {
  bool holds = true;
  std::uint64_t rejected = 0;
  LemmaCounterexample instance;
};

TrialResult run_trial(SplittingLemma lemma, std::uint64_t seed, std::uint64_t t, unsigned max_s) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(lemma), static_cast<std::uint32_t>(t),
                    static_cast<std::uint32_t>(t >> 32)};
  std::mt19937_64 rng(seq);
  TrialResult r;
  while (true) {
    LemmaCounterexample& x = r.instance;
    x.i.clear();
    x.j.clear();
    if (lemma == SplittingLemma::existence || lemma == SplittingLemma::multiplicity) {
      x.a = std::uniform_int_distribution<unsigned>(0, 3)(rng);
      x.b = x.a + std::uniform_int_distribution<unsigned>(1, max_s)(rng);
      for (unsigned k = x.a; k <= x.b; ++k) x.i.push_back(draw_entry(rng, k));
      if (total(x.i) + 1 > x.b - x.a) {
        ++r.rejected;
        continue;
      }
      r.holds = lemma == SplittingLemma::existence ? lemma_existence_holds(x.i, x.a, x.b)
                                                   : lemma_multiplicity_holds(x.i, x.a, x.b);
      return r;
    }
    const unsigned s = std::uniform_int_distribution<unsigned>(1, max_s)(rng);
    x.a = 0;
    x.b = s;
    const bool left = lemma == SplittingLemma::common_left;
    const unsigned i_top = left ? s : s - 1;
    const unsigned j_top = left ? s - 1 : s;
    for (unsigned k = 0; k <= i_top; ++k) x.i.push_back(draw_entry(rng, k));
    for (unsigned k = 1; k <= j_top; ++k) x.j.push_back(draw_entry(rng, k));
    if (total(x.i) + total(x.j) + 1 > s) {
      ++r.rejected;
      continue;
    }
    r.holds = left ? lemma_common_left_holds(x.i, x.j, s) : lemma_common_right_holds(x.i, x.j, s);
    return r;
  }
}

} // namespace

LemmaReport verify_splitting_lemma(SplittingLemma lemma, std::uint64_t trials, std::uint64_t seed,
                                   unsigned max_s, unsigned threads) {
  if (max_s < 1) throw DomainError("max_s must be at least 1");
  threads = std::max(1u, threads);
  std::vector<TrialResult> results(trials);
  auto work = [&](unsigned shard) {
    for (std::uint64_t t = shard; t < trials; t += threads) results[t] = run_trial(lemma, seed, t, max_s);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  LemmaReport report;
  report.lemma = lemma;
  report.trials = trials;
  for (auto& r : results) {
    report.rejected += r.rejected;
    if (!r.holds) {
      ++report.counterexamples;
      if (report.examples.size() < 10) report.examples.push_back(std::move(r.instance));
    }
  }
  return report;
}

} // namespace dworklab
