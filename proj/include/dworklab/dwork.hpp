#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dworklab/period.hpp"

namespace dworklab {

enum class CongruenceKind { d1, d3, digit, theorem41, covering };
enum class ReportStatus { pass, fail, partial };

std::string to_string(CongruenceKind k);
std::string to_string(ReportStatus s);

// One violated instance. left = prod a(left_indices), right = prod
// a(right_indices), both as stored in the sequence; the congruence asked for
// left == right mod `modulus`. For D1 the pair is (a(n), a(n div p)) and the
// failure is val_p(left) < val_p(right).
struct Witness {
  std::uint64_t n = 0;
  std::vector<std::pair<std::string, std::uint64_t>> parameters;
  std::vector<std::uint64_t> left_indices;
  std::vector<std::uint64_t> right_indices;
  Integer left;
  Integer right;
  Integer modulus;
};

struct DworkReport {
  CongruenceKind kind = CongruenceKind::d3;
  unsigned long p = 0;
  unsigned s = 0;
  std::uint64_t max_n = 0;
  std::uint64_t digit_bound = 0;
  std::uint64_t k = 1;
  ReportStatus status = ReportStatus::pass;
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  std::vector<Witness> witnesses;
  // D1: indices n with a(n div p) = 0 != a(n).
  std::vector<std::uint64_t> undefined_cases;
  // Levels not checked because the sequence precision is too low.
  std::vector<unsigned> skipped_levels;
  std::vector<std::string> notes;
};

struct CheckOptions {
  std::size_t max_witnesses = 10;
};

// val_p(a(n)) >= val_p(a(n div p)) for n <= max_n. Needs exact values.
DworkReport check_D1(const PeriodSequence& a, unsigned long p, std::uint64_t max_n,
                     const CheckOptions& options = {});

// a(n + m p^{s+1}) a(n div p) == a(n) a(n div p + m p^s) mod p^{s+1} for all
// s <= s_max, n < p^{s+1}, m >= 1, n + m p^{s+1} <= max_n.
DworkReport check_D3(const PeriodSequence& a, unsigned long p, unsigned s_max,
                     std::uint64_t max_n, const CheckOptions& options = {});

// a(n) == prod over base-p digits d of n of a(d), mod p, for n <= max_n.
DworkReport check_digit_product(const PeriodSequence& a, unsigned long p, std::uint64_t max_n,
                                const CheckOptions& options = {});

// a(N_0^s) a(N_1^{s-1}) == a(N_0^{s-1}) a(N_1^s) mod p^s, where
// N_i^j = n_i + n_{i+1} p + ... + n_j p^{j-i} (0 when i > j), digits
// n_0..n_{s-1} in [0, p-1] and n_s in [0, digit_bound]. Requires s >= 1.
DworkReport check_digit_block_congruence(const PeriodSequence& a, unsigned long p, unsigned s,
                                         std::uint64_t digit_bound,
                                         const CheckOptions& options = {});

// The same congruence with every index multiplied by the covering index k.
DworkReport check_covering_congruence(const PeriodSequence& a, std::uint64_t k, unsigned long p,
                                      unsigned s, std::uint64_t digit_bound,
                                      const CheckOptions& options = {});

// Largest index the digit block check reads.
std::uint64_t digit_block_reach(unsigned long p, unsigned s, std::uint64_t digit_bound,
                                std::uint64_t k = 1);

// Recomputes a witness from the sequence; true when it still violates.
bool replay_witness(const PeriodSequence& a, CongruenceKind kind, const Witness& w,
                    unsigned long p);

} // namespace dworklab
