#include "dworklab/dwork.hpp"

#include <limits>

#include "dworklab/error.hpp"

namespace dworklab {

std::string to_string(CongruenceKind k) {
  switch (k) {
  case CongruenceKind::d1: return "d1";
  case CongruenceKind::d3: return "d3";
  case CongruenceKind::digit: return "digit";
  case CongruenceKind::theorem41: return "theorem41";
  case CongruenceKind::covering: return "covering";
  }
  return "unknown";
}

std::string to_string(ReportStatus s) {
  switch (s) {
  case ReportStatus::pass: return "pass";
  case ReportStatus::fail: return "fail";
  case ReportStatus::partial: return "partial";
  }
  return "unknown";
}

namespace {

constexpr unsigned unlimited_precision = std::numeric_limits<unsigned>::max();

void require_prime(unsigned long p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
}

// Exponent t such that the stored values are known modulo p^t.
unsigned precision_for(const PeriodSequence& a, unsigned long p) {
  if (a.ring.is_exact()) return unlimited_precision;
  if (a.ring.prime() != p)
    throw DomainError("sequence is reduced modulo " + a.ring.describe() +
                      ", which says nothing modulo " + std::to_string(p));
  return a.ring.exponent();
}

void require_length(const PeriodSequence& a, std::uint64_t max_index) {
  if (a.values.empty() || a.max_index() < max_index)
    throw DomainError("insufficient sequence length: index " + std::to_string(max_index) +
                      " needed, " + std::to_string(a.values.size()) + " values available");
}

// p^e, saturated at the uint64 maximum.
std::uint64_t power_or_max(unsigned long p, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / p) return std::numeric_limits<std::uint64_t>::max();
    r *= p;
  }
  return r;
}

Integer integer_power(unsigned long p, unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

Integer product(const PeriodSequence& a, const std::vector<std::uint64_t>& indices) {
  Integer r = 1;
  for (auto i : indices) r *= a.at(static_cast<std::size_t>(i));
  return r;
}

bool congruent(const Integer& x, const Integer& y, const Integer& modulus) {
  Integer d = x - y;
  return mpz_divisible_p(d.get_mpz_t(), modulus.get_mpz_t()) != 0;
}

class Recorder {
public:
  Recorder(DworkReport& r, const CheckOptions& o) : report_(r), options_(o) {}

  // Compares the two products and records a witness on mismatch.
  void compare(const PeriodSequence& a, Witness w) {
    ++report_.instances;
    w.left = product(a, w.left_indices);
    w.right = product(a, w.right_indices);
    if (congruent(w.left, w.right, w.modulus)) return;
    violation(std::move(w));
  }

  void violation(Witness w) {
    ++report_.violations;
    if (report_.witnesses.size() < options_.max_witnesses) report_.witnesses.push_back(std::move(w));
  }

  void finish() {
    if (report_.violations > 0)
      report_.status = ReportStatus::fail;
    else if (!report_.skipped_levels.empty())
      report_.status = ReportStatus::partial;
    else
      report_.status = ReportStatus::pass;
  }

private:
  DworkReport& report_;
  const CheckOptions& options_;
};

unsigned long valuation(const Integer& x, unsigned long p) {
  Integer rest;
  Integer prime(p);
  return mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t());
}

} // namespace

DworkReport check_D1(const PeriodSequence& a, unsigned long p, std::uint64_t max_n,
                     const CheckOptions& options) {
  require_prime(p);
  if (!a.ring.is_exact()) throw DomainError("D1 needs exact sequence values, not residues");
  require_length(a, max_n);
  DworkReport report;
  report.kind = CongruenceKind::d1;
  report.p = p;
  report.max_n = max_n;
  Recorder rec(report, options);
  for (std::uint64_t n = 0; n <= max_n; ++n) {
    const std::uint64_t q = n / p;
    const Integer& num = a.values[n];
    const Integer& den = a.values[q];
    ++report.instances;
    if (sgn(den) == 0) {
      if (sgn(num) != 0) report.undefined_cases.push_back(n);
      continue;
    }
    if (sgn(num) == 0) continue;
    if (valuation(num, p) < valuation(den, p)) {
      Witness w;
      w.n = n;
      w.parameters = {{"n", n}, {"floor_n_over_p", q}};
      w.left_indices = {n};
      w.right_indices = {q};
      w.left = num;
      w.right = den;
      w.modulus = p;
      rec.violation(std::move(w));
    }
  }
  rec.finish();
  return report;
}

DworkReport check_D3(const PeriodSequence& a, unsigned long p, unsigned s_max,
                     std::uint64_t max_n, const CheckOptions& options) {
  require_prime(p);
  require_length(a, max_n);
  const unsigned precision = precision_for(a, p);
  DworkReport report;
  report.kind = CongruenceKind::d3;
  report.p = p;
  report.s = s_max;
  report.max_n = max_n;
  Recorder rec(report, options);
  for (unsigned s = 0; s <= s_max; ++s) {
    if (precision < s + 1) {
      report.skipped_levels.push_back(s);
      continue;
    }
    const std::uint64_t big = power_or_max(p, s + 1), small = power_or_max(p, s);
    const Integer modulus = integer_power(p, s + 1);
    for (std::uint64_t n = 0; n < big && n <= max_n; ++n) {
      for (std::uint64_t m = 1; m <= (max_n - n) / big; ++m) {
        Witness w;
        w.n = n + m * big;
        w.parameters = {{"n", n}, {"m", m}, {"s", s}};
        w.left_indices = {n + m * big, n / p};
        w.right_indices = {n, n / p + m * small};
        w.modulus = modulus;
        rec.compare(a, std::move(w));
      }
    }
  }
  rec.finish();
  return report;
}

DworkReport check_digit_product(const PeriodSequence& a, unsigned long p, std::uint64_t max_n,
                                const CheckOptions& options) {
  require_prime(p);
  require_length(a, max_n);
  precision_for(a, p);
  DworkReport report;
  report.kind = CongruenceKind::digit;
  report.p = p;
  report.max_n = max_n;
  Recorder rec(report, options);
  for (std::uint64_t n = 0; n <= max_n; ++n) {
    Witness w;
    w.n = n;
    w.parameters = {{"n", n}};
    w.left_indices = {n};
    std::uint64_t rest = n;
    do {
      w.right_indices.push_back(rest % p);
      rest /= p;
    } while (rest > 0);
    w.modulus = p;
    rec.compare(a, std::move(w));
  }
  rec.finish();
  return report;
}

std::uint64_t digit_block_reach(unsigned long p, unsigned s, std::uint64_t digit_bound,
                                std::uint64_t k) {
  const std::uint64_t ps = power_or_max(p, s);
  return k * ((ps - 1) + digit_bound * ps);
}

namespace {

DworkReport digit_blocks(const PeriodSequence& a, std::uint64_t k, unsigned long p, unsigned s,
                         std::uint64_t digit_bound, const CheckOptions& options,
                         CongruenceKind kind) {
  require_prime(p);
  if (s == 0) throw DomainError("the digit block congruence needs s >= 1");
  if (k == 0) throw DomainError("covering index must be at least 1");
  const std::uint64_t ps = power_or_max(p, s);
  if (ps == std::numeric_limits<std::uint64_t>::max()) throw DomainError("p^s is too large");
  require_length(a, digit_block_reach(p, s, digit_bound, k));
  const unsigned precision = precision_for(a, p);
  DworkReport report;
  report.kind = kind;
  report.p = p;
  report.s = s;
  report.k = k;
  report.digit_bound = digit_bound;
  report.max_n = digit_block_reach(p, s, digit_bound, k);
  if (kind == CongruenceKind::covering && k % p == 0)
    report.notes.push_back("p divides the covering index; the congruence is an experiment here");
  Recorder rec(report, options);
  if (precision < s) {
    report.skipped_levels.push_back(s);
    rec.finish();
    return report;
  }
  const Integer modulus = integer_power(p, s);
  std::vector<std::uint64_t> digits(s + 1);
  const std::uint64_t count = ps * (digit_bound + 1);
  for (std::uint64_t t = 0; t < count; ++t) {
    std::uint64_t rest = t;
    for (unsigned i = 0; i < s; ++i) {
      digits[i] = rest % p;
      rest /= p;
    }
    digits[s] = rest;
    // block(i, j) = n_i + n_{i+1} p + ... + n_j p^{j-i}
    auto block = [&](unsigned i, unsigned j) {
      std::uint64_t v = 0;
      for (unsigned q = j + 1; q-- > i;) v = v * p + digits[q];
      return i > j ? 0 : v;
    };
    const std::uint64_t full = block(0, s);
    const std::uint64_t inner = s >= 2 ? block(1, s - 1) : 0;
    const std::uint64_t head = block(0, s - 1);
    const std::uint64_t tail = block(1, s);
    Witness w;
    w.n = k * full;
    for (unsigned i = 0; i <= s; ++i) w.parameters.emplace_back("n" + std::to_string(i), digits[i]);
    w.left_indices = {k * full, k * inner};
    w.right_indices = {k * head, k * tail};
    w.modulus = modulus;
    rec.compare(a, std::move(w));
  }
  rec.finish();
  return report;
}

} // namespace

DworkReport check_digit_block_congruence(const PeriodSequence& a, unsigned long p, unsigned s,
                                         std::uint64_t digit_bound, const CheckOptions& options) {
  return digit_blocks(a, 1, p, s, digit_bound, options, CongruenceKind::theorem41);
}

DworkReport check_covering_congruence(const PeriodSequence& a, std::uint64_t k, unsigned long p,
                                      unsigned s, std::uint64_t digit_bound,
                                      const CheckOptions& options) {
  return digit_blocks(a, k, p, s, digit_bound, options, CongruenceKind::covering);
}

bool replay_witness(const PeriodSequence& a, CongruenceKind kind, const Witness& w,
                    unsigned long p) {
  Integer left = product(a, w.left_indices), right = product(a, w.right_indices);
  if (left != w.left || right != w.right) return false;
  if (kind == CongruenceKind::d1)
    return sgn(right) != 0 && sgn(left) != 0 && valuation(left, p) < valuation(right, p);
  return !congruent(left, right, w.modulus);
}

} // namespace dworklab
