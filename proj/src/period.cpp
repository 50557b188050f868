#include "dworklab/period.hpp"

#include <algorithm>
#include <climits>
#include <unordered_map>

#include "dworklab/error.hpp"
#include "dworklab/geometry.hpp"
#include "dworklab/text_format.hpp"
#include "packed_convert.hpp"

namespace dworklab {

std::string to_string(PeriodMethod m) {
  switch (m) {
  case PeriodMethod::pruned: return "pruned";
  case PeriodMethod::multinomial: return "multinomial";
  case PeriodMethod::closed_form: return "closed-form";
  }
  return "unknown";
}

const Integer& PeriodSequence::at(std::size_t n) const {
  if (n >= values.size())
    throw DomainError("period sequence has no value at index " + std::to_string(n) +
                      " (computed through " + std::to_string(values.size()) + " values)");
  return values[n];
}

namespace {

using detail::Key;
using detail::Packing;
using detail::PackedPoly;

struct KeyHash {
  std::size_t operator()(Key k) const noexcept {
    std::uint64_t lo = static_cast<std::uint64_t>(k), hi = static_cast<std::uint64_t>(k >> 64);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x632BE59BD9B4E019ull + (lo << 6));
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

void require_exact(const LaurentPolynomial& f) {
  if (!f.ring().is_exact()) throw DomainError("period computation needs integer coefficients");
}

// Sequences of polynomials that are constant or have no variables.
std::optional<std::vector<Integer>> degenerate_sequence(const LaurentPolynomial& f,
                                                        std::size_t max_n,
                                                        const CoefficientRing& ring) {
  if (f.nvars() != 0 && !f.is_zero()) return std::nullopt;
  Integer c = f.constant_term(), acc = 1;
  std::vector<Integer> out;
  for (std::size_t n = 0; n <= max_n; ++n) {
    out.push_back(ring.reduce(acc));
    acc *= c;
  }
  return out;
}

// Smallest integer b with gauge(-v) <= b, or INT_MAX when -v is outside the
// cone of the columns.
class ReturnBudget {
public:
  ReturnBudget(const LaurentPolynomial& f, const Packing& packing)
      : packing_(packing), buffer_(f.nvars()), oracle_(negated_matrix(f), false) {}

  int operator()(Key key) {
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    packing_.unpack(key, buffer_);
    auto g = oracle_.gauge(std::span<const std::int32_t>(buffer_));
    int b = INT_MAX;
    if (g) {
      Integer c;
      mpz_cdiv_q(c.get_mpz_t(), g->get_num_mpz_t(), g->get_den_mpz_t());
      b = c.fits_sint_p() ? static_cast<int>(c.get_si()) : INT_MAX;
    }
    memo_.emplace(key, b);
    return b;
  }

private:
  static ExponentMatrix negated_matrix(const LaurentPolynomial& f) {
    std::vector<ExponentVector> cols;
    for (std::size_t i = 0; i < f.size(); ++i) cols.push_back(ExponentVector(f.exponents(i)).negated());
    return ExponentMatrix(f.nvars(), std::move(cols));
  }

  const Packing& packing_;
  std::vector<std::int32_t> buffer_;
  GaugeOracle oracle_;
  std::unordered_map<Key, int, KeyHash> memo_;
};

template <class Arith>
std::vector<Integer> pruned_loop(const PackedPoly<typename Arith::value_type>& fp,
                                 const std::vector<Key>& deltas, const Packing& packing,
                                 ReturnBudget& budget, std::size_t max_n, const Arith& arith,
                                 typename Arith::value_type one, const PeriodLimits& limits) {
  using Value = typename Arith::value_type;
  auto to_integer = [](const Value& v) {
    if constexpr (std::is_same_v<Value, mpz_class>)
      return Integer(v);
    else
      return Integer(std::to_string(v));
  };
  const Key origin = packing.zero_key();
  PackedPoly<Value> current;
  current.keys.push_back(origin);
  current.coeffs.push_back(one);
  std::vector<Integer> values{to_integer(one)};
  for (std::size_t i = 1; i <= max_n; ++i) {
    const int remaining = static_cast<int>(max_n - i);
    current = detail::merge_multiply(current, fp, deltas, arith,
                                     [&](Key k) { return budget(k) <= remaining; });
    if (current.size() > limits.max_terms)
      throw LimitExceeded("pruned product exceeded " + std::to_string(limits.max_terms) +
                          " terms at n = " + std::to_string(i));
    auto it = std::lower_bound(current.keys.begin(), current.keys.end(), origin);
    if (it != current.keys.end() && *it == origin)
      values.push_back(to_integer(current.coeffs[static_cast<std::size_t>(it - current.keys.begin())]));
    else
      values.push_back(0);
  }
  return values;
}

} // namespace

PeriodSequence period_coefficients_pruned(const LaurentPolynomial& f, std::size_t max_n,
                                          const CoefficientRing& ring,
                                          const PeriodLimits& limits) {
  require_exact(f);
  PeriodSequence out;
  out.method = PeriodMethod::pruned;
  out.ring = ring;
  out.source = format_polynomial(f);
  if (auto d = degenerate_sequence(f, max_n, ring)) {
    out.values = std::move(*d);
    return out;
  }

  const std::int64_t reach =
      std::max<std::int64_t>(1, f.max_abs_exponent()) * static_cast<std::int64_t>(std::max<std::size_t>(max_n, 1));
  auto packing = Packing::for_range(f.nvars(), reach);
  if (!packing)
    throw LimitExceeded("exponents up to " + std::to_string(reach) + " in " +
                        std::to_string(f.nvars()) + " variables do not fit the packed kernel");
  ReturnBudget budget(f, *packing);
  // Coefficients may vanish in a modular ring; multiply by the reduced support.
  const LaurentPolynomial fr = f.reduced(ring);
  if (fr.is_zero()) {
    out.values.assign(max_n + 1, 0);
    out.values[0] = ring.reduce(1);
    return out;
  }
  const std::vector<Key> deltas = detail::shifts_of(fr, *packing);

  if (!ring.is_exact() && ring.modulus() <= Integer(4294967296ul)) {
    const std::uint64_t m = ring.modulus().get_ui();
    PackedPoly<std::uint64_t> fp;
    for (std::size_t i = 0; i < fr.size(); ++i) {
      fp.keys.push_back(packing->pack(fr.exponents(i)));
      fp.coeffs.push_back(fr.coeff(i).get_ui());
    }
    out.values = pruned_loop(fp, deltas, *packing, budget, max_n, detail::WordArith{m},
                             std::uint64_t{1} % m, limits);
    return out;
  }
  out.values = pruned_loop(detail::to_packed(fr, *packing), deltas, *packing, budget, max_n,
                           detail::BigArith{ring.is_exact() ? nullptr : &ring.modulus()},
                           ring.reduce(1), limits);
  return out;
}

namespace {

class MultinomialSearch {
public:
  MultinomialSearch(const LaurentPolynomial& f, std::size_t max_n, const PeriodLimits& limits)
      : max_n_(static_cast<std::int64_t>(max_n)), limits_(limits) {
    const ExponentMatrix a = ExponentMatrix::of(f);
    select_rows(a);
    order_columns(a, f);
    collect_dual_bounds();
    factorial_.resize(max_n + 1);
    factorial_[0] = 1;
    for (std::size_t i = 1; i <= max_n; ++i) factorial_[i] = factorial_[i - 1] * static_cast<unsigned long>(i);
    values_.assign(max_n + 1, 0);
  }

  std::vector<Integer> run() {
    ell_.assign(m_, 0);
    u_.assign(r_, 0);
    visit(0, 0);
    return values_;
  }

private:
  // Rows forming a basis of the row space; A ell = 0 iff these rows vanish.
  void select_rows(const ExponentMatrix& a) {
    std::vector<std::vector<Rational>> chosen;
    for (std::size_t i = 0; i < a.n(); ++i) {
      std::vector<Rational> row(a.m());
      for (std::size_t j = 0; j < a.m(); ++j) row[j] = a.entry(i, j);
      chosen.push_back(row);
      if (rational_rank(chosen) == chosen.size())
        rows_.push_back(i);
      else
        chosen.pop_back();
    }
    r_ = rows_.size();
    m_ = a.m();
  }

  // Prefix columns are enumerated; the last r columns are independent and
  // solved for directly.
  void order_columns(const ExponentMatrix& a, const LaurentPolynomial& f) {
    std::vector<std::vector<std::int64_t>> cols(m_, std::vector<std::int64_t>(r_));
    for (std::size_t j = 0; j < m_; ++j)
      for (std::size_t k = 0; k < r_; ++k) cols[j][k] = a.entry(rows_[k], j);
    std::vector<std::size_t> basis, prefix;
    std::vector<std::vector<Rational>> chosen;
    for (std::size_t j = m_; j-- > 0;) {
      if (basis.size() < r_) {
        std::vector<std::vector<Rational>> trial = chosen;
        trial.emplace_back(cols[j].begin(), cols[j].end());
        if (rational_rank(trial) == trial.size()) {
          chosen = std::move(trial);
          basis.push_back(j);
          continue;
        }
      }
      prefix.push_back(j);
    }
    std::reverse(prefix.begin(), prefix.end());
    std::reverse(basis.begin(), basis.end());
    order_ = prefix;
    order_.insert(order_.end(), basis.begin(), basis.end());
    prefix_len_ = prefix.size();
    for (std::size_t j : order_) {
      columns_.push_back(cols[j]);
      coeffs_.push_back(f.coeff(j));
    }
    unit_coeffs_ = std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c == 1; });

    // adjugate and determinant of the basis block
    std::vector<std::vector<Rational>> m(r_, std::vector<Rational>(2 * r_));
    for (std::size_t i = 0; i < r_; ++i) {
      for (std::size_t k = 0; k < r_; ++k) m[i][k] = columns_[prefix_len_ + k][i];
      m[i][r_ + i] = 1;
    }
    Rational det = 1;
    for (std::size_t c = 0; c < r_; ++c) {
      std::size_t p = c;
      while (sgn(m[p][c]) == 0) ++p;
      if (p != c) {
        std::swap(m[p], m[c]);
        det = -det;
      }
      det *= m[c][c];
      Rational inv = 1 / m[c][c];
      for (auto& v : m[c]) v *= inv;
      for (std::size_t i = 0; i < r_; ++i) {
        if (i == c || sgn(m[i][c]) == 0) continue;
        Rational fac = m[i][c];
        for (std::size_t j = 0; j < 2 * r_; ++j) m[i][j] -= fac * m[c][j];
      }
    }
    det_ = det.get_num().get_si();
    adj_.assign(r_ * r_, 0);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < r_; ++k) {
        Rational e = m[i][r_ + k] * det;
        adj_[i * r_ + k] = e.get_num().get_si();
      }
  }

  // Dual bounds from gauge programs on a grid of probe vectors.
  void collect_dual_bounds() {
    if (r_ == 0) return;
    std::vector<ExponentVector> cols;
    for (const auto& c : columns_) {
      ExponentVector v(r_);
      for (std::size_t k = 0; k < r_; ++k) v[k] = static_cast<std::int32_t>(c[k]);
      cols.push_back(std::move(v));
    }
    GaugeOracle oracle(ExponentMatrix(r_, cols), false);
    const int radius = r_ <= 5 ? 2 : 1;
    ExponentVector v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = -radius;
    while (true) {
      oracle.gauge(v);
      bool done = true;
      for (std::size_t i = r_; i-- > 0;) {
        if (v[i] < radius) {
          ++v[i];
          done = false;
          break;
        }
        v[i] = -radius;
      }
      if (done) break;
    }
    for (const auto& c : cols) oracle.gauge(c.negated());
    duals_ = oracle.dual_bounds();
  }

  // Some y with y.a_j <= 1 for all j certifies that -u is not a sum of
  // `budget` columns.
  bool hopeless(std::int64_t budget) const {
    for (const auto& d : duals_) {
      std::int64_t dot = 0;
      for (std::size_t k = 0; k < r_; ++k) dot -= d.numerator[k] * u_[k];
      if (dot > budget * d.denominator) return true;
    }
    return false;
  }

  void visit(std::size_t j, std::int64_t used) {
    if (++nodes_ > limits_.max_nodes)
      throw LimitExceeded("multinomial enumeration exceeded " + std::to_string(limits_.max_nodes) +
                          " nodes");
    if (hopeless(max_n_ - used)) return;
    if (j == prefix_len_) {
      finish(used);
      return;
    }
    const auto& col = columns_[j];
    for (std::int64_t x = 0; used + x <= max_n_; ++x) {
      ell_[j] = x;
      visit(j + 1, used + x);
      for (std::size_t k = 0; k < r_; ++k) u_[k] += col[k];
    }
    for (std::size_t k = 0; k < r_; ++k) u_[k] -= col[k] * (max_n_ - used + 1);
    ell_[j] = 0;
  }

  void finish(std::int64_t used) {
    std::int64_t total = used;
    for (std::size_t i = 0; i < r_; ++i) {
      std::int64_t z = 0;
      for (std::size_t k = 0; k < r_; ++k) z -= adj_[i * r_ + k] * u_[k];
      if (z % det_ != 0) return;
      z /= det_;
      if (z < 0) return;
      ell_[prefix_len_ + i] = z;
      total += z;
      if (total > max_n_) return;
    }
    Integer term = factorial_[static_cast<std::size_t>(total)];
    for (std::size_t j = 0; j < m_; ++j)
      if (ell_[j] > 1) mpz_divexact(term.get_mpz_t(), term.get_mpz_t(),
                                    factorial_[static_cast<std::size_t>(ell_[j])].get_mpz_t());
    if (!unit_coeffs_)
      for (std::size_t j = 0; j < m_; ++j) {
        if (ell_[j] == 0) continue;
        Integer cp;
        mpz_pow_ui(cp.get_mpz_t(), coeffs_[j].get_mpz_t(), static_cast<unsigned long>(ell_[j]));
        term *= cp;
      }
    values_[static_cast<std::size_t>(total)] += term;
  }

  std::int64_t max_n_;
  PeriodLimits limits_;
  std::vector<std::size_t> rows_;
  std::size_t r_ = 0, m_ = 0, prefix_len_ = 0;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::int64_t>> columns_;
  std::vector<Integer> coeffs_;
  bool unit_coeffs_ = true;
  std::int64_t det_ = 1;
  std::vector<std::int64_t> adj_;
  std::vector<GaugeOracle::DualBound> duals_;
  std::vector<Integer> factorial_;
  std::vector<Integer> values_;
  std::vector<std::int64_t> ell_;
  std::vector<std::int64_t> u_;
  unsigned long long nodes_ = 0;
};

} // namespace

PeriodSequence period_coefficients_multinomial(const LaurentPolynomial& f, std::size_t max_n,
                                               const PeriodLimits& limits) {
  require_exact(f);
  PeriodSequence out;
  out.method = PeriodMethod::multinomial;
  out.source = format_polynomial(f);
  if (auto d = degenerate_sequence(f, max_n, CoefficientRing::exact())) {
    out.values = std::move(*d);
    return out;
  }
  out.values = MultinomialSearch(f, max_n, limits).run();
  return out;
}

std::vector<Integer> theta_product(const Integer& coefficient,
                                   const std::vector<std::vector<long>>& factors) {
  std::vector<Integer> q{coefficient};
  for (const auto& factor : factors) {
    std::vector<Integer> next(q.size() + factor.size() - 1, 0);
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < factor.size(); ++j) next[i + j] += q[i] * factor[j];
    q = std::move(next);
  }
  return q;
}

Integer evaluate_theta_polynomial(const std::vector<Integer>& q, const Integer& x) {
  Integer acc = 0;
  for (std::size_t i = q.size(); i-- > 0;) acc = acc * x + q[i];
  return acc;
}

std::vector<Integer> apply_theta_operator(const ThetaOperator& op, const PeriodSequence& b,
                                          std::size_t order) {
  if (b.size() <= order)
    throw DomainError("sequence has " + std::to_string(b.size()) + " values; order " +
                      std::to_string(order) + " needs " + std::to_string(order + 1));
  std::vector<Integer> residual(order + 1, 0);
  for (std::size_t n = 0; n <= order; ++n)
    for (const auto& [j, q] : op.terms) {
      if (j > n) continue;
      residual[n] += evaluate_theta_polynomial(q, Integer(static_cast<unsigned long>(n - j))) *
                     b.values[n - j];
    }
  return residual;
}

} // namespace dworklab
