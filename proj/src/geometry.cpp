#include "dworklab/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_map>

#include "dworklab/error.hpp"

namespace dworklab {

ExponentMatrix::ExponentMatrix(std::size_t n, std::vector<ExponentVector> columns)
    : n_(n), columns_(std::move(columns)) {
  if (n_ == 0) throw DomainError("exponent matrix needs at least one row");
  if (columns_.empty()) throw DomainError("exponent matrix needs at least one column");
  for (const auto& c : columns_)
    if (c.size() != n_) throw DomainError("exponent column has the wrong length");
  std::vector<ExponentVector> sorted = columns_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("exponent columns must be pairwise distinct");
}

ExponentMatrix ExponentMatrix::of(const LaurentPolynomial& f) {
  std::vector<ExponentVector> cols;
  cols.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) cols.emplace_back(f.exponents(i));
  return ExponentMatrix(f.nvars(), std::move(cols));
}

std::vector<std::int64_t> ExponentMatrix::apply(std::span<const std::int64_t> l) const {
  if (l.size() != m()) throw DomainError("tuple length does not match column count");
  std::vector<std::int64_t> out(n_, 0);
  for (std::size_t j = 0; j < m(); ++j)
    for (std::size_t i = 0; i < n_; ++i) out[i] += std::int64_t{columns_[j][i]} * l[j];
  return out;
}

std::vector<Integer> ExponentMatrix::apply(std::span<const Integer> l) const {
  if (l.size() != m()) throw DomainError("tuple length does not match column count");
  std::vector<Integer> out(n_, 0);
  for (std::size_t j = 0; j < m(); ++j)
    for (std::size_t i = 0; i < n_; ++i) out[i] += Integer(columns_[j][i]) * l[j];
  return out;
}

std::size_t ExponentMatrix::rank() const {
  std::vector<std::vector<Rational>> rows(n_, std::vector<Rational>(m()));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < m(); ++j) rows[i][j] = columns_[j][i];
  return rational_rank(std::move(rows));
}

ExponentVector ExponentMatrix::box_min() const {
  ExponentVector lo = columns_.front();
  for (const auto& c : columns_)
    for (std::size_t i = 0; i < n_; ++i) lo[i] = std::min(lo[i], c[i]);
  return lo;
}

ExponentVector ExponentMatrix::box_max() const {
  ExponentVector hi = columns_.front();
  for (const auto& c : columns_)
    for (std::size_t i = 0; i < n_; ++i) hi[i] = std::max(hi[i], c[i]);
  return hi;
}

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<std::int32_t>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= static_cast<std::uint32_t>(x);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// B^{-1} = adj / det for an optimal basis B of the gauge LP. Any v with
// B^{-1} v >= 0 has gauge (1^T adj v) / det.
struct CachedBasis {
  std::vector<std::int64_t> adj;  // n x n, row-major
  std::int64_t det;
  std::vector<std::int64_t> weights;  // column sums of adj
  std::int64_t max_input;
};

LinearProgram gauge_program(const ExponentMatrix& a) {
  LinearProgram lp(a.n(), a.m());
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.m(); ++j) lp.at(i, j) = a.entry(i, j);
  for (std::size_t j = 0; j < a.m(); ++j) lp.c[j] = 1;
  return lp;
}

std::optional<CachedBasis> make_cached_basis(const ExponentMatrix& a,
                                             const std::vector<std::size_t>& basis) {
  const std::size_t n = a.n();
  // Gauss-Jordan on [B | I] over the rationals.
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) m[i][k] = a.entry(i, basis[k]);
    m[i][n + i] = 1;
  }
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Rational inv = 1 / m[c][c];
    for (auto& v : m[c]) v *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  CachedBasis cb;
  if (!det.get_den().fits_slong_p() || det.get_den() != 1 || !det.get_num().fits_slong_p())
    return std::nullopt;
  cb.det = det.get_num().get_si();
  cb.adj.resize(n * n);
  std::int64_t largest = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      Rational e = m[i][n + k] * det;
      if (e.get_den() != 1 || !e.get_num().fits_slong_p()) return std::nullopt;
      cb.adj[i * n + k] = e.get_num().get_si();
      largest = std::max<std::int64_t>(largest, std::abs(cb.adj[i * n + k]));
    }
  cb.weights.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) cb.weights[k] += cb.adj[i * n + k];
  for (auto w : cb.weights) largest = std::max<std::int64_t>(largest, std::abs(w));
  cb.max_input = std::numeric_limits<std::int64_t>::max() / 4 /
                 (static_cast<std::int64_t>(n) * largest + 1);
  return cb;
}

} // namespace

struct GaugeOracle::State {
  State(ExponentMatrix m, bool keep) : a(std::move(m)), lp(gauge_program(a)), memoize(keep) {
    cacheable = a.rank() == a.n();
  }
  ExponentMatrix a;
  LinearProgram lp;
  bool memoize = true;
  bool cacheable = false;
  std::unordered_map<std::vector<std::int32_t>, std::optional<Rational>, VectorHash> memo;
  std::vector<CachedBasis> bases;
  std::size_t solves = 0;

  std::optional<Rational> from_cache(std::span<const std::int32_t> v) {
    const std::size_t n = a.n();
    std::int64_t norm = 0;
    for (auto x : v) norm = std::max<std::int64_t>(norm, std::abs(std::int64_t{x}));
    for (std::size_t b = 0; b < bases.size(); ++b) {
      const CachedBasis& cb = bases[b];
      if (norm > cb.max_input) continue;
      bool feasible = true;
      for (std::size_t i = 0; i < n && feasible; ++i) {
        std::int64_t z = 0;
        for (std::size_t k = 0; k < n; ++k) z += cb.adj[i * n + k] * v[k];
        if ((cb.det > 0 && z < 0) || (cb.det < 0 && z > 0)) feasible = false;
      }
      if (!feasible) continue;
      std::int64_t num = 0;
      for (std::size_t k = 0; k < n; ++k) num += cb.weights[k] * v[k];
      Rational g(Integer(static_cast<long>(num)), Integer(static_cast<long>(cb.det)));
      g.canonicalize();
      if (b > 0) std::swap(bases[b], bases[b - 1]);
      return g;
    }
    return std::nullopt;
  }

  std::optional<Rational> solve(std::span<const std::int32_t> v) {
    for (std::size_t i = 0; i < a.n(); ++i) lp.b[i] = v[i];
    ++solves;
    LpSolution s = solve_lp(lp);
    if (s.status != LpStatus::optimal) return std::nullopt;
    if (cacheable && s.basis.size() == a.n() && bases.size() < 512) {
      if (auto cb = make_cached_basis(a, s.basis)) bases.push_back(std::move(*cb));
    }
    return s.value;
  }
};

GaugeOracle::GaugeOracle(ExponentMatrix a, bool memoize)
    : state_(std::make_unique<State>(std::move(a), memoize)) {}
GaugeOracle::~GaugeOracle() = default;
GaugeOracle::GaugeOracle(GaugeOracle&&) noexcept = default;
GaugeOracle& GaugeOracle::operator=(GaugeOracle&&) noexcept = default;

const ExponentMatrix& GaugeOracle::matrix() const noexcept { return state_->a; }
std::size_t GaugeOracle::lp_solves() const noexcept { return state_->solves; }
std::size_t GaugeOracle::memo_size() const noexcept { return state_->memo.size(); }

std::vector<GaugeOracle::DualBound> GaugeOracle::dual_bounds() const {
  std::vector<DualBound> out;
  for (const auto& cb : state_->bases) {
    DualBound d{cb.weights, cb.det};
    if (d.denominator < 0) {
      d.denominator = -d.denominator;
      for (auto& x : d.numerator) x = -x;
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::optional<Rational> GaugeOracle::gauge(std::span<const std::int32_t> v) {
  State& s = *state_;
  if (v.size() != s.a.n()) throw DomainError("vector length does not match the exponent matrix");
  if (!s.memoize) {
    std::optional<Rational> g = s.from_cache(v);
    return g ? g : s.solve(v);
  }
  std::vector<std::int32_t> key(v.begin(), v.end());
  if (auto it = s.memo.find(key); it != s.memo.end()) return it->second;
  std::optional<Rational> g = s.from_cache(v);
  if (!g) g = s.solve(v);
  s.memo.emplace(std::move(key), g);
  return g;
}

bool GaugeOracle::within(std::span<const std::int32_t> v, long bound) {
  auto g = gauge(v);
  return g && cmp(*g, bound) <= 0;
}

std::optional<Rational> gauge(const ExponentMatrix& a, const ExponentVector& v) {
  if (v.size() != a.n()) throw DomainError("vector length does not match the exponent matrix");
  LinearProgram lp = gauge_program(a);
  for (std::size_t i = 0; i < a.n(); ++i) lp.b[i] = v[i];
  LpSolution s = solve_lp(lp);
  if (s.status != LpStatus::optimal) return std::nullopt;
  return s.value;
}

bool in_convex_hull(const ExponentMatrix& a, const ExponentVector& v) {
  if (v.size() != a.n()) throw DomainError("vector length does not match the exponent matrix");
  LinearProgram lp(a.n() + 1, a.m());
  for (std::size_t j = 0; j < a.m(); ++j) {
    for (std::size_t i = 0; i < a.n(); ++i) lp.at(i, j) = a.entry(i, j);
    lp.at(a.n(), j) = 1;
  }
  for (std::size_t i = 0; i < a.n(); ++i) lp.b[i] = v[i];
  lp.b[a.n()] = 1;
  return solve_lp(lp).status == LpStatus::optimal;
}

namespace {

// max t subject to A lambda = v, sum lambda = 1, lambda_j >= t, written with
// lambda = mu + t*1, mu >= 0 and t = t+ - t-.
std::optional<Rational> interior_margin(const ExponentMatrix& a, const ExponentVector& v) {
  const std::size_t n = a.n(), m = a.m();
  LinearProgram lp(n + 1, m + 2);
  for (std::size_t i = 0; i < n; ++i) {
    long row_sum = 0;
    for (std::size_t j = 0; j < m; ++j) {
      lp.at(i, j) = a.entry(i, j);
      row_sum += a.entry(i, j);
    }
    lp.at(i, m) = row_sum;
    lp.at(i, m + 1) = -row_sum;
    lp.b[i] = v[i];
  }
  for (std::size_t j = 0; j < m; ++j) lp.at(n, j) = 1;
  lp.at(n, m) = static_cast<long>(m);
  lp.at(n, m + 1) = -static_cast<long>(m);
  lp.b[n] = 1;
  lp.c[m] = -1;
  lp.c[m + 1] = 1;
  LpSolution s = solve_lp(lp);
  if (s.status != LpStatus::optimal) return std::nullopt;
  return Rational(-s.value);
}

std::size_t affine_rank(const ExponentMatrix& a) {
  std::vector<std::vector<Rational>> rows(a.n() + 1, std::vector<Rational>(a.m()));
  for (std::size_t j = 0; j < a.m(); ++j) {
    for (std::size_t i = 0; i < a.n(); ++i) rows[i][j] = a.entry(i, j);
    rows[a.n()][j] = 1;
  }
  return rational_rank(std::move(rows));
}

} // namespace

InteriorCertificate certify_interior_origin(const ExponentMatrix& a) {
  InteriorCertificate cert;
  const std::size_t n = a.n();
  cert.rank_full = a.rank() == n;
  cert.margin = interior_margin(a, ExponentVector(n));
  cert.origin_interior = cert.rank_full && cert.margin && sgn(*cert.margin) > 0;
  const bool full_dimensional = affine_rank(a) == n + 1;

  GaugeOracle oracle(a);
  ExponentVector lo = a.box_min(), hi = a.box_max(), v = lo;
  if (full_dimensional) {
    while (true) {
      bool interior;
      if (cert.origin_interior) {
        auto g = oracle.gauge(v);
        interior = g && cmp(*g, 1) < 0;
      } else {
        auto t = interior_margin(a, v);
        interior = t && sgn(*t) > 0;
      }
      if (interior) cert.interior_lattice_points.push_back(v);
      bool done = true;
      for (std::size_t i = n; i-- > 0;) {
        if (v[i] < hi[i]) {
          ++v[i];
          done = false;
          break;
        }
        v[i] = lo[i];
      }
      if (done) break;
    }
  }
  cert.unique = cert.interior_lattice_points.size() == 1 &&
                cert.interior_lattice_points.front().is_zero();
  return cert;
}

GcdBoundCheck check_gcd_bound(const ExponentMatrix& a, std::span<const std::int64_t> l) {
  if (l.size() != a.m()) throw DomainError("tuple length does not match column count");
  GcdBoundCheck out;
  out.total = 0;
  std::vector<Integer> li;
  li.reserve(l.size());
  for (auto x : l) {
    if (x < 0) throw DomainError("tuple entries must be nonnegative");
    li.emplace_back(static_cast<long>(x));
    out.total += li.back();
  }
  out.gcd = 0;
  for (const auto& x : a.apply(std::span<const Integer>(li)))
    mpz_gcd(out.gcd.get_mpz_t(), out.gcd.get_mpz_t(), x.get_mpz_t());
  out.excluded = sgn(out.gcd) == 0;
  out.holds = out.excluded || out.gcd <= out.total;
  return out;
}

namespace {

class TupleSearch {
public:
  TupleSearch(const ExponentMatrix& a, unsigned long p) : a_(a), p_(static_cast<std::int64_t>(p)) {}

  // Visits every l >= 0 with sum(l) = total; false once a violation is stored.
  bool run(std::int64_t total, KernelGcdReport& report) {
    l_.assign(a_.m(), 0);
    acc_.assign(a_.n(), 0);
    report_ = &report;
    return visit(0, total);
  }

private:
  bool visit(std::size_t j, std::int64_t remaining) {
    const std::size_t n = a_.n();
    if (j + 1 == a_.m()) {
      l_[j] = remaining;
      std::int64_t g = 0;
      for (std::size_t i = 0; i < n; ++i) g = std::gcd(g, acc_[i] + a_.entry(i, j) * remaining);
      ++report_->tuples_examined;
      if (g != 0 && g % p_ == 0) {
        report_->witness = l_;
        report_->witness_gcd = static_cast<long>(g);
        return false;
      }
      return true;
    }
    for (std::int64_t x = remaining; x >= 0; --x) {
      l_[j] = x;
      for (std::size_t i = 0; i < n; ++i) acc_[i] += a_.entry(i, j) * x;
      bool ok = visit(j + 1, remaining - x);
      for (std::size_t i = 0; i < n; ++i) acc_[i] -= a_.entry(i, j) * x;
      if (!ok) return false;
    }
    l_[j] = 0;
    return true;
  }

  const ExponentMatrix& a_;
  std::int64_t p_;
  std::vector<std::int64_t> l_;
  std::vector<std::int64_t> acc_;
  KernelGcdReport* report_ = nullptr;
};

} // namespace

KernelGcdReport check_kernel_gcd_condition(const ExponentMatrix& a, unsigned long k,
                                           unsigned long p, const Integer& ceiling) {
  if (!is_prime(p)) throw DomainError("p must be prime");
  if (k == 0) throw DomainError("covering index must be at least 1");
  KernelGcdReport report;
  report.search_size = 0;
  report.tuples_examined = 0;
  for (unsigned long mu = 1; mu < p; ++mu) {
    Integer count;
    mpz_bin_uiui(count.get_mpz_t(), k * mu + a.m() - 1, a.m() - 1);
    report.search_size += count;
  }
  if (report.search_size > ceiling) {
    report.outcome = CheckOutcome::not_checked;
    return report;
  }
  TupleSearch search(a, p);
  for (unsigned long mu = 1; mu < p; ++mu) {
    if (!search.run(static_cast<std::int64_t>(k * mu), report)) {
      report.outcome = CheckOutcome::violated;
      return report;
    }
  }
  report.outcome = CheckOutcome::holds;
  return report;
}

} // namespace dworklab

namespace dworklab {

std::string to_string(CheckOutcome o) {
  switch (o) {
  case CheckOutcome::holds: return "holds";
  case CheckOutcome::violated: return "violated";
  case CheckOutcome::not_checked: return "not_checked";
  }
  return "unknown";
}

} // namespace dworklab
