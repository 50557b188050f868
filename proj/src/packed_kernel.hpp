#pragma once

// Packed-exponent sparse kernel shared by multiplication, powering and the
// period computations. An exponent vector of n coordinates is stored as one
// 128-bit key with `bits` bits per coordinate and a bias, so that
// lexicographic order on vectors equals numeric order on keys and a shift by
// a fixed vector is a single (wrapping) addition.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace dworklab::detail {

using Key = unsigned __int128;

class Packing {
public:
  // Packing able to hold every coordinate with |e| <= max_abs, if one exists.
  static std::optional<Packing> for_range(std::size_t nvars, std::int64_t max_abs) {
    if (nvars == 0) return Packing(0, 0);
    unsigned bits = static_cast<unsigned>(std::min<std::size_t>(32, 128 / nvars));
    if (bits < 4) return std::nullopt;
    std::int64_t limit = (std::int64_t{1} << (bits - 1)) - 1;
    if (max_abs > limit) return std::nullopt;
    return Packing(nvars, bits);
  }

  std::size_t nvars() const noexcept { return nvars_; }
  std::int64_t capacity() const noexcept {
    return nvars_ == 0 ? INT64_MAX : (std::int64_t{1} << (bits_ - 1)) - 1;
  }

  Key pack(std::span<const std::int32_t> e) const noexcept {
    Key k = 0;
    for (std::size_t i = 0; i < nvars_; ++i) {
      k <<= bits_;
      k |= static_cast<Key>(static_cast<std::uint64_t>(std::int64_t{e[i]} + bias_));
    }
    return k;
  }

  void unpack(Key k, std::span<std::int32_t> out) const noexcept {
    const Key mask = (Key{1} << bits_) - 1;
    for (std::size_t i = nvars_; i-- > 0;) {
      out[i] = static_cast<std::int32_t>(static_cast<std::int64_t>(k & mask) - bias_);
      k >>= bits_;
    }
  }

  // Additive offset realising the shift by `e`; apply with wrapping addition.
  Key delta(std::span<const std::int32_t> e) const noexcept {
    Key d = 0;
    for (std::size_t i = 0; i < nvars_; ++i) {
      Key term = static_cast<Key>(static_cast<__int128>(e[i])) << (bits_ * (nvars_ - 1 - i));
      d += term;
    }
    return d;
  }

  Key zero_key() const noexcept {
    Key k = 0;
    for (std::size_t i = 0; i < nvars_; ++i) {
      k <<= bits_;
      k |= static_cast<Key>(bias_);
    }
    return k;
  }

private:
  Packing(std::size_t nvars, unsigned bits)
      : nvars_(nvars), bits_(bits), bias_(bits == 0 ? 0 : (std::int64_t{1} << (bits - 1))) {}
  std::size_t nvars_;
  unsigned bits_;
  std::int64_t bias_;
};

template <class Value>
struct PackedPoly {
  std::vector<Key> keys;
  std::vector<Value> coeffs;

  std::size_t size() const noexcept { return keys.size(); }
  void reserve(std::size_t n) {
    keys.reserve(n);
    coeffs.reserve(n);
  }
};

// Arbitrary precision coefficients, optionally reduced modulo `modulus`.
struct BigArith {
  using value_type = mpz_class;
  const mpz_class* modulus = nullptr;

  static void addmul(value_type& acc, const value_type& a, const value_type& b) {
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  void finish(value_type& acc) const {
    if (modulus) mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), modulus->get_mpz_t());
  }
  static bool is_zero(const value_type& v) { return sgn(v) == 0; }
  static void clear(value_type& v) { v = 0; }
};

// Residues modulo m <= 2^32, so a*b + acc never overflows.
struct WordArith {
  using value_type = std::uint64_t;
  std::uint64_t modulus;

  void addmul(value_type& acc, value_type a, value_type b) const { acc = (acc + a * b) % modulus; }
  void finish(value_type&) const {}
  static bool is_zero(value_type v) { return v == 0; }
  static void clear(value_type& v) { v = 0; }
};

// Product of `big` and `small` as a |small|-way merge of shifted copies of
// `big`. Only keys with keep(key) true are emitted; an always-true predicate
// yields the full product.
template <class Arith, class Keep>
PackedPoly<typename Arith::value_type>
merge_multiply(const PackedPoly<typename Arith::value_type>& big,
               const PackedPoly<typename Arith::value_type>& small, std::span<const Key> deltas,
               const Arith& arith, Keep&& keep) {
  using Value = typename Arith::value_type;
  PackedPoly<Value> out;
  if (big.size() == 0 || small.size() == 0) return out;

  struct Cursor {
    Key key;
    std::uint32_t stream;
    std::uint32_t index;
  };
  auto later = [](const Cursor& a, const Cursor& b) { return a.key > b.key; };
  std::vector<Cursor> heap;
  heap.reserve(small.size());
  for (std::uint32_t j = 0; j < small.size(); ++j)
    heap.push_back({big.keys[0] + deltas[j], j, 0});
  std::make_heap(heap.begin(), heap.end(), later);

  out.reserve(big.size() + big.size() / 2);
  Value acc{};
  while (!heap.empty()) {
    const Key current = heap.front().key;
    Arith::clear(acc);
    while (!heap.empty() && heap.front().key == current) {
      std::pop_heap(heap.begin(), heap.end(), later);
      Cursor& c = heap.back();
      arith.addmul(acc, big.coeffs[c.index], small.coeffs[c.stream]);
      if (++c.index < big.size()) {
        c.key = big.keys[c.index] + deltas[c.stream];
        std::push_heap(heap.begin(), heap.end(), later);
      } else {
        heap.pop_back();
      }
    }
    arith.finish(acc);
    if (!Arith::is_zero(acc) && keep(current)) {
      out.keys.push_back(current);
      out.coeffs.push_back(acc);
    }
  }
  return out;
}

} // namespace dworklab::detail
