#pragma once

#include "dworklab/laurent.hpp"
#include "packed_kernel.hpp"

namespace dworklab::detail {

inline PackedPoly<mpz_class> to_packed(const LaurentPolynomial& f, const Packing& packing) {
  PackedPoly<mpz_class> out;
  out.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out.keys.push_back(packing.pack(f.exponents(i)));
    out.coeffs.push_back(f.coeff(i));
  }
  return out;
}

inline LaurentPolynomial from_packed(PackedPoly<mpz_class>&& p, const Packing& packing,
                                     const LaurentPolynomial& like) {
  const std::size_t n = like.nvars();
  std::vector<std::int32_t> exps(p.size() * n);
  for (std::size_t i = 0; i < p.size(); ++i)
    packing.unpack(p.keys[i], std::span<std::int32_t>(exps).subspan(i * n, n));
  return LaurentPolynomial::from_sorted(like.shared_variables(), like.ring(), std::move(exps),
                                        std::move(p.coeffs));
}

inline std::vector<Key> shifts_of(const LaurentPolynomial& f, const Packing& packing) {
  std::vector<Key> d;
  d.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) d.push_back(packing.delta(f.exponents(i)));
  return d;
}

} // namespace dworklab::detail
