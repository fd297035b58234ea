#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace hypershift {

/// Arbitrary-size natural number (M_k, target ranks, step end indices).
using BigNat = boost::multiprecision::mpz_int;

inline std::string to_decimal(const BigNat& v) { return v.str(); }

inline std::size_t bit_length(const BigNat& v) {
  return v == 0 ? 0 : mpz_sizeinbase(v.backend().data(), 2);
}

inline bool fits_u64(const BigNat& v) { return v >= 0 && bit_length(v) <= 64; }

inline std::uint64_t to_u64(const BigNat& v) {
  return static_cast<std::uint64_t>(mpz_get_ui(v.backend().data()));
}

}  // namespace hypershift
