#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

#include "sepkit/errors.hpp"

namespace sepkit {

using BigInt = boost::multiprecision::cpp_int;

// Stream values are naturals; BigInt with a nonnegativity convention.
using Nat = BigInt;

inline std::uint64_t to_u64(const BigInt& n) {
  if (n < 0 || n > BigInt(UINT64_MAX)) throw Error("value does not fit in 64 bits");
  return n.convert_to<std::uint64_t>();
}

inline bool fits_u64(const BigInt& n) { return n >= 0 && n <= BigInt(UINT64_MAX); }

inline BigInt pow2(std::uint64_t k) { return BigInt(1) << k; }

// number of bits in |n|; bit_length(0) == 0
inline std::uint64_t bit_length(const BigInt& n) {
  if (n == 0) return 0;
  return boost::multiprecision::msb(n < 0 ? BigInt(-n) : n) + 1;
}

}  // namespace sepkit
