// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "torusflux/common.hpp"

namespace torusflux::spectral {

// Integer frequency vectors k in Z^n, n <= 8, |k_i| <= 127, packed into a
// 64-bit key: byte i holds k_i + 128, axis 0 in the most significant byte, so
// unsigned comparison of keys is lexicographic comparison of (k_0,...,k_{n-1}).
inline constexpr int kMaxDim = 8;
inline constexpr int kMaxFreqComponent = 127;

using FreqKey = std::uint64_t;

inline FreqKey freq_pack(std::span<const int> k) {
  FreqKey key = 0x8080808080808080ull;  // all components zero
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < -kMaxFreqComponent || k[i] > kMaxFreqComponent)
      throw GridError("frequency component out of representable range");
    const int shift = 8 * (7 - static_cast<int>(i));
    key &= ~(0xffull << shift);
    key |= static_cast<FreqKey>(static_cast<unsigned>(k[i] + 128)) << shift;
  }
  return key;
}

inline int freq_component(FreqKey key, int i) {
  return static_cast<int>((key >> (8 * (7 - i))) & 0xff) - 128;
}

inline void freq_unpack(FreqKey key, int dim, int* out) {
  for (int i = 0; i < dim; ++i) out[i] = freq_component(key, i);
}

inline FreqKey freq_zero() { return 0x8080808080808080ull; }

inline FreqKey freq_negate(FreqKey key, int dim) {
  FreqKey out = key;
  for (int i = 0; i < dim; ++i) {
    const int shift = 8 * (7 - i);
    const FreqKey b = (key >> shift) & 0xff;
    out &= ~(0xffull << shift);
    out |= (256 - b) << shift;  // (k+128) -> (-k+128); b is never 0
  }
  return out;
}

// Canonical keys have first nonzero component positive; exactly one of
// {k, -k} is canonical for k != 0. Equivalent to key > freq_negate(key).
inline bool freq_canonical(FreqKey key, int dim) {
  return key > freq_negate(key, dim);
}

inline bool freq_is_zero(FreqKey key) { return key == freq_zero(); }

inline int freq_linf(FreqKey key, int dim) {
  int m = 0;
  for (int i = 0; i < dim; ++i) {
    const int a = freq_component(key, i);
    m = std::max(m, a < 0 ? -a : a);
  }
  return m;
}

// Component-wise sum; reports whether any component left the representable
// range (caller decides whether that is a truncation or an error).
inline bool freq_add(FreqKey a, FreqKey b, int dim, FreqKey* out) {
  std::array<int, kMaxDim> k{};
  bool ok = true;
  FreqKey key = 0x8080808080808080ull;
  for (int i = 0; i < dim; ++i) {
    k[i] = freq_component(a, i) + freq_component(b, i);
    if (k[i] < -kMaxFreqComponent || k[i] > kMaxFreqComponent) ok = false;
  }
  if (ok) {
    for (int i = 0; i < dim; ++i) {
      const int shift = 8 * (7 - i);
      key &= ~(0xffull << shift);
      key |= static_cast<FreqKey>(static_cast<unsigned>(k[i] + 128)) << shift;
    }
    *out = key;
  }
  return ok;
}

}  // namespace torusflux::spectral
