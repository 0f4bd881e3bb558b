// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "variants.hpp"

namespace bvd::kernels::detail {

namespace {

constexpr std::size_t kLanes = 8;

inline __m256i load(const std::uint32_t* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }

// Bit i set when lane i compares equal.
inline unsigned eq_bits(const std::uint32_t* a, const std::uint32_t* b) {
  const __m256i eq = _mm256_cmpeq_epi32(load(a), load(b));
  return static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)));
}

std::size_t first_mismatch(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const unsigned ne = ~eq_bits(a + i, b + i) & 0xFFu;
    if (ne != 0) return i + static_cast<std::size_t>(__builtin_ctz(ne));
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return i;
  return n;
}

std::size_t count_equal(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) c += static_cast<std::size_t>(__builtin_popcount(eq_bits(a + i, b + i)));
  for (; i < n; ++i) c += a[i] == b[i];
  return c;
}

void equal_mask(const std::uint32_t* a, const std::uint32_t* b, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const unsigned bits = eq_bits(a + i, b + i);
    for (std::size_t j = 0; j < kLanes; ++j) out[i + j] = static_cast<std::uint8_t>((bits >> j) & 1u);
  }
  for (; i < n; ++i) out[i] = a[i] == b[i] ? 1 : 0;
}

}  // namespace

const KernelSet kAvx2{Isa::Avx2, first_mismatch, count_equal, equal_mask};

}  // namespace bvd::kernels::detail
