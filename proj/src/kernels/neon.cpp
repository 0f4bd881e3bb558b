#include <arm_neon.h>

#include "variants.hpp"

namespace bvd::kernels::detail {

namespace {

constexpr std::size_t kLanes = 4;

std::size_t first_mismatch(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const uint32x4_t eq = vceqq_u32(vld1q_u32(a + i), vld1q_u32(b + i));
    if (vminvq_u32(eq) == 0) break;
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return i;
  return n;
}

std::size_t count_equal(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const uint32x4_t eq = vceqq_u32(vld1q_u32(a + i), vld1q_u32(b + i));
    c += vaddvq_u32(vshrq_n_u32(eq, 31));
  }
  for (; i < n; ++i) c += a[i] == b[i];
  return c;
}

void equal_mask(const std::uint32_t* a, const std::uint32_t* b, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const uint32x4_t bits = vshrq_n_u32(vceqq_u32(vld1q_u32(a + i), vld1q_u32(b + i)), 31);
    for (std::size_t j = 0; j < kLanes; ++j) out[i + j] = static_cast<std::uint8_t>(bits[j]);
  }
  for (; i < n; ++i) out[i] = a[i] == b[i] ? 1 : 0;
}

}  // namespace

const KernelSet kNeon{Isa::Neon, first_mismatch, count_equal, equal_mask};

}  // namespace bvd::kernels::detail
