#include <algorithm>

#include "bvd/errors.hpp"
#include "variants.hpp"

namespace bvd::kernels {

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

const KernelSet& scalar() { return detail::kScalar; }

const KernelSet* avx2() {
#if defined(BVD_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &detail::kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet* neon() {
#if defined(BVD_HAVE_NEON)
  return &detail::kNeon;
#else
  return nullptr;
#endif
}

const KernelSet& active() {
  static const KernelSet& chosen = []() -> const KernelSet& {
    if (const KernelSet* k = avx2()) return *k;
    if (const KernelSet* k = neon()) return *k;
    return scalar();
  }();
  return chosen;
}

std::size_t first_mismatch(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  return active().first_mismatch(a.data(), b.data(), std::min(a.size(), b.size()));
}

std::size_t count_equal(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  return active().count_equal(a.data(), b.data(), std::min(a.size(), b.size()));
}

void equal_mask(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, std::span<std::uint8_t> out) {
  const std::size_t n = std::min(a.size(), b.size());
  if (out.size() < n) throw ContractError("mask buffer too small");
  active().equal_mask(a.data(), b.data(), out.data(), n);
}

}  // namespace bvd::kernels
