#include "variants.hpp"

namespace bvd::kernels::detail {

namespace {

std::size_t first_mismatch(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return i;
  return n;
}

std::size_t count_equal(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += a[i] == b[i];
  return c;
}

void equal_mask(const std::uint32_t* a, const std::uint32_t* b, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] == b[i] ? 1 : 0;
}

}  // namespace

const KernelSet kScalar{Isa::Scalar, first_mismatch, count_equal, equal_mask};

}  // namespace bvd::kernels::detail
