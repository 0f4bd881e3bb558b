#pragma once

// Comparison kernels over interned symbol words (dense uint32 codes).
// Each ISA variant computes exactly what the scalar reference computes; the
// active variant is chosen once from the running CPU.

#include <cstddef>
#include <cstdint>
#include <span>

namespace bvd::kernels {

enum class Isa { Scalar, Avx2, Neon };

const char* to_string(Isa isa);

struct KernelSet {
  Isa isa;
  // Index of the first i < n with a[i] != b[i], or n when the prefixes agree.
  std::size_t (*first_mismatch)(const std::uint32_t* a, const std::uint32_t* b, std::size_t n);
  // Number of i < n with a[i] == b[i].
  std::size_t (*count_equal)(const std::uint32_t* a, const std::uint32_t* b, std::size_t n);
  // out[i] = 1 when a[i] == b[i], else 0.
  void (*equal_mask)(const std::uint32_t* a, const std::uint32_t* b, std::uint8_t* out, std::size_t n);
};

const KernelSet& scalar();
// nullptr when the variant was not compiled in or the CPU lacks the extension.
const KernelSet* avx2();
const KernelSet* neon();
const KernelSet& active();

// Convenience wrappers over active(); spans are compared on their common length.
std::size_t first_mismatch(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);
std::size_t count_equal(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);
void equal_mask(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, std::span<std::uint8_t> out);

}  // namespace bvd::kernels
