#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "bvd/errors.hpp"
#include "bvd/kernels.hpp"

namespace bvd::kernels {
namespace {

std::vector<const KernelSet*> variants() {
  std::vector<const KernelSet*> out{&scalar(), &active()};
  if (avx2()) out.push_back(avx2());
  if (neon()) out.push_back(neon());
  return out;
}

TEST(Kernels, ActiveIsCompiledVariant) {
  const Isa isa = active().isa;
  if (isa == Isa::Avx2) EXPECT_EQ(&active(), avx2());
  if (isa == Isa::Neon) EXPECT_EQ(&active(), neon());
  EXPECT_EQ(scalar().isa, Isa::Scalar);
  EXPECT_STREQ(to_string(Isa::Avx2), "avx2");
}

TEST(Kernels, AgreeWithLoopsOnRandomWords) {
  std::mt19937_64 rng(71);
  for (std::size_t n = 0; n <= 100; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::uint32_t alphabet = trial % 3 == 0 ? 1 : (trial % 3 == 1 ? 2 : 1000);
      std::uniform_int_distribution<std::uint32_t> sym(0, alphabet);
      std::vector<std::uint32_t> a(n + 3);
      for (auto& s : a) s = sym(rng);
      std::vector<std::uint32_t> b = a;
      for (auto& s : b)
        if (rng() % 4 == 0) s = sym(rng);
      const std::size_t shift = trial % 4 == 3 ? 1 : 0;
      const std::uint32_t* pa = a.data() + shift;
      const std::uint32_t* pb = b.data() + (trial % 2);

      std::size_t first = n;
      std::size_t equal = 0;
      std::vector<std::uint8_t> mask(n);
      for (std::size_t i = 0; i < n; ++i) {
        const bool eq = pa[i] == pb[i];
        if (!eq && first == n) first = i;
        equal += eq;
        mask[i] = eq;
      }
      for (const KernelSet* k : variants()) {
        EXPECT_EQ(k->first_mismatch(pa, pb, n), first) << to_string(k->isa) << " n=" << n;
        EXPECT_EQ(k->count_equal(pa, pb, n), equal) << to_string(k->isa) << " n=" << n;
        std::vector<std::uint8_t> got(n, 7);
        k->equal_mask(pa, pb, got.data(), n);
        EXPECT_EQ(got, mask) << to_string(k->isa) << " n=" << n;
      }
    }
  }
}

TEST(Kernels, LateMismatchAcrossVectorBoundaries) {
  for (std::size_t n = 1; n <= 70; ++n)
    for (std::size_t at = 0; at < n; ++at) {
      std::vector<std::uint32_t> a(n, 5);
      std::vector<std::uint32_t> b(n, 5);
      b[at] = 6;
      for (const KernelSet* k : variants()) {
        EXPECT_EQ(k->first_mismatch(a.data(), b.data(), n), at);
        EXPECT_EQ(k->count_equal(a.data(), b.data(), n), n - 1);
      }
    }
}

TEST(Kernels, SpanWrappersUseCommonLength) {
  const std::vector<std::uint32_t> a{1, 2, 3, 4, 5};
  const std::vector<std::uint32_t> b{1, 2, 3};
  EXPECT_EQ(first_mismatch(a, b), 3u);
  EXPECT_EQ(count_equal(a, b), 3u);
  std::vector<std::uint8_t> out(3);
  equal_mask(a, b, out);
  EXPECT_EQ(out, (std::vector<std::uint8_t>{1, 1, 1}));
  std::vector<std::uint8_t> small(2);
  EXPECT_THROW(equal_mask(a, b, small), ContractError);
}

}  // namespace
}  // namespace bvd::kernels
