#pragma once

#include "bvd/kernels.hpp"

namespace bvd::kernels::detail {

extern const KernelSet kScalar;
#if defined(BVD_HAVE_AVX2)
extern const KernelSet kAvx2;
#endif
#if defined(BVD_HAVE_NEON)
extern const KernelSet kNeon;
#endif

}  // namespace bvd::kernels::detail
