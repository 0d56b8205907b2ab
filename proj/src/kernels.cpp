#include "lcinfo/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace lcinfo::kern {

#if LCINFO_HAVE_AVX2
const Ops* avx2_ops_impl();
#endif

const Ops* avx2_ops() {
#if LCINFO_HAVE_AVX2
  static const Ops* ops = []() -> const Ops* {
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
      return avx2_ops_impl();
    return nullptr;
  }();
  return ops;
#else
  return nullptr;
#endif
}

const Ops& active() {
  static const Ops* ops = [] {
    const char* mode = std::getenv("LCINFO_SIMD");
    if (mode && std::strcmp(mode, "scalar") == 0) return &scalar_ops();
    if (mode && std::strcmp(mode, "avx2") == 0) {
      if (const Ops* a = avx2_ops()) return a;
      return &scalar_ops();
    }
    if (const Ops* a = avx2_ops()) return a;
    return &scalar_ops();
  }();
  return *ops;
}

}  // namespace lcinfo::kern
