#include "adaptik/simd/vec_ops.hpp"

#include <cstdlib>
#include <cstring>

namespace adaptik::simd {

bool avx2_supported() {
#if defined(ADAPTIK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const VecOps& select_ops() {
  const char* forced = std::getenv("ADAPTIK_SIMD");
  if (forced && std::strcmp(forced, "scalar") == 0) return scalar_ops();
#ifdef ADAPTIK_HAVE_AVX2
  if (forced && std::strcmp(forced, "avx2") == 0)
    return avx2_supported() ? avx2_ops() : scalar_ops();
  if (avx2_supported()) return avx2_ops();
#endif
  return scalar_ops();
}

}  // namespace

const VecOps& active_ops() {
  static const VecOps& ops = select_ops();
  return ops;
}

}  // namespace adaptik::simd
