#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"
#include "oormlp/kernels.hpp"

namespace oormlp::kernels {

namespace {

constexpr KernelTable kScalar{"scalar", &scalar::dot, &scalar::axpy, &scalar::rank1_update};

#if defined(OORMLP_HAVE_AVX2)
constexpr KernelTable kAvx2{"avx2", &avx2::dot, &avx2::axpy, &avx2::rank1_update};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& select() noexcept {
  if (const char* forced = std::getenv("OORMLP_KERNELS");
      forced != nullptr && std::string_view(forced) == "scalar") {
    return kScalar;
  }
  if (const KernelTable* wide = avx2_table()) return *wide;
  return kScalar;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(OORMLP_HAVE_AVX2)
  static const bool available = cpu_has_avx2();
  return available ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

}  // namespace oormlp::kernels
