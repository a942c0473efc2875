#pragma once
// Data-parallel inner loops shared by the likelihood, the score, and the
// covariance accumulators. Each kernel has a portable scalar reference and
// an AVX2/FMA variant; the variant is chosen once at runtime.
//
// Set OORMLP_KERNELS=scalar in the environment to force the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace oormlp::kernels {

using DotFn = double (*)(const double* a, const double* b, std::size_t n);
// y[i] += alpha * x[i]
using AxpyFn = void (*)(double alpha, const double* x, double* y, std::size_t n);
// m (n x n, row-major) += weight * x x^T
using Rank1Fn = void (*)(double weight, const double* x, double* m, std::size_t n);

struct KernelTable {
  std::string_view name;
  DotFn dot;
  AxpyFn axpy;
  Rank1Fn rank1_update;
};

const KernelTable& scalar_table() noexcept;

// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_table() noexcept;

// The table selected for this process.
const KernelTable& active() noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
  return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void rank1_update(double weight, std::span<const double> x, std::span<double> m) noexcept {
  active().rank1_update(weight, x.data(), m.data(), x.size());
}

}  // namespace oormlp::kernels
