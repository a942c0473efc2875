#pragma once

#include <cstddef>

namespace oormlp::kernels {

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void rank1_update(double weight, const double* x, double* m, std::size_t n);
}  // namespace scalar

#if defined(OORMLP_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void rank1_update(double weight, const double* x, double* m, std::size_t n);
}  // namespace avx2
#endif

}  // namespace oormlp::kernels
