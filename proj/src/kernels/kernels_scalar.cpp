#include "kernels_impl.hpp"

namespace oormlp::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void rank1_update(double weight, const double* x, double* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = weight * x[i];
    double* row = m + i * n;
    for (std::size_t j = 0; j < n; ++j) row[j] += wi * x[j];
  }
}

}  // namespace oormlp::kernels::scalar
