#include "oormlp/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace oormlp {

SquareMatrix SquareMatrix::identity(std::size_t n, double scale) {
  SquareMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = scale;
  return out;
}

SquareMatrix SquareMatrix::scaled(double factor) const {
  SquareMatrix out = *this;
  for (double& x : out.data_) x *= factor;
  return out;
}

double SquareMatrix::quadratic_form(std::span<const double> v) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += data_[i * n_ + j] * v[j];
    acc += v[i] * row;
  }
  return acc;
}

double SquareMatrix::diagonal_sup() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) best = std::max(best, std::abs(data_[i * n_ + i]));
  return best;
}

}  // namespace oormlp
