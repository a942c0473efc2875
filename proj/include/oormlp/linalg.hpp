#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace oormlp {

// Dense row-major square matrix; sized for context dimensions (d ~ 10).
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  static SquareMatrix identity(std::size_t n, double scale = 1.0);

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  SquareMatrix scaled(double factor) const;
  double quadratic_form(std::span<const double> v) const;
  // max_j |M_jj|
  double diagonal_sup() const noexcept;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace oormlp
