#pragma once
// Empirical context covariance and the online regularization schedule
//   lambda_t(alpha) = c * 4 u_W sqrt(2 t^{-1} ||diag(Sigma_t)||_inf ln(2d/alpha)),
// available both in closed form and through the multiplicative recurrence.

#include <cstddef>
#include <span>

#include "oormlp/linalg.hpp"

namespace oormlp {

// Sigma_t = t^{-1} [(t-1) Sigma_{t-1} + x x^T]; `previous` is ignored at t = 1.
SquareMatrix update_covariance(const SquareMatrix& previous, std::span<const double> x, long t);

double lambda_closed_form(long t, double diag_sup, double steepness, std::size_t d, double alpha,
                          double c_lambda);
double lambda_closed_form(long t, const SquareMatrix& covariance, double steepness, double alpha,
                          double c_lambda);

// lambda_t = lambda_{t-1} sqrt((1 - 1/t) D_t / D_{t-1}) with D the diagonal sup norm.
double lambda_incremental(double lambda_prev, long t, double diag_sup_t, double diag_sup_prev);

class RegularizationState {
 public:
  RegularizationState(std::size_t d, double alpha, double steepness, double c_lambda);

  // Folds x_t into the covariance and advances lambda by one decision point.
  void observe(std::span<const double> x);

  long t() const noexcept { return t_; }
  std::size_t dimension() const noexcept { return d_; }
  double lambda() const noexcept { return lambda_; }
  double alpha() const noexcept { return alpha_; }
  double steepness() const noexcept { return steepness_; }
  double c_lambda() const noexcept { return c_lambda_; }
  double diag_sup() const noexcept { return diag_sup_; }
  SquareMatrix covariance() const;
  // Running sum of x x^T; covariance() divides it by t.
  const SquareMatrix& outer_product_sum() const noexcept { return outer_sum_; }

 private:
  std::size_t d_;
  double alpha_;
  double steepness_;
  double c_lambda_;
  long t_ = 0;
  SquareMatrix outer_sum_;
  double diag_sup_ = 0.0;
  double lambda_ = 0.0;
};

}  // namespace oormlp
