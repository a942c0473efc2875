#include "oormlp/regularization.hpp"

#include <cmath>
#include <string>

#include "oormlp/error.hpp"
#include "oormlp/kernels.hpp"

namespace oormlp {

namespace {

void require_budget(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "confidence budget alpha must lie in (0, 1)");
  }
}

}  // namespace

SquareMatrix update_covariance(const SquareMatrix& previous, std::span<const double> x, long t) {
  if (t < 1) throw Error(ErrorCode::InvalidArgument, "decision index must be >= 1");
  const std::size_t d = x.size();
  if (t > 1 && previous.size() != d) {
    throw Error(ErrorCode::DimensionMismatch, "covariance is " + std::to_string(previous.size()) +
                                                  "-dimensional, context has length " +
                                                  std::to_string(d));
  }
  SquareMatrix next = t == 1 ? SquareMatrix(d) : previous.scaled(static_cast<double>(t - 1));
  kernels::rank1_update(1.0, x, next.data());
  return next.scaled(1.0 / static_cast<double>(t));
}

double lambda_closed_form(long t, double diag_sup, double steepness, std::size_t d, double alpha,
                          double c_lambda) {
  if (t < 1) throw Error(ErrorCode::InvalidArgument, "decision index must be >= 1");
  require_budget(alpha);
  if (!(diag_sup > 0.0)) {
    throw Error(ErrorCode::DegenerateCovariance, "diagonal sup norm of the covariance is zero");
  }
  const double log_term = std::log(2.0 * static_cast<double>(d) / alpha);
  return c_lambda * 4.0 * steepness *
         std::sqrt(2.0 * diag_sup / static_cast<double>(t) * log_term);
}

double lambda_closed_form(long t, const SquareMatrix& covariance, double steepness, double alpha,
                          double c_lambda) {
  return lambda_closed_form(t, covariance.diagonal_sup(), steepness, covariance.size(), alpha,
                            c_lambda);
}

double lambda_incremental(double lambda_prev, long t, double diag_sup_t, double diag_sup_prev) {
  if (t < 2) throw Error(ErrorCode::InvalidArgument, "the recurrence starts at t = 2");
  if (!(diag_sup_prev > 0.0)) {
    throw Error(ErrorCode::DegenerateCovariance, "previous diagonal sup norm is zero");
  }
  const double shrink = 1.0 - 1.0 / static_cast<double>(t);
  return lambda_prev * std::sqrt(shrink * diag_sup_t / diag_sup_prev);
}

RegularizationState::RegularizationState(std::size_t d, double alpha, double steepness,
                                         double c_lambda)
    : d_(d), alpha_(alpha), steepness_(steepness), c_lambda_(c_lambda), outer_sum_(d) {
  require_budget(alpha);
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (!(steepness > 0.0)) throw Error(ErrorCode::InvalidArgument, "steepness must be positive");
  if (!(c_lambda >= 0.0)) throw Error(ErrorCode::InvalidArgument, "c_lambda must be nonnegative");
}

void RegularizationState::observe(std::span<const double> x) {
  if (x.size() != d_) throw Error(ErrorCode::DimensionMismatch, "context length differs from d");
  kernels::rank1_update(1.0, x, outer_sum_.data());
  ++t_;
  const double previous_sup = diag_sup_;
  diag_sup_ = outer_sum_.diagonal_sup() / static_cast<double>(t_);
  if (t_ == 1) {
    lambda_ = lambda_closed_form(1, diag_sup_, steepness_, d_, alpha_, c_lambda_);
  } else {
    lambda_ = lambda_incremental(lambda_, t_, diag_sup_, previous_sup);
  }
}

SquareMatrix RegularizationState::covariance() const {
  return outer_sum_.scaled(t_ > 0 ? 1.0 / static_cast<double>(t_) : 0.0);
}

}  // namespace oormlp
