#include "oormlp/choice_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oormlp/error.hpp"
#include "oormlp/kernels.hpp"

namespace oormlp {

namespace {

const double kLogFloor = std::log(kProbabilityFloor);

void check_dimension(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": expected length " +
                                                  std::to_string(expected) + ", got " +
                                                  std::to_string(actual));
  }
}

}  // namespace

TransactionLog::TransactionLog(std::size_t dimension, std::size_t reserve) : columns_(dimension) {
  for (auto& column : columns_) column.reserve(reserve);
  prices_.reserve(reserve);
  sales_.reserve(reserve);
}

void TransactionLog::append(std::span<const double> x, double price, int sale) {
  check_dimension(columns_.size(), x.size(), "context");
  if (sale != 1 && sale != -1) throw Error(ErrorCode::InvalidArgument, "sale status must be +1 or -1");
  for (std::size_t j = 0; j < x.size(); ++j) columns_[j].push_back(x[j]);
  prices_.push_back(price);
  sales_.push_back(static_cast<double>(sale));
}

void TransactionLog::clear() noexcept {
  for (auto& column : columns_) column.clear();
  prices_.clear();
  sales_.clear();
}

TransactionRecord TransactionLog::record(std::size_t s) const {
  TransactionRecord out;
  out.x.resize(columns_.size());
  for (std::size_t j = 0; j < columns_.size(); ++j) out.x[j] = columns_[j][s];
  out.price = prices_[s];
  out.sale = sales_[s] > 0.0 ? 1 : -1;
  return out;
}

bool DemandParameter::in_parameter_space(double slack) const noexcept {
  const auto nonzero = std::count_if(theta.begin(), theta.end(), [](double v) { return v != 0.0; });
  return nonzero <= sparsity && l1_norm(theta) <= l1_budget + slack;
}

double willingness_to_pay(std::span<const double> theta0, std::span<const double> x, double eta) {
  check_dimension(theta0.size(), x.size(), "context");
  double v = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) v += theta0[j] * x[j];
  return v + eta;
}

int sale_status(double valuation, double price) noexcept { return valuation >= price ? 1 : -1; }

NegLogLikelihood::NegLogLikelihood(const TransactionLog& log, const NoiseModel& noise)
    : log_(&log), noise_(noise) {
  if (!noise.is_distribution()) {
    throw Error(ErrorCode::NotADistribution, "likelihood requires a distributional noise model");
  }
}

void NegLogLikelihood::compute_margins(std::span<const double> theta) {
  check_dimension(log_->dimension(), theta.size(), "theta");
  if (log_->empty()) throw Error(ErrorCode::InvalidArgument, "likelihood needs at least one record");
  const auto prices = log_->prices();
  margins_.assign(prices.begin(), prices.end());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    if (theta[j] != 0.0) kernels::axpy(-theta[j], log_->column(j), margins_);
  }
}

LossEvaluation NegLogLikelihood::value(std::span<const double> theta) {
  compute_margins(theta);
  const auto sales = log_->sales();
  LossEvaluation out;
  double total = 0.0;
  for (std::size_t s = 0; s < margins_.size(); ++s) {
    double logp = noise_.outcome_log_prob(margins_[s], sales[s] > 0.0 ? 1 : -1, nullptr);
    if (!(logp >= kLogFloor)) {
      logp = kLogFloor;
      ++out.clamped;
    }
    total -= logp;
  }
  out.value = total / static_cast<double>(margins_.size());
  return out;
}

LossEvaluation NegLogLikelihood::value_and_gradient(std::span<const double> theta,
                                                    std::span<double> gradient) {
  check_dimension(theta.size(), gradient.size(), "gradient");
  compute_margins(theta);
  const auto sales = log_->sales();
  scores_.resize(margins_.size());
  LossEvaluation out;
  double total = 0.0;
  for (std::size_t s = 0; s < margins_.size(); ++s) {
    double dlogp = 0.0;
    double logp = noise_.outcome_log_prob(margins_[s], sales[s] > 0.0 ? 1 : -1, &dlogp);
    if (!(logp >= kLogFloor)) {
      logp = kLogFloor;
      ++out.clamped;
    }
    total -= logp;
    scores_[s] = -dlogp;
  }
  const double inv_t = 1.0 / static_cast<double>(margins_.size());
  out.value = total * inv_t;
  // u_s = p_s - <theta, x_s>, so dL/dtheta = -t^{-1} sum_s xi_s x_s.
  for (std::size_t j = 0; j < gradient.size(); ++j) {
    gradient[j] = -inv_t * kernels::dot(scores_, log_->column(j));
  }
  return out;
}

double neg_log_likelihood(std::span<const double> theta, const TransactionLog& log,
                          const NoiseModel& noise) {
  NegLogLikelihood loss(log, noise);
  return loss.value(theta).value;
}

Vector score(std::span<const double> theta, const TransactionLog& log, const NoiseModel& noise) {
  NegLogLikelihood loss(log, noise);
  Vector gradient(theta.size());
  loss.value_and_gradient(theta, gradient);
  return gradient;
}

double l1_norm(std::span<const double> v) noexcept {
  double acc = 0.0;
  for (double x : v) acc += std::abs(x);
  return acc;
}

double l2_norm_squared(std::span<const double> v) noexcept {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return acc;
}

double sup_norm(std::span<const double> v) noexcept {
  double acc = 0.0;
  for (double x : v) acc = std::max(acc, std::abs(x));
  return acc;
}

}  // namespace oormlp
