#pragma once
// Linear valuation model, binary sale outcomes, and the averaged negative
// log-likelihood (self-information loss) with its gradient.

#include <cstddef>
#include <span>
#include <vector>

#include "oormlp/noise.hpp"

namespace oormlp {

using Vector = std::vector<double>;

struct TransactionRecord {
  Vector x;
  double price = 0.0;
  int sale = -1;  // +1 sold, -1 not sold
};

// Column-major transaction history: one contiguous column per context
// coordinate so that margins and gradients run as dot/axpy kernels.
class TransactionLog {
 public:
  explicit TransactionLog(std::size_t dimension, std::size_t reserve = 0);

  void append(std::span<const double> x, double price, int sale);
  void append(const TransactionRecord& record) { append(record.x, record.price, record.sale); }
  void clear() noexcept;

  std::size_t dimension() const noexcept { return columns_.size(); }
  std::size_t size() const noexcept { return prices_.size(); }
  bool empty() const noexcept { return prices_.empty(); }

  std::span<const double> column(std::size_t j) const noexcept { return columns_[j]; }
  std::span<const double> prices() const noexcept { return prices_; }
  std::span<const double> sales() const noexcept { return sales_; }
  TransactionRecord record(std::size_t s) const;

 private:
  std::vector<Vector> columns_;
  Vector prices_;
  Vector sales_;  // stored as +-1.0
};

struct DemandParameter {
  Vector theta;
  int sparsity = 0;  // s0
  double l1_budget = 0.0;  // W

  // ||theta||_0 <= s0 and ||theta||_1 <= W
  bool in_parameter_space(double slack = 1e-12) const noexcept;
};

// V = <theta0, x> + eta
double willingness_to_pay(std::span<const double> theta0, std::span<const double> x, double eta);

// +1 iff V >= p; a tie counts as a sale.
int sale_status(double valuation, double price) noexcept;

inline constexpr double kProbabilityFloor = 1e-300;

struct LossEvaluation {
  double value = 0.0;
  std::size_t clamped = 0;  // records whose probability hit kProbabilityFloor
};

// Evaluates L_t(theta) = t^{-1} sum_s -log P_theta(y_s) and its gradient
// against a fixed log. Holds scratch buffers; not safe for concurrent use.
class NegLogLikelihood {
 public:
  NegLogLikelihood(const TransactionLog& log, const NoiseModel& noise);

  LossEvaluation value(std::span<const double> theta);
  LossEvaluation value_and_gradient(std::span<const double> theta, std::span<double> gradient);

  // xi_s = d(-log P)/du_s from the last evaluation with a gradient.
  std::span<const double> last_scores() const noexcept { return scores_; }

  const TransactionLog& log() const noexcept { return *log_; }

 private:
  void compute_margins(std::span<const double> theta);

  const TransactionLog* log_;
  NoiseModel noise_;
  Vector margins_;
  Vector scores_;
};

double neg_log_likelihood(std::span<const double> theta, const TransactionLog& log,
                          const NoiseModel& noise);

Vector score(std::span<const double> theta, const TransactionLog& log, const NoiseModel& noise);

double l1_norm(std::span<const double> v) noexcept;
double l2_norm_squared(std::span<const double> v) noexcept;
double sup_norm(std::span<const double> v) noexcept;

}  // namespace oormlp
