#pragma once
// Pricing policies: the optimistic online regularized MLE pricer (re-solves
// at every decision point with the online schedule), the doubling-trick
// baseline that refits on the previous episode only, and the oracle.

#include <memory>
#include <span>
#include <string_view>

#include "oormlp/choice_model.hpp"
#include "oormlp/lasso_solver.hpp"
#include "oormlp/pricing.hpp"
#include "oormlp/regularization.hpp"

namespace oormlp {

enum class PolicyKind { Oormlp, Rmlp, Oracle };

std::string_view to_string(PolicyKind kind) noexcept;
PolicyKind parse_policy_kind(std::string_view name);

struct PolicySetup {
  std::size_t dimension = 10;
  double l1_budget = 3.0;      // W
  Vector theta0;               // read by the oracle only
  NoiseModel assumed_noise = NoiseModel::gaussian();
  double steepness = 0.0;      // u_W of the assumed noise
  double alpha = 0.05;
  double c_lambda = 0.01;
  SolverSettings solver;
  std::shared_ptr<const PricingFunction> pricing;
};

class PricingPolicy {
 public:
  virtual ~PricingPolicy() = default;

  virtual PolicyKind kind() const noexcept = 0;
  // Price for the next decision point given its context.
  virtual double post_price(std::span<const double> x) = 0;
  // Feedback for the decision point that was just priced.
  virtual void observe(std::span<const double> x, double price, int sale) = 0;

  virtual std::span<const double> estimate() const noexcept = 0;
  // Regularization level paired with the current estimate (0 for the oracle).
  virtual double lambda() const noexcept = 0;
  virtual long t() const noexcept = 0;
};

// Rolling learner state of the online policy.
struct PricingState {
  long t = 0;
  TransactionLog records;
  RegularizationState regularization;
  Vector theta_hat;
  SolverResult last_solve;
};

class OormlpPolicy final : public PricingPolicy {
 public:
  explicit OormlpPolicy(PolicySetup setup);

  PolicyKind kind() const noexcept override { return PolicyKind::Oormlp; }
  double post_price(std::span<const double> x) override;
  void observe(std::span<const double> x, double price, int sale) override;
  std::span<const double> estimate() const noexcept override { return state_.theta_hat; }
  double lambda() const noexcept override { return state_.regularization.lambda(); }
  long t() const noexcept override { return state_.t; }

  const PricingState& state() const noexcept { return state_; }

 private:
  PolicySetup setup_;
  PricingState state_;
};

// Episode k covers t in [2^k, 2^{k+1}).
int rmlp_episode(long t) noexcept;
bool is_rmlp_refit_point(long t) noexcept;

class RmlpPolicy final : public PricingPolicy {
 public:
  explicit RmlpPolicy(PolicySetup setup);

  PolicyKind kind() const noexcept override { return PolicyKind::Rmlp; }
  double post_price(std::span<const double> x) override;
  void observe(std::span<const double> x, double price, int sale) override;
  std::span<const double> estimate() const noexcept override { return theta_hat_; }
  double lambda() const noexcept override { return lambda_; }
  long t() const noexcept override { return t_; }

  int episode() const noexcept { return rmlp_episode(t_ + 1); }
  long refits() const noexcept { return refits_; }

 private:
  void refit();

  PolicySetup setup_;
  long t_ = 0;
  TransactionLog episode_records_;
  Vector theta_hat_;
  double lambda_ = 0.0;
  long refits_ = 0;
};

class OraclePolicy final : public PricingPolicy {
 public:
  explicit OraclePolicy(PolicySetup setup);

  PolicyKind kind() const noexcept override { return PolicyKind::Oracle; }
  double post_price(std::span<const double> x) override;
  void observe(std::span<const double>, double, int) override { ++t_; }
  std::span<const double> estimate() const noexcept override { return setup_.theta0; }
  double lambda() const noexcept override { return 0.0; }
  long t() const noexcept override { return t_; }

 private:
  PolicySetup setup_;
  long t_ = 0;
};

std::unique_ptr<PricingPolicy> make_policy(PolicyKind kind, const PolicySetup& setup);

}  // namespace oormlp
