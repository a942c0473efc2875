#pragma once
// Synthetic market generation, replicated policy trajectories with common
// random numbers, and deterministic aggregation across a scenario grid.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "oormlp/lasso_solver.hpp"
#include "oormlp/noise.hpp"
#include "oormlp/policies.hpp"

namespace oormlp {

enum class RevenueAccounting { Expected, Realized };

struct Scenario {
  std::string id;
  std::size_t d = 10;
  int s0 = 3;
  double W = 3.0;
  long T = 1000;
  Vector theta0;
  NoiseModel noise_true = NoiseModel::gaussian();
  NoiseModel noise_assumed = NoiseModel::gaussian();
  double alpha = 0.05;
  double c_lambda = 0.01;
  int replicates = 32;
  std::uint64_t base_seed = 20240601;
  std::vector<PolicyKind> policies{PolicyKind::Oormlp, PolicyKind::Rmlp, PolicyKind::Oracle};
  SolverSettings solver;
  RevenueAccounting accounting = RevenueAccounting::Expected;

  void validate() const;
};

// splitmix64 over (base_seed, FNV-1a(scenario_id), replicate). Stable by contract.
std::uint64_t replicate_seed(std::uint64_t base_seed, const std::string& scenario_id, int replicate);

// Entries iid N(0,1), divided by the sup norm when it exceeds 1.
Vector generate_context(Rng& rng, std::size_t d);

// Contexts and noise of one replicate, shared by every policy (common random numbers).
struct MarketDraw {
  std::size_t d = 0;
  std::vector<double> contexts;  // T x d row-major
  std::vector<double> noise;     // eta_1..eta_T

  std::span<const double> context(long t) const {
    return {contexts.data() + static_cast<std::size_t>(t - 1) * d, d};
  }
};

MarketDraw draw_market(const Scenario& scenario, std::uint64_t seed);

struct TrajectoryMetrics {
  std::string scenario_id;
  int replicate = 0;
  PolicyKind policy = PolicyKind::Oormlp;
  std::uint64_t seed = 0;
  std::vector<double> cumulative_regret;
  std::vector<double> estimation_error_l1;
  std::vector<double> estimation_error_l2_sq;
  std::vector<double> lambda;
  std::vector<double> posted_price;

  friend bool operator==(const TrajectoryMetrics&, const TrajectoryMetrics&) = default;
};

// Per-scenario resources that are expensive to build and immutable afterwards.
struct ScenarioResources {
  double steepness = 0.0;
  std::shared_ptr<const PricingFunction> pricing;
};

ScenarioResources prepare_scenario(const Scenario& scenario);

TrajectoryMetrics run_trajectory(const Scenario& scenario, PolicyKind policy, int replicate,
                                 const MarketDraw& market, const ScenarioResources& resources);
TrajectoryMetrics run_trajectory(const Scenario& scenario, PolicyKind policy, int replicate);

inline constexpr const char* kMetricNames[] = {"cum_regret", "est_err_l1", "est_err_l2_sq",
                                               "lambda_t", "posted_price"};
inline constexpr std::size_t kMetricCount = 5;

const std::vector<double>& metric_series(const TrajectoryMetrics& m, std::size_t metric);

struct SummaryBlock {
  std::string scenario_id;
  PolicyKind policy = PolicyKind::Oormlp;
  int replicates = 0;
  std::vector<long> checkpoints;
  // [metric][checkpoint]
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> stddev;
};

struct ReplicateFailure {
  std::string scenario_id;
  PolicyKind policy = PolicyKind::Oormlp;
  int replicate = 0;
  std::uint64_t seed = 0;
  std::string message;
};

struct GridResult {
  std::vector<Scenario> scenarios;
  // Ordered by scenario, replicate, policy (configuration order).
  std::vector<TrajectoryMetrics> trajectories;
  std::vector<SummaryBlock> summaries;
  std::vector<ReplicateFailure> failures;

  std::vector<const TrajectoryMetrics*> select(const std::string& scenario_id, PolicyKind policy) const;
};

// t = T/50, 2T/50, ..., T (every step when T < 50).
std::vector<long> summary_checkpoints(long T);

SummaryBlock summarize(const std::string& scenario_id, PolicyKind policy, long T,
                       const std::vector<const TrajectoryMetrics*>& runs);

GridResult run_grid(const std::vector<Scenario>& scenarios, int threads);

struct PairedComparison {
  int pairs = 0;
  double mean_difference = 0.0;  // mean(b - a)
  double standard_error = 0.0;   // sample sd of (b - a) / sqrt(pairs)
};

// Compares the terminal value of `metric` between two policies, paired by replicate.
PairedComparison compare_terminal(const GridResult& grid, const std::string& scenario_id,
                                  std::size_t metric, PolicyKind a, PolicyKind b);

}  // namespace oormlp
