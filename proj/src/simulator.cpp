#include "oormlp/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <thread>

#include "oormlp/error.hpp"
#include "oormlp/kernels.hpp"

namespace oormlp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& text) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

constexpr std::uint64_t kContextStream = 0x636F6E7465787473ull;  // "contexts"
constexpr std::uint64_t kNoiseStream = 0x6E6F697365657461ull;    // "noiseeta"

}  // namespace

void Scenario::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw Error(ErrorCode::ConfigInvalid, field + ": " + why);
  };
  if (d == 0) fail("d", "must be >= 1");
  if (s0 < 0) fail("s0", "must be >= 0");
  if (!(W > 0.0)) fail("W", "must be positive");
  if (T < 1) fail("T", "must be >= 1");
  if (theta0.size() != d) fail("theta0", "length must equal d");
  DemandParameter truth{theta0, s0, W};
  if (!truth.in_parameter_space(1e-9)) fail("theta0", "must satisfy ||theta0||_0 <= s0 and ||theta0||_1 <= W");
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha", "must lie in (0, 1)");
  if (!(c_lambda >= 0.0)) fail("c_lambda", "must be nonnegative");
  if (replicates < 1) fail("replicates", "must be >= 1");
  if (policies.empty()) fail("policies", "must list at least one policy");
  if (!noise_assumed.is_distribution()) fail("noise_assumed", "must be a distribution");
  if (noise_assumed.family() == NoiseFamily::Uniform || noise_assumed.family() == NoiseFamily::Cauchy) {
    fail("noise_assumed", "must be gaussian or laplace (finite steepness)");
  }
  try {
    solver.validate();
  } catch (const Error& e) {
    fail("solver", e.what());
  }
}

std::uint64_t replicate_seed(std::uint64_t base_seed, const std::string& scenario_id, int replicate) {
  const std::uint64_t scenario_seed = splitmix64(base_seed ^ splitmix64(fnv1a(scenario_id)));
  return splitmix64(scenario_seed + static_cast<std::uint64_t>(replicate));
}

Vector generate_context(Rng& rng, std::size_t d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector x(d);
  for (double& v : x) v = normal(rng);
  const double sup = sup_norm(x);
  if (sup > 1.0) {
    for (double& v : x) v /= sup;
  }
  return x;
}

MarketDraw draw_market(const Scenario& scenario, std::uint64_t seed) {
  MarketDraw market;
  market.d = scenario.d;
  market.contexts.reserve(static_cast<std::size_t>(scenario.T) * scenario.d);
  market.noise.reserve(static_cast<std::size_t>(scenario.T));
  Rng context_rng(splitmix64(seed ^ kContextStream));
  Rng noise_rng(splitmix64(seed ^ kNoiseStream));
  for (long t = 1; t <= scenario.T; ++t) {
    const Vector x = generate_context(context_rng, scenario.d);
    market.contexts.insert(market.contexts.end(), x.begin(), x.end());
    market.noise.push_back(scenario.noise_true.sample(t, noise_rng));
  }
  return market;
}

ScenarioResources prepare_scenario(const Scenario& scenario) {
  ScenarioResources resources;
  resources.steepness = steepness(scenario.noise_assumed, scenario.W);
  resources.pricing = std::make_shared<const PricingFunction>(scenario.noise_assumed);
  return resources;
}

TrajectoryMetrics run_trajectory(const Scenario& scenario, PolicyKind policy_kind, int replicate,
                                 const MarketDraw& market, const ScenarioResources& resources) {
  PolicySetup setup;
  setup.dimension = scenario.d;
  setup.l1_budget = scenario.W;
  setup.theta0 = scenario.theta0;
  setup.assumed_noise = scenario.noise_assumed;
  setup.steepness = resources.steepness;
  setup.alpha = scenario.alpha;
  setup.c_lambda = scenario.c_lambda;
  setup.solver = scenario.solver;
  setup.pricing = resources.pricing;
  auto policy = make_policy(policy_kind, setup);

  TrajectoryMetrics metrics;
  metrics.scenario_id = scenario.id;
  metrics.replicate = replicate;
  metrics.policy = policy_kind;
  metrics.seed = replicate_seed(scenario.base_seed, scenario.id, replicate);
  const auto T = static_cast<std::size_t>(scenario.T);
  metrics.cumulative_regret.reserve(T);
  metrics.estimation_error_l1.reserve(T);
  metrics.estimation_error_l2_sq.reserve(T);
  metrics.lambda.reserve(T);
  metrics.posted_price.reserve(T);

  const PricingFunction& pricing = *resources.pricing;
  Vector error(scenario.d);
  double cumulative = 0.0;
  for (long t = 1; t <= scenario.T; ++t) {
    const auto x = market.context(t);
    const double mean_valuation = kernels::dot(scenario.theta0, x);
    const double valuation = mean_valuation + market.noise[static_cast<std::size_t>(t - 1)];

    const double price = policy->post_price(x);
    const int sale = sale_status(valuation, price);
    policy->observe(x, price, sale);

    const double oracle_price = pricing.optimal_price(mean_valuation);
    double gap = 0.0;
    if (scenario.accounting == RevenueAccounting::Expected) {
      gap = expected_revenue(scenario.noise_true, mean_valuation, oracle_price, t) -
            expected_revenue(scenario.noise_true, mean_valuation, price, t);
    } else {
      gap = (valuation >= oracle_price ? oracle_price : 0.0) - (sale > 0 ? price : 0.0);
    }
    if (policy_kind == PolicyKind::Oracle) gap = 0.0;
    cumulative += gap;

    const auto estimate = policy->estimate();
    for (std::size_t j = 0; j < scenario.d; ++j) error[j] = estimate[j] - scenario.theta0[j];
    metrics.cumulative_regret.push_back(cumulative);
    metrics.estimation_error_l1.push_back(l1_norm(error));
    metrics.estimation_error_l2_sq.push_back(l2_norm_squared(error));
    metrics.lambda.push_back(policy->lambda());
    metrics.posted_price.push_back(price);
  }
  return metrics;
}

TrajectoryMetrics run_trajectory(const Scenario& scenario, PolicyKind policy, int replicate) {
  scenario.validate();
  const MarketDraw market =
      draw_market(scenario, replicate_seed(scenario.base_seed, scenario.id, replicate));
  return run_trajectory(scenario, policy, replicate, market, prepare_scenario(scenario));
}

const std::vector<double>& metric_series(const TrajectoryMetrics& m, std::size_t metric) {
  switch (metric) {
    case 0: return m.cumulative_regret;
    case 1: return m.estimation_error_l1;
    case 2: return m.estimation_error_l2_sq;
    case 3: return m.lambda;
    case 4: return m.posted_price;
    default: throw Error(ErrorCode::InvalidArgument, "metric index out of range");
  }
}

std::vector<const TrajectoryMetrics*> GridResult::select(const std::string& scenario_id,
                                                         PolicyKind policy) const {
  std::vector<const TrajectoryMetrics*> out;
  for (const auto& m : trajectories) {
    if (m.scenario_id == scenario_id && m.policy == policy) out.push_back(&m);
  }
  return out;
}

std::vector<long> summary_checkpoints(long T) {
  std::vector<long> out;
  const long stride = std::max(1L, T / 50);
  for (long t = stride; t <= T; t += stride) out.push_back(t);
  if (out.empty() || out.back() != T) out.push_back(T);
  return out;
}

SummaryBlock summarize(const std::string& scenario_id, PolicyKind policy, long T,
                       const std::vector<const TrajectoryMetrics*>& runs) {
  SummaryBlock block;
  block.scenario_id = scenario_id;
  block.policy = policy;
  block.replicates = static_cast<int>(runs.size());
  block.checkpoints = summary_checkpoints(T);
  block.mean.assign(kMetricCount, std::vector<double>(block.checkpoints.size(), 0.0));
  block.stddev = block.mean;
  const double n = static_cast<double>(runs.size());
  for (std::size_t metric = 0; metric < kMetricCount; ++metric) {
    for (std::size_t c = 0; c < block.checkpoints.size(); ++c) {
      const auto index = static_cast<std::size_t>(block.checkpoints[c] - 1);
      double sum = 0.0;
      for (const auto* run : runs) sum += metric_series(*run, metric)[index];
      const double mean = runs.empty() ? 0.0 : sum / n;
      double squares = 0.0;
      for (const auto* run : runs) {
        const double dev = metric_series(*run, metric)[index] - mean;
        squares += dev * dev;
      }
      block.mean[metric][c] = mean;
      block.stddev[metric][c] = runs.size() > 1 ? std::sqrt(squares / (n - 1.0)) : 0.0;
    }
  }
  return block;
}

GridResult run_grid(const std::vector<Scenario>& scenarios, int threads) {
  if (scenarios.empty()) throw Error(ErrorCode::InvalidArgument, "scenario list is empty");
  for (const auto& scenario : scenarios) scenario.validate();

  GridResult result;
  result.scenarios = scenarios;
  std::vector<ScenarioResources> resources;
  resources.reserve(scenarios.size());
  for (const auto& scenario : scenarios) resources.push_back(prepare_scenario(scenario));

  struct Job {
    std::size_t scenario;
    int replicate;
    std::size_t first_slot;
  };
  std::vector<Job> jobs;
  std::size_t slots = 0;
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    for (int r = 0; r < scenarios[s].replicates; ++r) {
      jobs.push_back({s, r, slots});
      slots += scenarios[s].policies.size();
    }
  }
  std::vector<std::optional<TrajectoryMetrics>> outcomes(slots);
  std::vector<std::optional<ReplicateFailure>> failures(slots);

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const Job& job = jobs[j];
      const Scenario& scenario = scenarios[job.scenario];
      const std::uint64_t seed = replicate_seed(scenario.base_seed, scenario.id, job.replicate);
      const MarketDraw market = draw_market(scenario, seed);
      for (std::size_t p = 0; p < scenario.policies.size(); ++p) {
        try {
          outcomes[job.first_slot + p] = run_trajectory(scenario, scenario.policies[p], job.replicate,
                                                        market, resources[job.scenario]);
        } catch (const std::exception& e) {
          failures[job.first_slot + p] =
              ReplicateFailure{scenario.id, scenario.policies[p], job.replicate, seed, e.what()};
        }
      }
    }
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < slots; ++i) {
    if (outcomes[i]) result.trajectories.push_back(std::move(*outcomes[i]));
    if (failures[i]) result.failures.push_back(std::move(*failures[i]));
  }
  for (const auto& scenario : scenarios) {
    for (PolicyKind policy : scenario.policies) {
      result.summaries.push_back(summarize(scenario.id, policy, scenario.T, result.select(scenario.id, policy)));
    }
  }
  return result;
}

PairedComparison compare_terminal(const GridResult& grid, const std::string& scenario_id,
                                  std::size_t metric, PolicyKind a, PolicyKind b) {
  const auto runs_a = grid.select(scenario_id, a);
  const auto runs_b = grid.select(scenario_id, b);
  std::vector<double> differences;
  for (const auto* ra : runs_a) {
    for (const auto* rb : runs_b) {
      if (rb->replicate != ra->replicate) continue;
      differences.push_back(metric_series(*rb, metric).back() - metric_series(*ra, metric).back());
    }
  }
  PairedComparison out;
  out.pairs = static_cast<int>(differences.size());
  if (differences.empty()) return out;
  double sum = 0.0;
  for (double v : differences) sum += v;
  out.mean_difference = sum / out.pairs;
  if (out.pairs > 1) {
    double squares = 0.0;
    for (double v : differences) squares += (v - out.mean_difference) * (v - out.mean_difference);
    out.standard_error = std::sqrt(squares / (out.pairs - 1.0)) / std::sqrt(static_cast<double>(out.pairs));
  }
  return out;
}

}  // namespace oormlp
