#include <gtest/gtest.h>

#include <cmath>

#include "oormlp/error.hpp"
#include "oormlp/simulator.hpp"

using namespace oormlp;

namespace {

Scenario small_scenario(const std::string& id, NoiseModel noise = NoiseModel::gaussian()) {
  Scenario s;
  s.id = id;
  s.theta0 = {1, 1, 1, 0, 0, 0, 0, 0, 0, 0};
  s.T = 120;
  s.replicates = 3;
  s.noise_true = noise;
  return s;
}

}  // namespace

TEST(Simulator, ContextRescaling) {
  // Drawn through the public generator with a fixed stream, then checked
  // against the rule: unchanged when inside the box, divided by the sup norm otherwise.
  Rng a(71), b(71);
  for (int i = 0; i < 1000; ++i) {
    const Vector x = generate_context(a, 3);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector raw(3);
    for (auto& r : raw) r = normal(b);
    double m = 0.0;
    for (double r : raw) m = std::max(m, std::abs(r));
    for (std::size_t j = 0; j < 3; ++j) ASSERT_DOUBLE_EQ(x[j], m > 1.0 ? raw[j] / m : raw[j]);
  }
}

TEST(Simulator, RescaleProbabilityMatchesClosedForm) {
  Rng rng(72);
  const int n = 100000;
  int rescaled = 0;
  for (int i = 0; i < n; ++i) {
    const Vector x = generate_context(rng, 10);
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    // A rescaled draw has an entry exactly at +-1.
    rescaled += (m == 1.0);
  }
  const double p1 = std::erf(1.0 / std::sqrt(2.0));
  EXPECT_NEAR(static_cast<double>(rescaled) / n, 1.0 - std::pow(p1, 10), 0.01);
}

TEST(Simulator, ReplicateSeedIsStableAndDistinct) {
  EXPECT_EQ(replicate_seed(1, "a", 0), replicate_seed(1, "a", 0));
  EXPECT_NE(replicate_seed(1, "a", 0), replicate_seed(1, "a", 1));
  EXPECT_NE(replicate_seed(1, "a", 0), replicate_seed(1, "b", 0));
  EXPECT_NE(replicate_seed(1, "a", 0), replicate_seed(2, "a", 0));
}

TEST(Simulator, OracleHasZeroRegret) {
  const auto s = small_scenario("oracle");
  const auto m = run_trajectory(s, PolicyKind::Oracle, 0);
  for (double r : m.cumulative_regret) EXPECT_EQ(r, 0.0);
  EXPECT_EQ(m.cumulative_regret.size(), 120u);
}

TEST(Simulator, SingleStepRegret) {
  auto s = small_scenario("single");
  s.T = 1;
  const auto m = run_trajectory(s, PolicyKind::Oormlp, 0);
  const MarketDraw market = draw_market(s, replicate_seed(s.base_seed, s.id, 0));
  double v = 0.0;
  for (std::size_t j = 0; j < 10; ++j) v += s.theta0[j] * market.context(1)[j];
  // Independent revenue maximizer by golden section on p (1 - Phi(p - v)).
  const auto revenue = [&](double p) { return p * 0.5 * std::erfc((p - v) / std::sqrt(2.0)); };
  double a = 0.0, b = v + 10.0;
  for (int i = 0; i < 200; ++i) {
    const double c = b - 0.618033988749895 * (b - a), d = a + 0.618033988749895 * (b - a);
    if (revenue(c) > revenue(d)) b = d; else a = c;
  }
  // g(0) solves p = (1 - Phi(p)) / phi(p).
  double lo = 0.0, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double p = 0.5 * (lo + hi);
    const double f = p - 0.5 * std::erfc(p / std::sqrt(2.0)) / (std::exp(-0.5 * p * p) / std::sqrt(2 * M_PI));
    (f < 0 ? lo : hi) = p;
  }
  const double g0 = 0.5 * (lo + hi);
  ASSERT_EQ(m.cumulative_regret.size(), 1u);
  EXPECT_NEAR(m.posted_price[0], g0, 1e-9);
  EXPECT_NEAR(m.cumulative_regret[0], revenue(0.5 * (a + b)) - revenue(g0), 1e-9);
}

TEST(Simulator, RegretIsNondecreasingUnderExpectedAccounting) {
  const auto s = small_scenario("mono");
  for (auto p : {PolicyKind::Oormlp, PolicyKind::Rmlp}) {
    const auto m = run_trajectory(s, p, 1);
    for (std::size_t i = 1; i < m.cumulative_regret.size(); ++i) {
      EXPECT_GE(m.cumulative_regret[i], m.cumulative_regret[i - 1]);
    }
  }
}

TEST(Simulator, CommonRandomNumbersAcrossPolicies) {
  const auto s = small_scenario("crn");
  const auto seed = replicate_seed(s.base_seed, s.id, 2);
  const MarketDraw a = draw_market(s, seed);
  auto other = s;
  other.policies = {PolicyKind::Rmlp};
  const MarketDraw b = draw_market(other, seed);
  EXPECT_EQ(a.contexts, b.contexts);
  EXPECT_EQ(a.noise, b.noise);
  EXPECT_EQ(a.noise.size(), 120u);
}

TEST(Simulator, SameSeedIsBitIdentical) {
  const auto s = small_scenario("det", NoiseModel::laplace());
  EXPECT_EQ(run_trajectory(s, PolicyKind::Oormlp, 0), run_trajectory(s, PolicyKind::Oormlp, 0));
  EXPECT_EQ(run_trajectory(s, PolicyKind::Rmlp, 1), run_trajectory(s, PolicyKind::Rmlp, 1));
}

TEST(Simulator, SerialAndParallelGridsAgree) {
  const std::vector<Scenario> scenarios{small_scenario("g1"), small_scenario("g2", NoiseModel::periodic(0.01)),
                                        small_scenario("g3", NoiseModel::cauchy())};
  const auto serial = run_grid(scenarios, 1);
  const auto parallel = run_grid(scenarios, 4);
  ASSERT_EQ(serial.trajectories.size(), 27u);
  EXPECT_EQ(serial.trajectories, parallel.trajectories);
  ASSERT_EQ(serial.summaries.size(), parallel.summaries.size());
  for (std::size_t i = 0; i < serial.summaries.size(); ++i) {
    EXPECT_EQ(serial.summaries[i].mean, parallel.summaries[i].mean);
    EXPECT_EQ(serial.summaries[i].stddev, parallel.summaries[i].stddev);
  }
}

TEST(Simulator, SummaryMatchesDirectRecomputation) {
  const auto grid = run_grid({small_scenario("sum")}, 2);
  const auto runs = grid.select("sum", PolicyKind::Oormlp);
  ASSERT_EQ(runs.size(), 3u);
  const auto& block = grid.summaries.front();
  EXPECT_EQ(block.checkpoints, summary_checkpoints(120));
  for (std::size_t c = 0; c < block.checkpoints.size(); ++c) {
    const auto i = static_cast<std::size_t>(block.checkpoints[c] - 1);
    double mean = 0.0;
    for (const auto* r : runs) mean += r->estimation_error_l1[i];
    mean /= 3.0;
    double var = 0.0;
    for (const auto* r : runs) var += (r->estimation_error_l1[i] - mean) * (r->estimation_error_l1[i] - mean);
    EXPECT_NEAR(block.mean[1][c], mean, 1e-14);
    EXPECT_NEAR(block.stddev[1][c], std::sqrt(var / 2.0), 1e-14);
  }
}

TEST(Simulator, Checkpoints) {
  const auto c = summary_checkpoints(1000);
  ASSERT_EQ(c.size(), 50u);
  EXPECT_EQ(c.front(), 20);
  EXPECT_EQ(c.back(), 1000);
  EXPECT_EQ(summary_checkpoints(10).size(), 10u);
}

TEST(Simulator, SingleCellGridReducesToTrajectory) {
  auto s = small_scenario("one");
  s.replicates = 1;
  const auto grid = run_grid({s}, 1);
  EXPECT_EQ(grid.trajectories.front(), run_trajectory(s, PolicyKind::Oormlp, 0));
}

TEST(Simulator, ScenarioValidation) {
  auto s = small_scenario("bad");
  s.theta0 = {2, 2, 0, 0, 0, 0, 0, 0, 0, 0};  // ||theta0||_1 > W
  EXPECT_THROW(s.validate(), Error);
  s = small_scenario("bad");
  s.alpha = 1.0;
  EXPECT_THROW(s.validate(), Error);
  s = small_scenario("bad");
  s.replicates = 0;
  EXPECT_THROW(s.validate(), Error);
}

TEST(Simulator, PairedComparison) {
  const auto grid = run_grid({small_scenario("pair")}, 1);
  const auto cmp = compare_terminal(grid, "pair", 0, PolicyKind::Oracle, PolicyKind::Oormlp);
  EXPECT_EQ(cmp.pairs, 3);
  const auto runs = grid.select("pair", PolicyKind::Oormlp);
  double mean = 0.0;
  for (const auto* r : runs) mean += r->cumulative_regret.back();
  EXPECT_NEAR(cmp.mean_difference, mean / 3.0, 1e-12);
}
