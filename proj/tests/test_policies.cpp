#include <gtest/gtest.h>

#include <memory>
#include <random>

#include "oormlp/error.hpp"
#include "oormlp/policies.hpp"
#include "oormlp/simulator.hpp"

using namespace oormlp;

namespace {

PolicySetup gaussian_setup(double c_lambda = 0.01) {
  PolicySetup setup;
  setup.dimension = 10;
  setup.l1_budget = 3.0;
  setup.theta0 = {1, 1, 1, 0, 0, 0, 0, 0, 0, 0};
  setup.assumed_noise = NoiseModel::gaussian();
  setup.steepness = steepness(setup.assumed_noise, 3.0);
  setup.alpha = 0.05;
  setup.c_lambda = c_lambda;
  setup.pricing = std::make_shared<PricingFunction>(setup.assumed_noise);
  return setup;
}

double dot(const Vector& a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST(Policies, Names) {
  for (auto k : {PolicyKind::Oormlp, PolicyKind::Rmlp, PolicyKind::Oracle}) EXPECT_EQ(parse_policy_kind(to_string(k)), k);
  EXPECT_THROW(parse_policy_kind("ucb"), Error);
}

TEST(Policies, RmlpEpisodes) {
  EXPECT_EQ(rmlp_episode(1), 0);
  EXPECT_EQ(rmlp_episode(2), 1);
  EXPECT_EQ(rmlp_episode(3), 1);
  EXPECT_EQ(rmlp_episode(4), 2);
  EXPECT_EQ(rmlp_episode(1023), 9);
  EXPECT_EQ(rmlp_episode(1024), 10);
  EXPECT_FALSE(is_rmlp_refit_point(1));
  EXPECT_TRUE(is_rmlp_refit_point(2));
  EXPECT_FALSE(is_rmlp_refit_point(6));
  EXPECT_TRUE(is_rmlp_refit_point(512));
}

TEST(Policies, OraclePricesAtTruth) {
  const auto setup = gaussian_setup();
  OraclePolicy oracle(setup);
  Rng rng(61);
  for (int i = 0; i < 20; ++i) {
    const Vector x = generate_context(rng, 10);
    EXPECT_DOUBLE_EQ(oracle.post_price(x), setup.pricing->optimal_price(dot(setup.theta0, x)));
    oracle.observe(x, 0.0, 1);
  }
  EXPECT_EQ(oracle.t(), 20);
  EXPECT_EQ(oracle.lambda(), 0.0);
}

TEST(Policies, OormlpFirstPriceUsesZeroEstimate) {
  const auto setup = gaussian_setup();
  OormlpPolicy policy(setup);
  Rng rng(62);
  const Vector x = generate_context(rng, 10);
  EXPECT_DOUBLE_EQ(policy.post_price(x), setup.pricing->optimal_price(0.0));
}

TEST(Policies, OormlpEstimateIsPenalizedMleOfHistory) {
  const auto setup = gaussian_setup(0.05);
  OormlpPolicy policy(setup);
  Rng rng(63);
  std::normal_distribution<double> normal;
  for (int t = 1; t <= 60; ++t) {
    const Vector x = generate_context(rng, 10);
    const double p = policy.post_price(x);
    policy.observe(x, p, sale_status(dot(setup.theta0, x) + normal(rng), p));
    const auto& state = policy.state();
    ASSERT_EQ(state.records.size(), static_cast<std::size_t>(t));
    ASSERT_LE(l1_norm(policy.estimate()), 3.0 + 1e-12);
    const double lambda = lambda_closed_form(t, state.regularization.covariance(), setup.steepness, 0.05, 0.05);
    ASSERT_NEAR(policy.lambda(), lambda, 1e-12 * lambda);
    if (state.last_solve.converged) {
      EXPECT_LE(kkt_residual(policy.estimate(), state.records, policy.lambda(), 3.0, setup.assumed_noise), 1e-6);
    }
  }
}

TEST(Policies, RmlpFreezesEstimateInsideEpisodes) {
  const auto setup = gaussian_setup();
  RmlpPolicy policy(setup);
  Rng rng(64);
  std::normal_distribution<double> normal;
  Vector previous(10, 0.0);
  for (long t = 1; t <= 300; ++t) {
    const Vector x = generate_context(rng, 10);
    const double p = policy.post_price(x);
    const Vector current(policy.estimate().begin(), policy.estimate().end());
    if (!is_rmlp_refit_point(t)) {
      EXPECT_EQ(current, previous) << t;
    }
    EXPECT_DOUBLE_EQ(p, setup.pricing->optimal_price(dot(current, x)));
    policy.observe(x, p, sale_status(dot(setup.theta0, x) + normal(rng), p));
    previous = current;
  }
  // Refits at t = 2, 4, ..., 256.
  EXPECT_EQ(policy.refits(), 8);
}

TEST(Policies, Factory) {
  const auto setup = gaussian_setup();
  for (auto k : {PolicyKind::Oormlp, PolicyKind::Rmlp, PolicyKind::Oracle}) {
    EXPECT_EQ(make_policy(k, setup)->kind(), k);
  }
}
