#include <gtest/gtest.h>

#include <random>

#include "oormlp/choice_model.hpp"
#include "oracles.hpp"

using namespace oormlp;

TEST(ChoiceModel, SaleStatusTieCountsAsSale) {
  EXPECT_EQ(sale_status(1.0, 1.0), 1);
  EXPECT_EQ(sale_status(1.0, 1.0000001), -1);
  EXPECT_EQ(sale_status(2.0, 1.0), 1);
  const std::vector<double> theta{1.0, -2.0}, x{0.5, 0.25};
  EXPECT_DOUBLE_EQ(willingness_to_pay(theta, x, 0.1), 0.1);
}

TEST(ChoiceModel, ParameterSpaceMembership) {
  EXPECT_TRUE((DemandParameter{{1, 1, 1, 0, 0}, 3, 3.0}).in_parameter_space());
  EXPECT_FALSE((DemandParameter{{1, 1, 1, 0.1, 0}, 3, 3.5}).in_parameter_space());
  EXPECT_FALSE((DemandParameter{{1, 1, 1.5, 0, 0}, 3, 3.0}).in_parameter_space());
}

TEST(ChoiceModel, LogStoresColumns) {
  TransactionLog log(2);
  log.append(std::vector<double>{1.0, 2.0}, 0.5, 1);
  log.append(std::vector<double>{3.0, 4.0}, 0.7, -1);
  EXPECT_EQ(log.size(), 2u);
  EXPECT_DOUBLE_EQ(log.column(1)[0], 2.0);
  EXPECT_DOUBLE_EQ(log.column(0)[1], 3.0);
  const auto r = log.record(1);
  EXPECT_EQ(r.sale, -1);
  EXPECT_DOUBLE_EQ(r.price, 0.7);
  EXPECT_THROW(log.append(std::vector<double>{1.0}, 0.1, 1), std::exception);
}

TEST(ChoiceModel, LossMatchesDirectEvaluation) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = oracle::random_instance(rng);
    std::vector<double> theta(inst.log.dimension(), 0.3);
    EXPECT_NEAR(neg_log_likelihood(theta, inst.log, inst.noise), oracle::loss(theta, inst.log, inst.noise), 1e-12);
  }
}

TEST(ChoiceModel, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = oracle::random_instance(rng);
    const std::size_t d = inst.log.dimension();
    std::vector<double> theta(d);
    for (auto& t : theta) t = std::uniform_real_distribution<double>(-1, 1)(rng);
    const Vector grad = score(theta, inst.log, inst.noise);
    for (std::size_t j = 0; j < d; ++j) {
      auto plus = theta, minus = theta;
      plus[j] += 1e-6;
      minus[j] -= 1e-6;
      const double fd = (oracle::loss(plus, inst.log, inst.noise) - oracle::loss(minus, inst.log, inst.noise)) / 2e-6;
      EXPECT_NEAR(grad[j], fd, 1e-6);
    }
  }
}

TEST(ChoiceModel, ConvexityWitness) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(-2, 2), mix(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = oracle::random_instance(rng);
    const std::size_t d = inst.log.dimension();
    std::vector<double> a(d), b(d), c(d);
    for (std::size_t j = 0; j < d; ++j) {
      a[j] = unit(rng);
      b[j] = unit(rng);
    }
    const double w = mix(rng);
    for (std::size_t j = 0; j < d; ++j) c[j] = w * a[j] + (1 - w) * b[j];
    EXPECT_LE(neg_log_likelihood(c, inst.log, inst.noise),
              w * neg_log_likelihood(a, inst.log, inst.noise) + (1 - w) * neg_log_likelihood(b, inst.log, inst.noise) +
                  1e-10);
  }
}

TEST(ChoiceModel, FloorClampsImpossibleOutcomes) {
  TransactionLog log(1);
  log.append(std::vector<double>{1.0}, 100.0, 1);  // a sale at a price far above any valuation
  NegLogLikelihood nll(log, NoiseModel::laplace());
  const std::vector<double> theta{0.0};
  const auto eval = nll.value(theta);
  EXPECT_TRUE(std::isfinite(eval.value));
  EXPECT_NEAR(eval.value, 100.0 + std::log(2.0), 1e-9);

  NegLogLikelihood g(log, NoiseModel::gaussian());
  EXPECT_TRUE(std::isfinite(g.value(theta).value));
}

TEST(ChoiceModel, Norms) {
  const std::vector<double> v{3.0, -4.0, 0.0};
  EXPECT_DOUBLE_EQ(l1_norm(v), 7.0);
  EXPECT_DOUBLE_EQ(l2_norm_squared(v), 25.0);
  EXPECT_DOUBLE_EQ(sup_norm(v), 4.0);
}
