#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oormlp/error.hpp"
#include "oormlp/pricing.hpp"
#include "oracles.hpp"

using namespace oormlp;

TEST(Pricing, VirtualValuationHandValues) {
  EXPECT_NEAR(virtual_valuation(NoiseModel::gaussian(), 0.0), -0.5 * std::sqrt(2 * std::numbers::pi), 1e-14);
  // Laplace right of the location: (1 - F)/f = b.
  EXPECT_NEAR(virtual_valuation(NoiseModel::laplace(0.0, 2.0), 1.0), 1.0 - 2.0, 1e-14);
  EXPECT_NEAR(virtual_valuation(NoiseModel::uniform(0.0, 1.0), 0.3), 2 * 0.3 - 1.0, 1e-14);
  EXPECT_THROW(virtual_valuation(NoiseModel::uniform(0.0, 1.0), 2.0), Error);
}

TEST(Pricing, InverseRoundTrip) {
  const auto g = NoiseModel::gaussian();
  for (double y : {-30.0, -5.0, -1.0, 0.0, 2.5, 40.0}) {
    const double x = inverse_virtual_valuation(g, y);
    EXPECT_NEAR(virtual_valuation(g, x), y, 1e-9);
  }
}

TEST(Pricing, UniformClosedForm) {
  const PricingFunction price(NoiseModel::uniform(0.0, 1.0));
  for (int i = 0; i < 100; ++i) {
    const double v = i / 99.0;
    EXPECT_NEAR(price.optimal_price(v), (1 + v) / 2, 1e-10);
  }
}

TEST(Pricing, GaussianMatchesRevenueGrid) {
  const auto noise = NoiseModel::gaussian();
  const PricingFunction price(noise);
  for (int i = 0; i < 25; ++i) {
    const double v = -3.0 + 6.0 * i / 24.0;
    const double oracle_p = oracle::revenue_maximizer(noise, v, 0.0, std::max(v, 0.0) + 6.0);
    EXPECT_NEAR(price.optimal_price(v), oracle_p, 1e-3) << v;
  }
}

TEST(Pricing, OnePriceIsOneLipschitzAndMonotone) {
  for (const auto& noise : {NoiseModel::gaussian(), NoiseModel::laplace(), NoiseModel::gaussian(0.3, 0.5)}) {
    const PricingFunction price(noise);
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> v(-4, 4);
    for (int i = 0; i < 2000; ++i) {
      const double a = v(rng), b = v(rng);
      const double ga = price.optimal_price(a), gb = price.optimal_price(b);
      EXPECT_LE(std::abs(ga - gb), std::abs(a - b) + 1e-9);
      if (a < b) {
        EXPECT_LE(ga, gb + 1e-9);
      }
    }
  }
}

TEST(Pricing, TableAgreesWithDirectSolve) {
  const PricingFunction price(NoiseModel::gaussian());
  ASSERT_TRUE(price.has_table());
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> y(-15, 15);
  for (int i = 0; i < 1000; ++i) {
    const double q = y(rng);
    EXPECT_NEAR(price.inverse(q), price.inverse_direct(q), 1e-9) << q;
  }
}

TEST(Pricing, UniformFallsBackWithoutTable) {
  const PricingFunction price(NoiseModel::uniform(0.0, 1.0));
  EXPECT_NEAR(price.optimal_price(0.5), 0.75, 1e-10);
}

TEST(Pricing, ExpectedRevenue) {
  const auto g = NoiseModel::gaussian();
  EXPECT_NEAR(expected_revenue(g, 1.0, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(expected_revenue(g, 0.0, 2.0), 2.0 * g.sf(2.0), 1e-15);
  EXPECT_EQ(expected_revenue(g, 0.0, 0.0), 0.0);
  const auto periodic = NoiseModel::periodic(1.0);
  // Valuation 1 + sin(2) >= 1.5 is a sure sale.
  EXPECT_DOUBLE_EQ(expected_revenue(periodic, 1.0, 1.5, 2), 1.5);
  EXPECT_DOUBLE_EQ(expected_revenue(periodic, 1.0, 2.5, 2), 0.0);
}
