#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oormlp/error.hpp"
#include "oormlp/regularization.hpp"

using namespace oormlp;

TEST(Regularization, ClosedFormHandValue) {
  // c * 4 u sqrt(2 D / t * ln(2d / alpha)) with d = 10, alpha = 0.05, D = 1, t = 4, u = 2, c = 0.5
  const double expected = 0.5 * 4 * 2 * std::sqrt(2.0 * 1.0 / 4.0 * std::log(400.0));
  EXPECT_NEAR(lambda_closed_form(4, 1.0, 2.0, 10, 0.05, 0.5), expected, 1e-14);
}

TEST(Regularization, CovarianceUpdate) {
  SquareMatrix s(2);
  s = update_covariance(s, std::vector<double>{1.0, 2.0}, 1);
  s = update_covariance(s, std::vector<double>{3.0, 0.0}, 2);
  EXPECT_DOUBLE_EQ(s(0, 0), 5.0);
  EXPECT_DOUBLE_EQ(s(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(s(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(s(1, 1), 2.0);
  EXPECT_DOUBLE_EQ(s.diagonal_sup(), 5.0);
}

TEST(Regularization, RecurrenceMatchesClosedForm) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> normal;
  const std::size_t d = 6;
  RegularizationState state(d, 0.1, 3.0, 1.0);
  std::vector<double> x(d), squares(d, 0.0);
  for (long t = 1; t <= 5000; ++t) {
    for (auto& v : x) v = std::clamp(normal(rng), -1.0, 1.0);
    state.observe(x);
    double D = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      squares[j] += x[j] * x[j];
      D = std::max(D, squares[j] / t);
    }
    const double closed = 4 * 3.0 * std::sqrt(2 * D / t * std::log(2.0 * d / 0.1));
    ASSERT_NEAR(state.lambda() / closed, 1.0, 1e-10) << t;
    ASSERT_NEAR(state.diag_sup(), D, 1e-12);
  }
  EXPECT_EQ(state.t(), 5000);
}

TEST(Regularization, IncrementalStep) {
  EXPECT_NEAR(lambda_incremental(2.0, 4, 1.0, 1.0), 2.0 * std::sqrt(0.75), 1e-15);
  EXPECT_THROW(lambda_incremental(1.0, 1, 1.0, 1.0), Error);
}

TEST(Regularization, BudgetOrdering) {
  for (long t : {1L, 10L, 1000L}) {
    EXPECT_GT(lambda_closed_form(t, 0.7, 9.0, 10, 0.05, 0.01), lambda_closed_form(t, 0.7, 9.0, 10, 0.1, 0.01));
    EXPECT_GT(lambda_closed_form(t, 0.7, 9.0, 10, 0.1, 0.01), lambda_closed_form(t, 0.7, 9.0, 10, 0.2, 0.01));
  }
}

TEST(Regularization, Errors) {
  try {
    lambda_closed_form(3, 0.0, 1.0, 10, 0.05, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateCovariance);
  }
  EXPECT_THROW(lambda_closed_form(3, 1.0, 1.0, 10, 1.0, 1.0), Error);
  EXPECT_THROW(lambda_closed_form(3, 1.0, 1.0, 10, 0.0, 1.0), Error);
}
