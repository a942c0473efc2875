#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oormlp/error.hpp"
#include "oormlp/noise.hpp"

using namespace oormlp;

namespace {

long double normal_cdf_ld(long double x) { return 0.5L * std::erfc(-x / std::sqrt(2.0L)); }
long double normal_pdf_ld(long double x) {
  return std::exp(-0.5L * x * x) / std::sqrt(2.0L * std::numbers::pi_v<long double>);
}

double central_difference(const auto& f, double x, double h = 1e-5) { return (f(x + h) - f(x - h)) / (2 * h); }

}  // namespace

TEST(Noise, GaussianMatchesErfc) {
  const auto g = NoiseModel::gaussian(0.5, 2.0);
  for (double x : {-7.0, -1.0, 0.0, 0.5, 3.0, 9.0}) {
    const double z = (x - 0.5) / 2.0;
    EXPECT_NEAR(g.cdf(x), static_cast<double>(normal_cdf_ld(z)), 1e-15);
    EXPECT_NEAR(g.sf(x), static_cast<double>(normal_cdf_ld(-z)), 1e-15);
    EXPECT_NEAR(g.pdf(x), static_cast<double>(normal_pdf_ld(z) / 2.0L), 1e-15);
  }
}

TEST(Noise, GaussianLogCdfDeepTail) {
  const auto g = NoiseModel::gaussian();
  for (double x : {-20.0, -37.5, -40.0, -60.0}) {
    const long double oracle = std::log(normal_cdf_ld(x));
    EXPECT_NEAR(g.log_cdf(x), static_cast<double>(oracle), 1e-9 * std::abs(static_cast<double>(oracle)));
    EXPECT_NEAR(g.log_sf(-x), static_cast<double>(oracle), 1e-9 * std::abs(static_cast<double>(oracle)));
  }
}

TEST(Noise, LaplaceAndCauchyClosedForms) {
  const auto l = NoiseModel::laplace(0.0, 2.0);
  EXPECT_NEAR(l.cdf(-2.0), 0.5 * std::exp(-1.0), 1e-15);
  EXPECT_NEAR(l.sf(4.0), 0.5 * std::exp(-2.0), 1e-15);
  EXPECT_NEAR(l.pdf(2.0), std::exp(-1.0) / 4.0, 1e-15);
  const auto c = NoiseModel::cauchy(1.0, 0.5);
  EXPECT_NEAR(c.cdf(1.5), 0.5 + std::atan(1.0) / std::numbers::pi, 1e-15);
  EXPECT_NEAR(c.pdf(1.0), 1.0 / (std::numbers::pi * 0.5), 1e-15);
}

TEST(Noise, DerivativesMatchFiniteDifferences) {
  for (const auto& noise : {NoiseModel::gaussian(), NoiseModel::laplace(0.3, 1.0), NoiseModel::cauchy()}) {
    for (double x : {-2.5, -0.7, 0.9, 2.2}) {
      EXPECT_NEAR(noise.reverse_hazard(x), central_difference([&](double v) { return noise.log_cdf(v); }, x), 1e-7)
          << noise.describe();
      EXPECT_NEAR(noise.hazard(x), -central_difference([&](double v) { return noise.log_sf(v); }, x), 1e-7);
      EXPECT_NEAR(noise.pdf_derivative(x), central_difference([&](double v) { return noise.pdf(v); }, x), 1e-7);
      EXPECT_NEAR(noise.log_cdf_second(x),
                  central_difference([&](double v) { return noise.reverse_hazard(v); }, x), 1e-6);
      double d_sale = 0.0, d_none = 0.0;
      const double lp_sale = noise.outcome_log_prob(x, +1, &d_sale);
      const double lp_none = noise.outcome_log_prob(x, -1, &d_none);
      EXPECT_NEAR(lp_sale, noise.log_sf(x), 1e-14);
      EXPECT_NEAR(lp_none, noise.log_cdf(x), 1e-14);
      EXPECT_NEAR(d_sale, central_difference([&](double v) { return noise.outcome_log_prob(v, +1, nullptr); }, x), 1e-7);
      EXPECT_NEAR(d_none, central_difference([&](double v) { return noise.outcome_log_prob(v, -1, nullptr); }, x), 1e-7);
    }
  }
}

TEST(Noise, GaussianSteepnessIsHazardAtDomainEdge) {
  // Both ratios are monotone, so the supremum over |x| <= 9 sits at x = 9.
  const long double hazard = normal_pdf_ld(9.0L) / normal_cdf_ld(-9.0L);
  EXPECT_NEAR(steepness(NoiseModel::gaussian(), 3.0), static_cast<double>(hazard), 1e-6);
  EXPECT_NEAR(steepness(NoiseModel::gaussian(), 3.0), 9.1085, 1e-3);
}

TEST(Noise, GaussianFlatnessAtDomainEdge) {
  // -(log F)''(x) = r (x + r), r = f/F, smallest at the right edge.
  const long double r = normal_pdf_ld(9.0L) / normal_cdf_ld(9.0L);
  const double oracle = static_cast<double>(r * (9.0L + r));
  EXPECT_NEAR(flatness(NoiseModel::gaussian(), 3.0) / oracle, 1.0, 1e-4);
}

TEST(Noise, LaplaceConstants) {
  EXPECT_NEAR(steepness(NoiseModel::laplace(0.0, 1.0), 3.0), 1.0, 1e-9);
  EXPECT_NEAR(steepness(NoiseModel::laplace(0.0, 0.5), 1.0), 2.0, 1e-9);
  EXPECT_EQ(flatness(NoiseModel::laplace(), 3.0), 0.0);
}

TEST(Noise, UnsupportedFamiliesThrow) {
  try {
    steepness(NoiseModel::uniform(0.0, 1.0), 3.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundedSteepness);
  }
  try {
    steepness(NoiseModel::cauchy(), 3.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundedSteepness);
  }
  try {
    steepness(NoiseModel::periodic(0.01), 3.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotADistribution);
  }
}

TEST(Noise, SampleMoments) {
  Rng rng(11);
  const int n = 200000;
  double sg = 0, sg2 = 0, sl = 0, sl2 = 0, su = 0;
  const auto g = NoiseModel::gaussian(1.0, 2.0);
  const auto l = NoiseModel::laplace(0.0, 1.5);
  const auto u = NoiseModel::uniform(-1.0, 3.0);
  for (int i = 0; i < n; ++i) {
    const double a = g.sample(i, rng), b = l.sample(i, rng);
    sg += a;
    sg2 += a * a;
    sl += b;
    sl2 += b * b;
    su += u.sample(i, rng);
  }
  EXPECT_NEAR(sg / n, 1.0, 0.03);
  EXPECT_NEAR(sg2 / n - (sg / n) * (sg / n), 4.0, 0.06);
  EXPECT_NEAR(sl / n, 0.0, 0.02);
  EXPECT_NEAR(sl2 / n, 2 * 1.5 * 1.5, 0.08);
  EXPECT_NEAR(su / n, 1.0, 0.01);
}

TEST(Noise, PeriodicIsDeterministicSine) {
  const auto p = NoiseModel::periodic(0.01);
  Rng rng(3);
  for (std::int64_t t : {1, 50, 1000}) EXPECT_DOUBLE_EQ(p.sample(t, rng), std::sin(0.01 * static_cast<double>(t)));
  EXPECT_FALSE(p.is_distribution());
  EXPECT_THROW(p.cdf(0.0), Error);
}

TEST(Noise, FamilyNamesRoundTrip) {
  for (auto f : {NoiseFamily::Gaussian, NoiseFamily::Laplace, NoiseFamily::Periodic, NoiseFamily::Cauchy,
                 NoiseFamily::Uniform}) {
    EXPECT_EQ(parse_noise_family(to_string(f)), f);
  }
  EXPECT_THROW(parse_noise_family("student"), Error);
}

TEST(Noise, UniformOpenStaysInside) {
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform_open(rng);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}
