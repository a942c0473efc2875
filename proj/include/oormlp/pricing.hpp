#pragma once
// Virtual valuation phi(v) = v - (1 - F(v)) / f(v), its inverse, and the
// revenue-maximizing price map g(v) = v + phi^{-1}(-v).

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "oormlp/noise.hpp"

namespace oormlp {

// Throws ZeroDensity when f(v) = 0.
double virtual_valuation(const NoiseModel& noise, double v);

// Root of phi(x) = y by bracket expansion from [-8, 8] and bisection.
double inverse_virtual_valuation(const NoiseModel& noise, double y, double root_tolerance = 1e-10);

// p * P(V >= p) for V = mean_valuation + eta. Periodic noise is evaluated
// deterministically at decision index t.
double expected_revenue(const NoiseModel& noise, double mean_valuation, double price,
                        std::int64_t t = 0);

struct PricingOptions {
  double root_tolerance = 1e-10;
  // phi^{-1} lookup table over [-table_radius, table_radius]; 0 disables it.
  double table_radius = 12.0;
  double table_spacing = 1e-3;
};

// Immutable once constructed; share one instance across trajectories.
class PricingFunction {
 public:
  explicit PricingFunction(NoiseModel noise, PricingOptions options = {});

  const NoiseModel& noise() const noexcept { return noise_; }
  bool has_table() const noexcept { return !table_.empty(); }

  double virtual_valuation(double v) const { return oormlp::virtual_valuation(noise_, v); }
  // Direct root finding, no table.
  double inverse_direct(double y) const;
  // Table bracket plus local refinement, falling back to direct outside it.
  double inverse(double y) const;
  double optimal_price(double v) const { return v + inverse(-v); }

 private:
  double refine_in_bracket(double y, double lo, double hi) const;

  NoiseModel noise_;
  PricingOptions options_;
  std::vector<double> table_;  // table_[i] = phi^{-1}(y_0 + i * spacing)
};

}  // namespace oormlp
