#include "oormlp/pricing.hpp"

#include <cmath>
#include <sstream>

#include "oormlp/error.hpp"

namespace oormlp {

namespace {

// phi with the density-free edges of bounded supports mapped to -inf / +inf,
// which keeps bracketing well defined.
// phi through the hazard, which stays accurate where f and 1 - F both underflow.
// Density-free regions map to -inf (below the support) or +inf (above it).
double phi_for_search(const NoiseModel& noise, double v) {
  const double h = noise.hazard(v);
  if (h > 0.0 && std::isfinite(h)) return v - 1.0 / h;
  return noise.cdf(v) <= 0.0 ? -HUGE_VAL : HUGE_VAL;
}

constexpr double kInitialHalfWidth = 8.0;
constexpr int kMaxExpansions = 10;
constexpr int kBisectionSteps = 60;

}  // namespace

double virtual_valuation(const NoiseModel& noise, double v) {
  const double h = noise.hazard(v);
  if (!(h > 0.0 && std::isfinite(h)) && !(noise.pdf(v) > 0.0)) {
    std::ostringstream msg;
    msg << "density of " << noise.describe() << " vanishes at v=" << v;
    throw Error(ErrorCode::ZeroDensity, msg.str());
  }
  return std::isfinite(h) ? v - 1.0 / h : v;
}

double inverse_virtual_valuation(const NoiseModel& noise, double y, double root_tolerance) {
  if (!noise.is_distribution()) {
    throw Error(ErrorCode::NotADistribution, "pricing requires a distributional noise model");
  }
  double lo = -kInitialHalfWidth;
  double hi = kInitialHalfWidth;
  int expansions = 0;
  while (!(phi_for_search(noise, lo) <= y && phi_for_search(noise, hi) >= y)) {
    if (++expansions > kMaxExpansions) {
      std::ostringstream msg;
      msg << "no sign change of phi(x) - " << y << " on [" << lo << ", " << hi << "] for "
          << noise.describe();
      throw Error(ErrorCode::BracketingFailure, msg.str());
    }
    lo *= 2.0;
    hi *= 2.0;
  }
  for (int i = 0; i < kBisectionSteps + expansions; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (phi_for_search(noise, mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // A root on the edge of the support can leave the midpoint just outside it.
  double root = 0.5 * (lo + hi);
  double miss = std::abs(phi_for_search(noise, root) - y);
  for (double candidate : {lo, hi}) {
    const double m = std::abs(phi_for_search(noise, candidate) - y);
    if (m < miss) {
      root = candidate;
      miss = m;
    }
  }
  if (!(miss <= root_tolerance)) {
    std::ostringstream msg;
    msg << "bisection ended at x=" << root << " with |phi(x) - y| = " << miss << " for "
        << noise.describe();
    throw Error(ErrorCode::BracketingFailure, msg.str());
  }
  return root;
}

double expected_revenue(const NoiseModel& noise, double mean_valuation, double price,
                        std::int64_t t) {
  if (price == 0.0) return 0.0;
  if (noise.family() == NoiseFamily::Periodic) {
    const double valuation = mean_valuation + std::sin(noise.omega() * static_cast<double>(t));
    return valuation >= price ? price : 0.0;
  }
  return price * noise.sf(price - mean_valuation);
}

PricingFunction::PricingFunction(NoiseModel noise, PricingOptions options)
    : noise_(noise), options_(options) {
  if (!noise_.is_distribution()) {
    throw Error(ErrorCode::NotADistribution, "pricing requires a distributional noise model");
  }
  if (options_.table_radius <= 0.0 || options_.table_spacing <= 0.0) return;
  const auto nodes = static_cast<std::size_t>(std::floor(2.0 * options_.table_radius / options_.table_spacing)) + 1;
  table_.resize(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    try {
      table_[i] = inverse_virtual_valuation(
          noise_, -options_.table_radius + options_.table_spacing * static_cast<double>(i),
          options_.root_tolerance);
    } catch (const Error&) {
      // phi does not cover the table range (bounded support); use direct solves.
      table_.clear();
      return;
    }
    // A non-monotone phi would make table brackets meaningless.
    if (i > 0 && !(table_[i] > table_[i - 1])) {
      table_.clear();
      return;
    }
  }
}

double PricingFunction::inverse_direct(double y) const {
  return inverse_virtual_valuation(noise_, y, options_.root_tolerance);
}

double PricingFunction::inverse(double y) const {
  if (table_.empty()) return inverse_direct(y);
  const double position = (y + options_.table_radius) / options_.table_spacing;
  if (!(position >= 0.0) || position >= static_cast<double>(table_.size() - 1)) {
    return inverse_direct(y);
  }
  const auto i = static_cast<std::size_t>(position);
  return refine_in_bracket(y, table_[i], table_[i + 1]);
}

// Illinois-modified regula falsi on a bracket known to contain the root.
double PricingFunction::refine_in_bracket(double y, double lo, double hi) const {
  double f_lo = phi_for_search(noise_, lo) - y;
  double f_hi = phi_for_search(noise_, hi) - y;
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (!(f_lo < 0.0 && f_hi > 0.0)) return inverse_direct(y);
  int side = 0;
  for (int i = 0; i < 100; ++i) {
    const double x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    const double fx = phi_for_search(noise_, x) - y;
    if (std::abs(fx) <= 1e-3 * options_.root_tolerance || hi - lo <= 1e-15 * (1.0 + std::abs(x))) {
      return x;
    }
    if (fx < 0.0) {
      lo = x;
      f_lo = fx;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = x;
      f_hi = fx;
      if (side == 1) f_lo *= 0.5;
      side = 1;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oormlp
