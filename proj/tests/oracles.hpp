#pragma once
// Independent reference computations shared by the unit tests and the
// acceptance binary. None of these call into the solver or pricing code.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "oormlp/choice_model.hpp"
#include "oormlp/noise.hpp"

namespace oracle {

using oormlp::NoiseModel;
using oormlp::TransactionLog;

// Direct per-record evaluation of t^{-1} sum -log P(y_s | u_s) from the cdf.
inline double loss(const std::vector<double>& theta, const TransactionLog& log, const NoiseModel& noise) {
  double total = 0.0;
  for (std::size_t s = 0; s < log.size(); ++s) {
    double u = log.prices()[s];
    for (std::size_t j = 0; j < theta.size(); ++j) u -= theta[j] * log.column(j)[s];
    const double p = log.sales()[s] > 0 ? 1.0 - noise.cdf(u) : noise.cdf(u);
    total -= std::log(std::max(p, 1e-300));
  }
  return total / static_cast<double>(log.size());
}

inline double l1(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

// Zooming grid search for min L(theta) + lambda ||theta||_1 over ||theta||_1 <= W.
// The objective is convex, so repeatedly refining around the best grid point
// converges to the global minimum.
inline double grid_minimum(const TransactionLog& log, const NoiseModel& noise, double lambda, double W,
                           std::vector<double>* argmin = nullptr) {
  const std::size_t d = log.dimension();
  std::vector<double> center(d, 0.0);
  double half_width = W;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_theta(d, 0.0);
  const int points = d == 1 ? 401 : (d == 2 ? 61 : 21);
  for (int round = 0; round < 12; ++round) {
    std::vector<int> index(d, 0);
    std::vector<double> theta(d);
    while (true) {
      for (std::size_t j = 0; j < d; ++j) {
        theta[j] = center[j] - half_width + 2.0 * half_width * index[j] / (points - 1);
      }
      if (l1(theta) <= W) {
        const double value = loss(theta, log, noise) + lambda * l1(theta);
        if (value < best) {
          best = value;
          best_theta = theta;
        }
      }
      std::size_t k = 0;
      while (k < d && ++index[k] == points) index[k++] = 0;
      if (k == d) break;
    }
    center = best_theta;
    half_width *= 4.0 / (points - 1);
  }
  if (argmin) *argmin = best_theta;
  return best;
}

// Euclidean projection onto the l1 ball by bisection on the soft threshold.
inline std::vector<double> project_l1_by_bisection(const std::vector<double>& v, double W) {
  if (l1(v) <= W) return v;
  double lo = 0.0, hi = 0.0;
  for (double x : v) hi = std::max(hi, std::abs(x));
  for (int i = 0; i < 200; ++i) {
    const double tau = 0.5 * (lo + hi);
    double s = 0.0;
    for (double x : v) s += std::max(std::abs(x) - tau, 0.0);
    (s > W ? lo : hi) = tau;
  }
  const double tau = 0.5 * (lo + hi);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::copysign(std::max(std::abs(v[i]) - tau, 0.0), v[i]);
  return out;
}

// argmax_p p (1 - F(p - v)) by a fine grid and golden-section polish.
inline double revenue_maximizer(const NoiseModel& noise, double v, double lo, double hi) {
  const auto revenue = [&](double p) { return p * noise.sf(p - v); };
  const int n = 20001;
  double best_p = lo, best_r = -1.0;
  for (int i = 0; i < n; ++i) {
    const double p = lo + (hi - lo) * i / (n - 1);
    const double r = revenue(p);
    if (r > best_r) {
      best_r = r;
      best_p = p;
    }
  }
  double a = best_p - (hi - lo) / (n - 1), b = best_p + (hi - lo) / (n - 1);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 100; ++i) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    (revenue(c) > revenue(d) ? b : a) = revenue(c) > revenue(d) ? d : c;
  }
  return 0.5 * (a + b);
}

struct Instance {
  TransactionLog log;
  NoiseModel noise;
  double lambda;
  double W;
};

inline Instance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 3), count(15, 40);
  std::uniform_real_distribution<double> unit(-1.0, 1.0), lam(0.005, 0.2);
  std::normal_distribution<double> normal;
  const std::size_t d = static_cast<std::size_t>(dim(rng));
  const double budgets[] = {0.5, 1.0, 2.0, 3.0};
  const double W = budgets[rng() % 4];
  const NoiseModel noise = rng() % 2 == 0 ? NoiseModel::gaussian() : NoiseModel::laplace();
  std::vector<double> theta(d);
  for (double& t : theta) t = unit(rng);
  TransactionLog log(d);
  const int n = count(rng);
  std::vector<double> x(d);
  for (int s = 0; s < n; ++s) {
    for (double& xi : x) xi = unit(rng);
    double v = normal(rng);
    for (std::size_t j = 0; j < d; ++j) v += theta[j] * x[j];
    const double p = 1.0 + 0.8 * unit(rng);
    log.append(x, p, v >= p ? 1 : -1);
  }
  return {std::move(log), noise, lam(rng), W};
}

}  // namespace oracle
