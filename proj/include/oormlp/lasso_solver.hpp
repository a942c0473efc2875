#pragma once
// Penalized maximum likelihood over the l1 ball:
//   minimize L_t(theta) + lambda * ||theta||_1  subject to ||theta||_1 <= W
// by projected proximal gradient with backtracking.

#include <cstddef>
#include <span>
#include <vector>

#include "oormlp/choice_model.hpp"

namespace oormlp {

struct SolverSettings {
  int max_iterations = 500;
  double kkt_tolerance = 1e-7;
  double step_shrink = 0.5;
  double initial_step = 1.0;
  bool warm_start = true;
  // Re-solve only every k-th decision point. 1 reproduces the per-step algorithm.
  int resolve_every = 1;

  void validate() const;
};

struct SolverResult {
  Vector theta;
  int iterations_used = 0;
  double kkt_residual = 0.0;
  double objective = 0.0;
  bool converged = false;
  std::size_t clamped_records = 0;
  // Objective after each accepted step, starting with the initial point.
  std::vector<double> objective_trace;
};

// sign(v_i) * max(|v_i| - kappa, 0)
Vector soft_threshold(std::span<const double> v, double kappa);

// Euclidean projection onto {||theta||_1 <= W} (sort-based threshold search).
Vector project_l1_ball(std::span<const double> v, double W);

// Composite gradient mapping norm at `reference_step`; zero iff theta is optimal.
double kkt_residual(std::span<const double> theta, const TransactionLog& log, double lambda, double W,
                    const NoiseModel& noise, double reference_step = 1.0);

SolverResult solve_lasso(const TransactionLog& log, double lambda, double W, const NoiseModel& noise,
                         std::span<const double> theta_init, const SolverSettings& settings = {});

}  // namespace oormlp
