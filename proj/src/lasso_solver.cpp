#include "oormlp/lasso_solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "oormlp/error.hpp"

namespace oormlp {

void SolverSettings::validate() const {
  if (max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "solver.max_iterations must be >= 1");
  if (!(kkt_tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "solver.kkt_tolerance must be > 0");
  if (!(step_shrink > 0.0 && step_shrink < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "solver.step_shrink must lie in (0, 1)");
  }
  if (!(initial_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "solver.initial_step must be > 0");
  if (resolve_every < 1) throw Error(ErrorCode::InvalidArgument, "solver.resolve_every must be >= 1");
}

Vector soft_threshold(std::span<const double> v, double kappa) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double magnitude = std::abs(v[i]) - kappa;
    out[i] = magnitude > 0.0 ? std::copysign(magnitude, v[i]) : 0.0;
  }
  return out;
}

Vector project_l1_ball(std::span<const double> v, double W) {
  if (!(W > 0.0)) throw Error(ErrorCode::InvalidArgument, "l1 radius must be positive");
  if (l1_norm(v) <= W) return Vector(v.begin(), v.end());

  Vector magnitudes(v.size());
  std::transform(v.begin(), v.end(), magnitudes.begin(), [](double x) { return std::abs(x); });
  std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
  double cumulative = 0.0;
  double threshold = 0.0;
  for (std::size_t k = 0; k < magnitudes.size(); ++k) {
    cumulative += magnitudes[k];
    const double candidate = (cumulative - W) / static_cast<double>(k + 1);
    if (magnitudes[k] > candidate) threshold = candidate;
  }
  Vector out = soft_threshold(v, threshold);
  // Rounding can leave the result a hair outside the ball.
  const double norm = l1_norm(out);
  if (norm > W) {
    for (double& x : out) x *= W / norm;
  }
  return out;
}

namespace {

Vector prox_step(std::span<const double> theta, std::span<const double> gradient, double step,
                 double lambda, double W) {
  Vector moved(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) moved[i] = theta[i] - step * gradient[i];
  return project_l1_ball(soft_threshold(moved, step * lambda), W);
}

double mapping_norm(std::span<const double> theta, std::span<const double> gradient, double step,
                    double lambda, double W) {
  const Vector next = prox_step(theta, gradient, step, lambda, W);
  double acc = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) acc += (theta[i] - next[i]) * (theta[i] - next[i]);
  return std::sqrt(acc) / step;
}

void require_finite(double value, std::size_t records, double lambda) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::NonFiniteObjective, "loss is not finite (records=" +
                                                   std::to_string(records) +
                                                   ", lambda=" + std::to_string(lambda) + ")");
  }
}

}  // namespace

double kkt_residual(std::span<const double> theta, const TransactionLog& log, double lambda, double W,
                    const NoiseModel& noise, double reference_step) {
  NegLogLikelihood loss(log, noise);
  Vector gradient(theta.size());
  loss.value_and_gradient(theta, gradient);
  return mapping_norm(theta, gradient, reference_step, lambda, W);
}

SolverResult solve_lasso(const TransactionLog& log, double lambda, double W, const NoiseModel& noise,
                         std::span<const double> theta_init, const SolverSettings& settings) {
  settings.validate();
  if (!(lambda >= 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be nonnegative");
  if (theta_init.size() != log.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "theta_init length does not match the context dimension");
  }

  NegLogLikelihood loss(log, noise);
  const std::size_t d = theta_init.size();
  SolverResult result;
  result.theta = project_l1_ball(theta_init, W);

  Vector gradient(d);
  Vector trial_gradient(d);
  LossEvaluation current = loss.value_and_gradient(result.theta, gradient);
  require_finite(current.value, log.size(), lambda);
  double objective = current.value + lambda * l1_norm(result.theta);
  result.objective_trace.push_back(objective);

  double step = settings.initial_step;
  for (int iteration = 0;; ++iteration) {
    result.kkt_residual = mapping_norm(result.theta, gradient, settings.initial_step, lambda, W);
    if (result.kkt_residual <= settings.kkt_tolerance) {
      result.converged = true;
      break;
    }
    if (iteration == settings.max_iterations) break;

    bool accepted = false;
    while (step > 1e-20) {
      Vector trial = prox_step(result.theta, gradient, step, lambda, W);
      const LossEvaluation candidate = loss.value_and_gradient(trial, trial_gradient);
      require_finite(candidate.value, log.size(), lambda);
      double linear = 0.0;
      double distance = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        const double delta = trial[i] - result.theta[i];
        linear += gradient[i] * delta;
        distance += delta * delta;
      }
      const double model = current.value + linear + distance / (2.0 * step);
      const double trial_objective = candidate.value + lambda * l1_norm(trial);
      const double slack = 1e-12 * std::max(1.0, std::abs(objective));
      if (candidate.value <= model + slack && trial_objective <= objective + slack) {
        result.theta = std::move(trial);
        gradient.swap(trial_gradient);
        current = candidate;
        objective = trial_objective;
        accepted = true;
        break;
      }
      step *= settings.step_shrink;
    }
    if (!accepted) break;
    ++result.iterations_used;
    // Let the step grow back after an acceptance; the loss curvature is often
    // far below the unit-step Lipschitz bound.
    step /= settings.step_shrink;
    result.objective_trace.push_back(objective);
  }
  result.objective = objective;
  result.clamped_records = current.clamped;
  return result;
}

}  // namespace oormlp
