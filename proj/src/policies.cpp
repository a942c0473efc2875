#include "oormlp/policies.hpp"

#include <bit>
#include <string>

#include "oormlp/error.hpp"
#include "oormlp/kernels.hpp"

namespace oormlp {

namespace {

void validate_setup(const PolicySetup& setup) {
  if (setup.dimension == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (!setup.pricing) throw Error(ErrorCode::InvalidArgument, "policy needs a pricing function");
  if (!(setup.l1_budget > 0.0)) throw Error(ErrorCode::InvalidArgument, "W must be positive");
  setup.solver.validate();
}

double inner(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "context length differs from d");
  return kernels::dot(a, b);
}

}  // namespace

std::string_view to_string(PolicyKind kind) noexcept {
  switch (kind) {
    case PolicyKind::Oormlp: return "oormlp";
    case PolicyKind::Rmlp: return "rmlp";
    case PolicyKind::Oracle: return "oracle";
  }
  return "unknown";
}

PolicyKind parse_policy_kind(std::string_view name) {
  for (auto kind : {PolicyKind::Oormlp, PolicyKind::Rmlp, PolicyKind::Oracle}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown policy '" + std::string(name) + "'");
}

OormlpPolicy::OormlpPolicy(PolicySetup setup)
    : setup_(std::move(setup)),
      state_{0, TransactionLog(setup_.dimension),
             RegularizationState(setup_.dimension, setup_.alpha, setup_.steepness, setup_.c_lambda),
             Vector(setup_.dimension, 0.0), SolverResult{}} {
  validate_setup(setup_);
}

double OormlpPolicy::post_price(std::span<const double> x) {
  return setup_.pricing->optimal_price(inner(state_.theta_hat, x));
}

void OormlpPolicy::observe(std::span<const double> x, double price, int sale) {
  state_.records.append(x, price, sale);
  state_.regularization.observe(x);
  ++state_.t;
  if (state_.t % setup_.solver.resolve_every != 0) return;

  const Vector cold(setup_.dimension, 0.0);
  std::span<const double> start = setup_.solver.warm_start ? std::span<const double>(state_.theta_hat)
                                                           : std::span<const double>(cold);
  try {
    state_.last_solve = solve_lasso(state_.records, state_.regularization.lambda(),
                                    setup_.l1_budget, setup_.assumed_noise, start, setup_.solver);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(e.what()) + " [oormlp t=" + std::to_string(state_.t) + "]");
  }
  state_.theta_hat = state_.last_solve.theta;
}

int rmlp_episode(long t) noexcept {
  return t < 1 ? 0 : std::bit_width(static_cast<unsigned long>(t)) - 1;
}

bool is_rmlp_refit_point(long t) noexcept {
  return t >= 2 && std::has_single_bit(static_cast<unsigned long>(t));
}

RmlpPolicy::RmlpPolicy(PolicySetup setup)
    : setup_(std::move(setup)),
      episode_records_(setup_.dimension),
      theta_hat_(setup_.dimension, 0.0) {
  validate_setup(setup_);
}

double RmlpPolicy::post_price(std::span<const double> x) {
  if (is_rmlp_refit_point(t_ + 1)) refit();
  return setup_.pricing->optimal_price(inner(theta_hat_, x));
}

void RmlpPolicy::refit() {
  const auto tau = static_cast<long>(episode_records_.size());
  SquareMatrix outer(setup_.dimension);
  Vector x(setup_.dimension);
  for (long s = 0; s < tau; ++s) {
    for (std::size_t j = 0; j < setup_.dimension; ++j) x[j] = episode_records_.column(j)[s];
    kernels::rank1_update(1.0, x, outer.data());
  }
  const double diag_sup = outer.diagonal_sup() / static_cast<double>(tau);
  lambda_ = lambda_closed_form(tau, diag_sup, setup_.steepness, setup_.dimension, setup_.alpha,
                               setup_.c_lambda);
  const Vector cold(setup_.dimension, 0.0);
  std::span<const double> start =
      setup_.solver.warm_start ? std::span<const double>(theta_hat_) : std::span<const double>(cold);
  try {
    theta_hat_ = solve_lasso(episode_records_, lambda_, setup_.l1_budget, setup_.assumed_noise, start,
                             setup_.solver)
                     .theta;
  } catch (const Error& e) {
    throw Error(e.code(), std::string(e.what()) + " [rmlp t=" + std::to_string(t_ + 1) + "]");
  }
  episode_records_.clear();
  ++refits_;
}

void RmlpPolicy::observe(std::span<const double> x, double price, int sale) {
  episode_records_.append(x, price, sale);
  ++t_;
}

OraclePolicy::OraclePolicy(PolicySetup setup) : setup_(std::move(setup)) {
  validate_setup(setup_);
  if (setup_.theta0.size() != setup_.dimension) {
    throw Error(ErrorCode::DimensionMismatch, "theta0 length differs from d");
  }
}

double OraclePolicy::post_price(std::span<const double> x) {
  return setup_.pricing->optimal_price(inner(setup_.theta0, x));
}

std::unique_ptr<PricingPolicy> make_policy(PolicyKind kind, const PolicySetup& setup) {
  switch (kind) {
    case PolicyKind::Oormlp: return std::make_unique<OormlpPolicy>(setup);
    case PolicyKind::Rmlp: return std::make_unique<RmlpPolicy>(setup);
    case PolicyKind::Oracle: return std::make_unique<OraclePolicy>(setup);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown policy kind");
}

}  // namespace oormlp
