#include "oormlp/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "oormlp/error.hpp"
#include "oormlp/kernels.hpp"
#include "oormlp/lasso_solver.hpp"
#include "oormlp/regularization.hpp"

namespace oormlp {

double monte_carlo_stderr(double bound, int n) noexcept {
  if (n <= 0) return 0.0;
  const double b = std::clamp(bound, 0.0, 1.0);
  return std::sqrt(b * (1.0 - b) / n);
}

EnvelopeReport make_report(const std::vector<bool>& violations, double alpha) {
  EnvelopeReport report;
  report.trajectories_checked = static_cast<int>(violations.size());
  report.any_violation = violations;
  const auto count = std::count(violations.begin(), violations.end(), true);
  report.violation_fraction =
      violations.empty() ? 0.0 : static_cast<double>(count) / static_cast<double>(violations.size());
  report.alpha = alpha;
  report.monte_carlo_stderr = monte_carlo_stderr(alpha, report.trajectories_checked);
  return report;
}

ScoreProcess score_process(const TransactionLog& records, std::span<const double> theta0,
                           const NoiseModel& noise) {
  const std::size_t d = records.dimension();
  if (theta0.size() != d) throw Error(ErrorCode::DimensionMismatch, "theta0 length differs from d");
  ScoreProcess out;
  out.score_sup.reserve(records.size());
  out.diag_sup.reserve(records.size());
  Vector weighted(d, 0.0);
  Vector squares(d, 0.0);
  const auto prices = records.prices();
  const auto sales = records.sales();
  for (std::size_t s = 0; s < records.size(); ++s) {
    double margin = prices[s];
    for (std::size_t j = 0; j < d; ++j) margin -= theta0[j] * records.column(j)[s];
    double dlogp = 0.0;
    noise.outcome_log_prob(margin, sales[s] > 0.0 ? 1 : -1, &dlogp);
    const double xi = -dlogp;
    double score_sup = 0.0;
    double diag_sup = 0.0;
    const double inv_t = 1.0 / static_cast<double>(s + 1);
    for (std::size_t j = 0; j < d; ++j) {
      const double x = records.column(j)[s];
      weighted[j] += xi * x;
      squares[j] += x * x;
      score_sup = std::max(score_sup, std::abs(weighted[j]) * inv_t);
      diag_sup = std::max(diag_sup, squares[j] * inv_t);
    }
    out.score_sup.push_back(score_sup);
    out.diag_sup.push_back(diag_sup);
  }
  return out;
}

double score_bound(long t, double diag_sup, double steepness, std::size_t d, double alpha) {
  return steepness *
         std::sqrt(2.0 * diag_sup / static_cast<double>(t) * std::log(2.0 * static_cast<double>(d) / alpha));
}

EnvelopeReport check_score_envelope(const std::vector<TransactionLog>& trajectories,
                                    std::span<const double> theta0, const NoiseModel& noise,
                                    double steepness, double alpha) {
  std::vector<bool> violations;
  violations.reserve(trajectories.size());
  for (const auto& records : trajectories) {
    const ScoreProcess process = score_process(records, theta0, noise);
    bool violated = false;
    for (std::size_t s = 0; s < process.score_sup.size() && !violated; ++s) {
      violated = process.score_sup[s] >
                 score_bound(static_cast<long>(s + 1), process.diag_sup[s], steepness,
                             records.dimension(), alpha);
    }
    violations.push_back(violated);
  }
  return make_report(violations, alpha);
}

EventGResult check_event_G(const ScoreProcess& process, std::span<const double> lambda,
                           EventGForm form) {
  const std::size_t n = std::min(process.score_sup.size(), lambda.size());
  for (std::size_t s = 0; s < n; ++s) {
    const double t = static_cast<double>(s + 1);
    const double lhs = form == EventGForm::AsPrinted ? 4.0 * process.score_sup[s] / t
                                                     : 4.0 * process.score_sup[s];
    if (lhs > lambda[s]) return {false, static_cast<long>(s + 1)};
  }
  return {};
}

namespace {

// Trace of a PSD matrix, an upper bound on its top eigenvalue.
double trace(const SquareMatrix& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) sum += m(i, i);
  return sum;
}

// e_j lies in every cone whose support contains j, so the restricted
// eigenvalue never exceeds the smallest diagonal entry.
double restricted_eigenvalue_upper_bound(const SquareMatrix& m) {
  double bound = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.size(); ++i) bound = std::min(bound, m(i, i));
  return bound;
}

struct ConeDescent {
  const SquareMatrix& sigma;
  const std::vector<std::size_t>& support;
  std::vector<char> in_support;
  double step;

  // Rescale so ||v_J||_2 = 1 and pull v_{J^c} back into the cone.
  bool normalize(Vector& v) const {
    double norm_j = 0.0;
    for (std::size_t j : support) norm_j += v[j] * v[j];
    norm_j = std::sqrt(norm_j);
    if (!(norm_j > 0.0)) return false;
    for (double& x : v) x /= norm_j;
    double l1_j = 0.0;
    for (std::size_t j : support) l1_j += std::abs(v[j]);
    Vector outside;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!in_support[i]) outside.push_back(v[i]);
    }
    if (outside.empty()) return true;
    const Vector projected = project_l1_ball(outside, 3.0 * l1_j);
    std::size_t k = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!in_support[i]) v[i] = projected[k++];
    }
    return true;
  }

  double ratio(const Vector& v) const { return sigma.quadratic_form(v); }

  double run(Vector v) const {
    if (!normalize(v)) return std::numeric_limits<double>::infinity();
    const std::size_t n = v.size();
    double best = ratio(v);
    Vector gradient(n);
    for (int iteration = 0; iteration < 5000; ++iteration) {
      const double r = ratio(v);
      for (std::size_t i = 0; i < n; ++i) {
        gradient[i] = 2.0 * kernels::dot(std::span<const double>(sigma.data().data() + i * n, n), v);
        if (in_support[i]) gradient[i] -= 2.0 * r * v[i];
      }
      Vector next(n);
      for (std::size_t i = 0; i < n; ++i) next[i] = v[i] - step * gradient[i];
      if (!normalize(next)) break;
      const double candidate = ratio(next);
      if (!(candidate < best - 1e-15 * std::abs(best))) {
        best = std::min(best, candidate);
        break;
      }
      best = candidate;
      v = std::move(next);
    }
    return best;
  }
};

}  // namespace

double restricted_eigenvalue(const SquareMatrix& covariance, int s0, int starts, std::uint64_t seed) {
  const std::size_t d = covariance.size();
  if (d > 12) {
    throw Error(ErrorCode::DimensionTooLarge,
                "restricted eigenvalue enumerates supports; d=" + std::to_string(d) + " > 12");
  }
  if (s0 <= 0 || d == 0) return std::numeric_limits<double>::infinity();
  // Cones grow with J, so the minimum over |J| <= s0 is attained at |J| = s0.
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(s0), d);
  const double top = trace(covariance);
  if (!(top > 0.0)) return 0.0;

  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double best = std::numeric_limits<double>::infinity();

  std::vector<char> mask(d, 0);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), 1);
  do {
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < d; ++i) {
      if (mask[i]) support.push_back(i);
    }
    ConeDescent descent{covariance, support, mask, 0.25 / top};
    for (int start = 0; start < std::max(starts, 1); ++start) {
      Vector v(d, 0.0);
      for (std::size_t j : support) v[j] = normal(rng);
      if (start > 0) {
        const double scale = uniform_open(rng);
        double l1_j = 0.0;
        for (std::size_t j : support) l1_j += std::abs(v[j]);
        Vector outside(d - k);
        for (double& x : outside) x = normal(rng);
        const double l1_out = l1_norm(outside);
        std::size_t m = 0;
        for (std::size_t i = 0; i < d; ++i) {
          if (!mask[i]) v[i] = l1_out > 0.0 ? outside[m++] * scale * 3.0 * l1_j / l1_out : 0.0;
        }
      }
      best = std::min(best, descent.run(std::move(v)));
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return best;
}

double phi_lower_bound(double phi2_population, int s0, long t, std::size_t d, double alpha) {
  if (t < 1) throw Error(ErrorCode::InvalidArgument, "t must be >= 1");
  const double dd = static_cast<double>(d);
  const double log_term = std::log(dd * (dd + 1.0) / (2.0 * alpha));
  const double inv_t = 1.0 / static_cast<double>(t);
  return phi2_population - 32.0 * s0 * (std::sqrt(2.0 * inv_t * log_term) + inv_t * log_term);
}

double oracle_envelope(double lambda, int s0, double flatness, double phi2) {
  if (!(phi2 > 0.0) || !(flatness > 0.0)) return std::numeric_limits<double>::infinity();
  return 16.0 * s0 * lambda * lambda / (flatness * flatness * phi2);
}

EnvelopeReport check_oracle_envelope(const std::vector<OracleEnvelopeTrajectory>& trajectories,
                                     int s0, double flatness, double alpha) {
  std::vector<bool> violations;
  violations.reserve(trajectories.size());
  for (const auto& trajectory : trajectories) {
    bool violated = false;
    for (std::size_t c = 0; c < trajectory.checkpoints.size() && !violated; ++c) {
      if (!(trajectory.phi2[c] > 0.0)) continue;
      violated = trajectory.error_l2_sq[c] >
                 oracle_envelope(trajectory.lambda[c], s0, flatness, trajectory.phi2[c]);
    }
    violations.push_back(violated);
  }
  return make_report(violations, alpha);
}

OracleEnvelopeTrajectory trace_oracle_envelope(const Scenario& scenario, int replicate,
                                               int re_starts, double screening_flatness) {
  scenario.validate();
  const ScenarioResources resources = prepare_scenario(scenario);
  const std::uint64_t seed = replicate_seed(scenario.base_seed, scenario.id, replicate);
  const MarketDraw market = draw_market(scenario, seed);

  PolicySetup setup;
  setup.dimension = scenario.d;
  setup.l1_budget = scenario.W;
  setup.theta0 = scenario.theta0;
  setup.assumed_noise = scenario.noise_assumed;
  setup.steepness = resources.steepness;
  setup.alpha = scenario.alpha;
  setup.c_lambda = scenario.c_lambda;
  setup.solver = scenario.solver;
  setup.pricing = resources.pricing;
  OormlpPolicy policy(setup);

  OracleEnvelopeTrajectory out;
  const auto checkpoints = summary_checkpoints(scenario.T);
  std::size_t next = 0;
  Vector error(scenario.d);
  for (long t = 1; t <= scenario.T; ++t) {
    const auto x = market.context(t);
    const double valuation = kernels::dot(scenario.theta0, x) + market.noise[static_cast<std::size_t>(t - 1)];
    const double price = policy.post_price(x);
    policy.observe(x, price, sale_status(valuation, price));
    if (next < checkpoints.size() && checkpoints[next] == t) {
      const auto estimate = policy.estimate();
      for (std::size_t j = 0; j < scenario.d; ++j) error[j] = estimate[j] - scenario.theta0[j];
      const double err = l2_norm_squared(error);
      const SquareMatrix covariance = policy.state().regularization.covariance();
      out.checkpoints.push_back(t);
      out.error_l2_sq.push_back(err);
      out.lambda.push_back(policy.lambda());
      bool exact = true;
      if (screening_flatness > 0.0) {
        const double upper = restricted_eigenvalue_upper_bound(covariance);
        if (upper > 0.0 && err <= oracle_envelope(policy.lambda(), scenario.s0, screening_flatness, upper)) {
          out.phi2.push_back(upper);
          exact = false;
        }
      }
      if (exact) out.phi2.push_back(restricted_eigenvalue(covariance, scenario.s0, re_starts, seed));
      out.phi2_exact.push_back(exact ? 1 : 0);
      ++next;
    }
  }
  return out;
}

TransactionLog simulate_oracle_records(const Scenario& scenario, int replicate,
                                       const ScenarioResources& resources) {
  const MarketDraw market =
      draw_market(scenario, replicate_seed(scenario.base_seed, scenario.id, replicate));
  TransactionLog records(scenario.d, static_cast<std::size_t>(scenario.T));
  for (long t = 1; t <= scenario.T; ++t) {
    const auto x = market.context(t);
    const double mean_valuation = kernels::dot(scenario.theta0, x);
    const double price = resources.pricing->optimal_price(mean_valuation);
    const double valuation = mean_valuation + market.noise[static_cast<std::size_t>(t - 1)];
    records.append(x, price, sale_status(valuation, price));
  }
  return records;
}

CrossingReport ville_check(IncrementLaw law, const SigmaSeries& sigma, double lambda, double x,
                           int paths, long horizon, std::uint64_t seed) {
  if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "ville threshold must be positive");
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double log_threshold = std::log(x);
  CrossingReport report;
  report.paths = paths;
  for (int path = 0; path < paths; ++path) {
    double log_martingale = 0.0;  // log M_0 = 0
    for (long t = 1; t <= horizon; ++t) {
      const double s = sigma(t);
      const double z = law == IncrementLaw::Gaussian ? s * normal(rng) : 0.0;
      log_martingale += lambda * z - 0.5 * lambda * lambda * s * s;
      if (log_martingale > log_threshold) {
        ++report.crossings;
        // Keep the stream aligned across paths regardless of early exit.
        if (law == IncrementLaw::Gaussian) {
          for (long rest = t + 1; rest <= horizon; ++rest) normal(rng);
        }
        break;
      }
    }
  }
  report.frequency = paths > 0 ? static_cast<double>(report.crossings) / paths : 0.0;
  report.bound = std::min(1.0, 1.0 / x);
  report.monte_carlo_stderr = monte_carlo_stderr(report.bound, paths);
  return report;
}

EnvelopeReport time_uniform_subgaussian_check(IncrementLaw law, const SigmaSeries& sigma,
                                              double alpha, int paths, long horizon,
                                              std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double log_inverse_alpha = std::log(1.0 / alpha);
  std::vector<bool> violations;
  violations.reserve(static_cast<std::size_t>(paths));
  for (int path = 0; path < paths; ++path) {
    double sum = 0.0;
    double variance = 0.0;
    bool violated = false;
    for (long t = 1; t <= horizon; ++t) {
      const double s = sigma(t);
      sum += law == IncrementLaw::Gaussian ? s * normal(rng) : 0.0;
      variance += s * s;
      violated = violated || sum > std::sqrt(2.0 * variance * log_inverse_alpha);
    }
    violations.push_back(violated);
  }
  return make_report(violations, alpha);
}

LogRegretFit log_regret_fit(std::span<const double> regret, double ratio_limit) {
  const auto T = static_cast<long>(regret.size());
  if (T < 2) throw Error(ErrorCode::InvalidArgument, "regret series needs at least two points");
  const long first = std::max(1L, T / 10);
  double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (long t = first; t <= T; ++t) {
    const double x = std::log(static_cast<double>(t));
    const double y = regret[static_cast<std::size_t>(t - 1)];
    n += 1.0;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  LogRegretFit fit;
  const double denominator = n * sxx - sx * sx;
  fit.slope = denominator != 0.0 ? (n * sxy - sx * sy) / denominator : 0.0;
  fit.intercept = (sy - fit.slope * sx) / n;
  const double mean_y = sy / n;
  double residual = 0.0, total = 0.0;
  for (long t = first; t <= T; ++t) {
    const double y = regret[static_cast<std::size_t>(t - 1)];
    const double predicted = fit.intercept + fit.slope * std::log(static_cast<double>(t));
    residual += (y - predicted) * (y - predicted);
    total += (y - mean_y) * (y - mean_y);
  }
  fit.r_squared = total > 0.0 ? 1.0 - residual / total : 1.0;
  const double at_half = regret[static_cast<std::size_t>(T / 2 - 1)];
  const double at_end = regret.back();
  if (at_half > 0.0) {
    fit.half_horizon_ratio = at_end / at_half;
  } else {
    fit.half_horizon_ratio = at_end > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  }
  fit.sublinearity_violation = !(fit.half_horizon_ratio < ratio_limit);
  return fit;
}

// ---- named checks ----

namespace {

Scenario well_specified_gaussian(std::uint64_t seed, const std::string& id, long T, double alpha,
                                 double c_lambda) {
  Scenario scenario;
  scenario.id = id;
  scenario.theta0 = {1, 1, 1, 0, 0, 0, 0, 0, 0, 0};
  scenario.T = T;
  scenario.alpha = alpha;
  scenario.c_lambda = c_lambda;
  scenario.base_seed = seed;
  scenario.noise_true = NoiseModel::gaussian();
  scenario.noise_assumed = NoiseModel::gaussian();
  return scenario;
}

int path_count(const VerifyOptions& options, int fallback) {
  return options.paths > 0 ? options.paths : fallback;
}

std::string format_label(const std::string& key, double value) {
  std::ostringstream out;
  out << key << '=' << value;
  return out.str();
}

CheckDetail envelope_detail(const std::string& label, const EnvelopeReport& report) {
  return {label, report.violation_fraction, report.threshold(), report.monte_carlo_stderr,
          report.passed(), false};
}

void finalize(CheckRecord& record) {
  record.passed = true;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& detail : record.details) {
    if (detail.informational) continue;
    record.passed = record.passed && detail.passed;
    const double margin = detail.statistic - detail.bound;
    if (margin > worst) {
      worst = margin;
      record.statistic = detail.statistic;
      record.bound = detail.bound;
      record.stderr_ = detail.stderr_;
    }
  }
}

std::vector<TransactionLog> oracle_histories(const Scenario& scenario, int paths) {
  const ScenarioResources resources = prepare_scenario(scenario);
  std::vector<TransactionLog> histories;
  histories.reserve(static_cast<std::size_t>(paths));
  for (int r = 0; r < paths; ++r) histories.push_back(simulate_oracle_records(scenario, r, resources));
  return histories;
}

CheckRecord check_score_envelope_named(const VerifyOptions& options) {
  CheckRecord record;
  record.name = "score_envelope";
  record.seed = options.seed;
  const Scenario scenario = well_specified_gaussian(options.seed, "verify/score_envelope", 500, 0.05, 1.0);
  const auto histories = oracle_histories(scenario, path_count(options, 1000));
  const double u = steepness(scenario.noise_assumed, scenario.W);
  for (double alpha : {0.05, 0.2}) {
    record.details.push_back(envelope_detail(
        format_label("alpha", alpha),
        check_score_envelope(histories, scenario.theta0, scenario.noise_assumed, u, alpha)));
  }
  finalize(record);
  return record;
}

CheckRecord check_event_g_named(const VerifyOptions& options) {
  CheckRecord record;
  record.name = "event_g";
  record.seed = options.seed;
  const double alpha = 0.05;
  const Scenario scenario =
      well_specified_gaussian(options.seed, "verify/event_g", 500, alpha, options.lambda_scale);
  const auto histories = oracle_histories(scenario, path_count(options, 1000));
  const double u = steepness(scenario.noise_assumed, scenario.W);
  std::vector<bool> consistent_failures;
  std::vector<bool> printed_failures;
  for (const auto& records : histories) {
    const ScoreProcess process = score_process(records, scenario.theta0, scenario.noise_assumed);
    RegularizationState schedule(scenario.d, alpha, u, options.lambda_scale);
    Vector lambda;
    lambda.reserve(records.size());
    for (std::size_t s = 0; s < records.size(); ++s) {
      schedule.observe(records.record(s).x);
      lambda.push_back(schedule.lambda());
    }
    consistent_failures.push_back(!check_event_G(process, lambda, EventGForm::ScoreConsistent).holds);
    printed_failures.push_back(!check_event_G(process, lambda, EventGForm::AsPrinted).holds);
  }
  record.details.push_back(envelope_detail("form=score_consistent", make_report(consistent_failures, alpha)));
  CheckDetail printed = envelope_detail("form=as_printed", make_report(printed_failures, alpha));
  printed.informational = true;
  record.details.push_back(printed);
  finalize(record);
  return record;
}

CheckRecord check_ville_named(const VerifyOptions& options) {
  CheckRecord record;
  record.name = "ville";
  record.seed = options.seed;
  const int paths = path_count(options, 10000);
  for (double x : {10.0, 20.0}) {
    const CrossingReport report = ville_check(
        IncrementLaw::Gaussian, [](long) { return 1.0; }, 0.5, x, paths, 1000,
        replicate_seed(options.seed, "verify/ville", static_cast<int>(x)));
    record.details.push_back({format_label("x", x), report.frequency,
                              report.bound + 3.0 * report.monte_carlo_stderr,
                              report.monte_carlo_stderr, report.passed(), false});
  }
  finalize(record);
  return record;
}

CheckRecord check_subgaussian_named(const VerifyOptions& options) {
  CheckRecord record;
  record.name = "subgaussian";
  record.seed = options.seed;
  const int paths = path_count(options, 10000);
  const SigmaSeries homoskedastic = [](long) { return 1.0; };
  const SigmaSeries heteroskedastic = [](long s) { return 1.0 + 0.5 * std::sin(static_cast<double>(s)); };
  int stream = 0;
  for (double alpha : {0.05, 0.5}) {
    for (const auto& [name, sigma] : {std::pair{"homoskedastic", homoskedastic},
                                      std::pair{"heteroskedastic", heteroskedastic}}) {
      const EnvelopeReport report = time_uniform_subgaussian_check(
          IncrementLaw::Gaussian, sigma, alpha, paths, 1000,
          replicate_seed(options.seed, "verify/subgaussian", stream++));
      record.details.push_back(
          envelope_detail(std::string(name) + "," + format_label("alpha", alpha), report));
    }
  }
  finalize(record);
  return record;
}

CheckRecord check_oracle_envelope_named(const VerifyOptions& options) {
  CheckRecord record;
  record.name = "oracle_envelope";
  record.seed = options.seed;
  const double alpha = 0.05;
  const Scenario scenario = well_specified_gaussian(options.seed, "verify/oracle_envelope", 1000, alpha, 1.0);
  const int paths = path_count(options, 200);
  const double l_w = flatness(scenario.noise_assumed, scenario.W);
  std::vector<OracleEnvelopeTrajectory> trajectories;
  trajectories.reserve(static_cast<std::size_t>(paths));
  for (int r = 0; r < paths; ++r) trajectories.push_back(trace_oracle_envelope(scenario, r, 8, l_w));
  record.details.push_back(
      envelope_detail("alpha=0.05", check_oracle_envelope(trajectories, scenario.s0, l_w, alpha)));
  double exact = 0.0;
  double total = 0.0;
  for (const auto& t : trajectories) {
    exact += static_cast<double>(std::count(t.phi2_exact.begin(), t.phi2_exact.end(), 1));
    total += static_cast<double>(t.phi2_exact.size());
  }
  record.details.push_back({"checkpoints needing the restricted eigenvalue", exact, total, 0.0, true, true});
  record.details.push_back({"flatness l_W", l_w, 0.0, 0.0, true, true});
  finalize(record);
  return record;
}

CheckRecord check_log_regret_named(const VerifyOptions& options) {
  CheckRecord record;
  record.name = "log_regret";
  record.seed = options.seed;
  Scenario scenario = well_specified_gaussian(options.seed, "verify/log_regret", 2000, 0.05, 0.01);
  scenario.replicates = options.paths > 0 ? options.paths : 32;
  scenario.policies = {PolicyKind::Oormlp};
  const GridResult grid = run_grid({scenario}, options.threads);
  const auto runs = grid.select(scenario.id, PolicyKind::Oormlp);
  Vector mean(static_cast<std::size_t>(scenario.T), 0.0);
  for (const auto* run : runs) {
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += run->cumulative_regret[i];
  }
  for (double& v : mean) v /= static_cast<double>(std::max<std::size_t>(runs.size(), 1));
  const LogRegretFit fit = log_regret_fit(mean);
  record.details.push_back({"ratio regret(T)/regret(T/2)", fit.half_horizon_ratio, 1.5, 0.0,
                            !fit.sublinearity_violation && grid.failures.empty(), false});
  record.details.push_back({"r_squared_vs_log_t", fit.r_squared, 0.0, 0.0, true, true});
  record.details.push_back({"slope_vs_log_t", fit.slope, 0.0, 0.0, true, true});
  finalize(record);
  return record;
}

CheckRecord check_schedule_named(const VerifyOptions& options) {
  CheckRecord record;
  record.name = "schedule";
  record.seed = options.seed;
  Rng rng(options.seed);
  const std::size_t d = 10;
  const double u = steepness(NoiseModel::gaussian(), 3.0);
  RegularizationState s05(d, 0.05, u, 1.0), s10(d, 0.1, u, 1.0), s20(d, 0.2, u, 1.0);
  double worst = 0.0;
  bool ordered = true;
  for (long t = 1; t <= 10000; ++t) {
    const Vector x = generate_context(rng, d);
    s05.observe(x);
    s10.observe(x);
    s20.observe(x);
    const double closed = lambda_closed_form(t, s05.diag_sup(), u, d, 0.05, 1.0);
    worst = std::max(worst, std::abs(s05.lambda() - closed) / closed);
    ordered = ordered && s05.lambda() > s10.lambda() && s10.lambda() > s20.lambda();
  }
  record.details.push_back({"max relative deviation incremental vs closed form", worst, 1e-9, 0.0,
                            worst <= 1e-9, false});
  record.details.push_back({"lambda(0.05) > lambda(0.1) > lambda(0.2) at every t", ordered ? 0.0 : 1.0,
                            0.0, 0.0, ordered, false});
  finalize(record);
  return record;
}

}  // namespace

const std::vector<std::string>& available_checks() {
  static const std::vector<std::string> names{"schedule",    "score_envelope",  "event_g",
                                              "ville",       "subgaussian",     "oracle_envelope",
                                              "log_regret"};
  return names;
}

CheckRecord run_check(const std::string& name, const VerifyOptions& options) {
  if (name == "schedule") return check_schedule_named(options);
  if (name == "score_envelope") return check_score_envelope_named(options);
  if (name == "event_g") return check_event_g_named(options);
  if (name == "ville") return check_ville_named(options);
  if (name == "subgaussian") return check_subgaussian_named(options);
  if (name == "oracle_envelope") return check_oracle_envelope_named(options);
  if (name == "log_regret") return check_log_regret_named(options);
  throw Error(ErrorCode::UnknownCheck, "unknown check '" + name + "'");
}

}  // namespace oormlp
