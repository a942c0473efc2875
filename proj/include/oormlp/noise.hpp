#pragma once
// Demand-noise families: CDF/PDF evaluation, numerically stable log-CDF
// derivatives for the likelihood, sampling, and the steepness / flatness
// constants of log-concave families over |x| <= 3W.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace oormlp {

using Rng = std::mt19937_64;

enum class NoiseFamily { Gaussian, Laplace, Periodic, Cauchy, Uniform };

std::string_view to_string(NoiseFamily family) noexcept;
NoiseFamily parse_noise_family(std::string_view name);

class NoiseModel {
 public:
  static NoiseModel gaussian(double mean = 0.0, double stddev = 1.0);
  static NoiseModel laplace(double location = 0.0, double scale = 1.0);
  static NoiseModel periodic(double omega);
  static NoiseModel cauchy(double location = 0.0, double scale = 1.0);
  static NoiseModel uniform(double lower, double upper);

  NoiseFamily family() const noexcept { return family_; }
  // (mu, sigma), (mu, b), (omega, 0), (x0, gamma), (a, b) respectively.
  double first() const noexcept { return a_; }
  double second() const noexcept { return b_; }
  bool is_distribution() const noexcept { return family_ != NoiseFamily::Periodic; }
  double omega() const;

  double cdf(double x) const;
  double pdf(double x) const;
  // Survival function 1 - F(x), evaluated without cancellation.
  double sf(double x) const;
  double pdf_derivative(double x) const;

  double log_cdf(double x) const;
  double log_sf(double x) const;
  // (log F)'(x) = f/F and -(log(1-F))'(x) = f/(1-F), stable in the tails.
  double reverse_hazard(double x) const;
  double hazard(double x) const;
  // (log F)'' and (log(1-F))''. At the Laplace kink the one-sided value
  // closer to zero is returned, which keeps flatness a valid lower bound.
  double log_cdf_second(double x) const;
  double log_sf_second(double x) const;

  // log P(y | u) for a sale (y = +1, P = 1 - F(u)) or no sale (y = -1,
  // P = F(u)). When `derivative` is non-null it receives d/du log P(y | u).
  // Shares one special-function evaluation between value and derivative.
  double outcome_log_prob(double u, int y, double* derivative) const;

  // eta_t: an iid draw for distributions, sin(omega * t) for Periodic.
  double sample(std::int64_t t, Rng& rng) const;

  std::string describe() const;

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;

 private:
  NoiseModel(NoiseFamily family, double a, double b) : family_(family), a_(a), b_(b) {}
  void require_distribution() const;

  NoiseFamily family_;
  double a_;
  double b_;
};

struct LogConcavityConstants {
  double steepness;      // u_W
  double flatness;       // l_W
  double domain_radius;  // 3W
};

// u_W = sup_{|x|<=3W} max{f/F, f/(1-F)}.
// Throws UnboundedSteepness for Uniform and Cauchy, NotADistribution for Periodic.
double steepness(const NoiseModel& model, double W);

// l_W = inf_{|x|<=3W} min{-(log F)'', -(log(1-F))''}.
double flatness(const NoiseModel& model, double W);

LogConcavityConstants log_concavity_constants(const NoiseModel& model, double W);

// Uniform on the open interval (0, 1); stable across standard libraries.
double uniform_open(Rng& rng) noexcept;

}  // namespace oormlp
