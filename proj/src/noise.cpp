#include "oormlp/noise.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "oormlp/error.hpp"

namespace oormlp {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684758586311649;
constexpr double kLn2 = std::numbers::ln2;
// Below this standardized value Phi(z) is close to denormal; switch to the
// asymptotic Mills-ratio expansion.
constexpr double kGaussianTailCut = -37.0;

double std_normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }
double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

// Series 1 - 1/z^2 + 3/z^4 - 15/z^6 + 105/z^8 from Phi(z) ~ phi(z)/|z| * (...).
double mills_series(double z) {
  const double inv2 = 1.0 / (z * z);
  return 1.0 + inv2 * (-1.0 + inv2 * (3.0 + inv2 * (-15.0 + inv2 * 105.0)));
}

// phi(z) / Phi(z)
double std_reverse_hazard(double z) {
  if (z < kGaussianTailCut) return -z / mills_series(z);
  return std_normal_pdf(z) / std_normal_cdf(z);
}

double std_log_cdf(double z) {
  if (z > 0.0) return std::log1p(-std_normal_cdf(-z));
  if (z < kGaussianTailCut) {
    return -0.5 * z * z - std::log(-z) - 0.5 * std::log(2.0 * std::numbers::pi) +
           std::log(mills_series(z));
  }
  return std::log(std_normal_cdf(z));
}

// Golden-section search for the maximum of `f` on [lo, hi].
double golden_maximize(const std::function<double(double)>& f, double lo, double hi,
                       double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tolerance) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return std::max({f(a), f(b), fc, fd});
}

// sup of `f` over [-R, R]: dense grid, then golden-section refinement on the
// cell pair bracketing the best grid point.
double grid_sup(const std::function<double(double)>& f, double radius) {
  constexpr int kGridPoints = 10000;
  if (radius <= 0.0) return f(0.0);
  const double h = 2.0 * radius / (kGridPoints - 1);
  int best = 0;
  double best_value = -HUGE_VAL;
  for (int i = 0; i < kGridPoints; ++i) {
    const double v = f(-radius + h * i);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = -radius + h * std::max(best - 1, 0);
  const double hi = -radius + h * std::min(best + 1, kGridPoints - 1);
  return std::max(best_value, golden_maximize(f, lo, hi, 1e-8));
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive and finite");
  }
}

}  // namespace

std::string_view to_string(NoiseFamily family) noexcept {
  switch (family) {
    case NoiseFamily::Gaussian: return "gaussian";
    case NoiseFamily::Laplace: return "laplace";
    case NoiseFamily::Periodic: return "periodic";
    case NoiseFamily::Cauchy: return "cauchy";
    case NoiseFamily::Uniform: return "uniform";
  }
  return "unknown";
}

NoiseFamily parse_noise_family(std::string_view name) {
  for (auto family : {NoiseFamily::Gaussian, NoiseFamily::Laplace, NoiseFamily::Periodic,
                      NoiseFamily::Cauchy, NoiseFamily::Uniform}) {
    if (to_string(family) == name) return family;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown noise family '" + std::string(name) + "'");
}

NoiseModel NoiseModel::gaussian(double mean, double stddev) {
  require_positive(stddev, "gaussian sigma");
  return {NoiseFamily::Gaussian, mean, stddev};
}

NoiseModel NoiseModel::laplace(double location, double scale) {
  require_positive(scale, "laplace scale");
  return {NoiseFamily::Laplace, location, scale};
}

NoiseModel NoiseModel::periodic(double omega) {
  if (!std::isfinite(omega)) throw Error(ErrorCode::InvalidArgument, "periodic omega must be finite");
  return {NoiseFamily::Periodic, omega, 0.0};
}

NoiseModel NoiseModel::cauchy(double location, double scale) {
  require_positive(scale, "cauchy scale");
  return {NoiseFamily::Cauchy, location, scale};
}

NoiseModel NoiseModel::uniform(double lower, double upper) {
  if (!(upper > lower)) throw Error(ErrorCode::InvalidArgument, "uniform requires lower < upper");
  return {NoiseFamily::Uniform, lower, upper};
}

double NoiseModel::omega() const {
  if (family_ != NoiseFamily::Periodic) {
    throw Error(ErrorCode::InvalidArgument, "omega is only defined for periodic noise");
  }
  return a_;
}

void NoiseModel::require_distribution() const {
  if (!is_distribution()) {
    throw Error(ErrorCode::NotADistribution, "periodic noise has no CDF or density");
  }
}

double NoiseModel::cdf(double x) const {
  require_distribution();
  switch (family_) {
    case NoiseFamily::Gaussian: return std_normal_cdf((x - a_) / b_);
    case NoiseFamily::Laplace: {
      const double z = (x - a_) / b_;
      return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
    }
    case NoiseFamily::Cauchy: return 0.5 + std::atan((x - a_) / b_) / std::numbers::pi;
    case NoiseFamily::Uniform: return std::clamp((x - a_) / (b_ - a_), 0.0, 1.0);
    case NoiseFamily::Periodic: break;
  }
  return 0.0;
}

double NoiseModel::sf(double x) const {
  require_distribution();
  switch (family_) {
    case NoiseFamily::Gaussian: return std_normal_cdf(-(x - a_) / b_);
    case NoiseFamily::Laplace: {
      const double z = (x - a_) / b_;
      return z < 0.0 ? 1.0 - 0.5 * std::exp(z) : 0.5 * std::exp(-z);
    }
    case NoiseFamily::Cauchy: return 0.5 - std::atan((x - a_) / b_) / std::numbers::pi;
    case NoiseFamily::Uniform: return std::clamp((b_ - x) / (b_ - a_), 0.0, 1.0);
    case NoiseFamily::Periodic: break;
  }
  return 0.0;
}

double NoiseModel::pdf(double x) const {
  require_distribution();
  switch (family_) {
    case NoiseFamily::Gaussian: return std_normal_pdf((x - a_) / b_) / b_;
    case NoiseFamily::Laplace: return 0.5 * std::exp(-std::abs(x - a_) / b_) / b_;
    case NoiseFamily::Cauchy: {
      const double z = (x - a_) / b_;
      return 1.0 / (std::numbers::pi * b_ * (1.0 + z * z));
    }
    case NoiseFamily::Uniform: return (x >= a_ && x <= b_) ? 1.0 / (b_ - a_) : 0.0;
    case NoiseFamily::Periodic: break;
  }
  return 0.0;
}

double NoiseModel::pdf_derivative(double x) const {
  require_distribution();
  switch (family_) {
    case NoiseFamily::Gaussian: {
      const double z = (x - a_) / b_;
      return -z * std_normal_pdf(z) / (b_ * b_);
    }
    case NoiseFamily::Laplace: {
      const double z = (x - a_) / b_;
      const double sign = z < 0.0 ? 1.0 : -1.0;
      return sign * 0.5 * std::exp(-std::abs(z)) / (b_ * b_);
    }
    case NoiseFamily::Cauchy: {
      const double z = (x - a_) / b_;
      const double q = 1.0 + z * z;
      return -2.0 * z / (std::numbers::pi * b_ * b_ * q * q);
    }
    case NoiseFamily::Uniform: return 0.0;
    case NoiseFamily::Periodic: break;
  }
  return 0.0;
}

double NoiseModel::log_cdf(double x) const {
  require_distribution();
  switch (family_) {
    case NoiseFamily::Gaussian: return std_log_cdf((x - a_) / b_);
    case NoiseFamily::Laplace: {
      const double z = (x - a_) / b_;
      return z < 0.0 ? z - kLn2 : std::log1p(-0.5 * std::exp(-z));
    }
    default: return std::log(cdf(x));
  }
}

double NoiseModel::log_sf(double x) const {
  require_distribution();
  switch (family_) {
    case NoiseFamily::Gaussian: return std_log_cdf(-(x - a_) / b_);
    case NoiseFamily::Laplace: {
      const double z = (x - a_) / b_;
      return z < 0.0 ? std::log1p(-0.5 * std::exp(z)) : -z - kLn2;
    }
    default: return std::log(sf(x));
  }
}

double NoiseModel::reverse_hazard(double x) const {
  require_distribution();
  switch (family_) {
    case NoiseFamily::Gaussian: return std_reverse_hazard((x - a_) / b_) / b_;
    case NoiseFamily::Laplace: {
      const double z = (x - a_) / b_;
      return z < 0.0 ? 1.0 / b_ : 1.0 / (b_ * (2.0 * std::exp(z) - 1.0));
    }
    default: {
      const double F = cdf(x);
      return F > 0.0 ? pdf(x) / F : HUGE_VAL;
    }
  }
}

double NoiseModel::hazard(double x) const {
  require_distribution();
  switch (family_) {
    case NoiseFamily::Gaussian: return std_reverse_hazard(-(x - a_) / b_) / b_;
    case NoiseFamily::Laplace: {
      const double z = (x - a_) / b_;
      return z >= 0.0 ? 1.0 / b_ : 1.0 / (b_ * (2.0 * std::exp(-z) - 1.0));
    }
    default: {
      const double S = sf(x);
      return S > 0.0 ? pdf(x) / S : HUGE_VAL;
    }
  }
}

double NoiseModel::log_cdf_second(double x) const {
  require_distribution();
  switch (family_) {
    case NoiseFamily::Gaussian: {
      const double z = (x - a_) / b_;
      const double r = std_reverse_hazard(z);
      return -r * (z + r) / (b_ * b_);
    }
    case NoiseFamily::Laplace: {
      const double z = (x - a_) / b_;
      if (z <= 0.0) return 0.0;
      const double e = std::exp(z);
      const double q = 2.0 * e - 1.0;
      return -2.0 * e / (b_ * b_ * q * q);
    }
    default: {
      const double r = reverse_hazard(x);
      return pdf_derivative(x) / cdf(x) - r * r;
    }
  }
}

double NoiseModel::log_sf_second(double x) const {
  require_distribution();
  switch (family_) {
    case NoiseFamily::Gaussian: {
      const double z = (x - a_) / b_;
      const double h = std_reverse_hazard(-z);
      return -h * (h - z) / (b_ * b_);
    }
    case NoiseFamily::Laplace: {
      const double z = (x - a_) / b_;
      if (z >= 0.0) return 0.0;
      const double e = std::exp(-z);
      const double q = 2.0 * e - 1.0;
      return -2.0 * e / (b_ * b_ * q * q);
    }
    default: {
      const double h = hazard(x);
      return -pdf_derivative(x) / sf(x) - h * h;
    }
  }
}

double NoiseModel::outcome_log_prob(double u, int y, double* derivative) const {
  if (family_ == NoiseFamily::Gaussian) {
    // A sale at u is a no-sale at -u in standardized units.
    const double z = y > 0 ? -(u - a_) / b_ : (u - a_) / b_;
    const double sign = y > 0 ? -1.0 : 1.0;
    if (z < kGaussianTailCut) {
      if (derivative != nullptr) *derivative = sign * std_reverse_hazard(z) / b_;
      return std_log_cdf(z);
    }
    const double P = std_normal_cdf(z);
    if (derivative != nullptr) *derivative = sign * std_normal_pdf(z) / (b_ * P);
    return std::log(P);
  }
  if (y > 0) {
    if (derivative != nullptr) *derivative = -hazard(u);
    return log_sf(u);
  }
  if (derivative != nullptr) *derivative = reverse_hazard(u);
  return log_cdf(u);
}

double NoiseModel::sample(std::int64_t t, Rng& rng) const {
  switch (family_) {
    case NoiseFamily::Gaussian: return std::normal_distribution<double>(a_, b_)(rng);
    case NoiseFamily::Laplace: {
      const double u = uniform_open(rng) - 0.5;
      const double sign = u < 0.0 ? -1.0 : 1.0;
      return a_ - b_ * sign * std::log1p(-2.0 * std::abs(u));
    }
    case NoiseFamily::Periodic: return std::sin(a_ * static_cast<double>(t));
    case NoiseFamily::Cauchy: return a_ + b_ * std::tan(std::numbers::pi * (uniform_open(rng) - 0.5));
    case NoiseFamily::Uniform: return a_ + (b_ - a_) * uniform_open(rng);
  }
  return 0.0;
}

std::string NoiseModel::describe() const {
  std::ostringstream out;
  out << to_string(family_) << '(';
  switch (family_) {
    case NoiseFamily::Periodic: out << "omega=" << a_; break;
    default: out << a_ << ',' << b_; break;
  }
  out << ')';
  return out.str();
}

namespace {

void require_log_concave_with_finite_steepness(const NoiseModel& model) {
  switch (model.family()) {
    case NoiseFamily::Gaussian:
    case NoiseFamily::Laplace: return;
    case NoiseFamily::Periodic:
      throw Error(ErrorCode::NotADistribution, "periodic noise has no log-concavity constants");
    case NoiseFamily::Uniform:
      throw Error(ErrorCode::UnboundedSteepness, "uniform: f/F diverges at the support boundary");
    case NoiseFamily::Cauchy:
      throw Error(ErrorCode::UnboundedSteepness, "cauchy is not log-concave");
  }
}

}  // namespace

double steepness(const NoiseModel& model, double W) {
  require_log_concave_with_finite_steepness(model);
  if (!(W >= 0.0)) throw Error(ErrorCode::InvalidArgument, "W must be nonnegative");
  return grid_sup([&](double x) { return std::max(model.reverse_hazard(x), model.hazard(x)); },
                  3.0 * W);
}

double flatness(const NoiseModel& model, double W) {
  require_log_concave_with_finite_steepness(model);
  if (!(W >= 0.0)) throw Error(ErrorCode::InvalidArgument, "W must be nonnegative");
  const double neg_inf = grid_sup(
      [&](double x) { return std::max(model.log_cdf_second(x), model.log_sf_second(x)); },
      3.0 * W);
  return std::max(-neg_inf, 0.0);
}

LogConcavityConstants log_concavity_constants(const NoiseModel& model, double W) {
  return {steepness(model, W), flatness(model, W), 3.0 * W};
}

double uniform_open(Rng& rng) noexcept {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace oormlp
