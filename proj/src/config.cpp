#include "oormlp/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "oormlp/error.hpp"

namespace oormlp {

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::ConfigInvalid, path + ": " + message);
}

const std::set<std::string> kTopLevelKeys{
    "d",       "s0",       "W",          "T",          "theta0",   "noise_true", "noise_assumed",
    "alpha",   "c_lambda", "replicates", "base_seed",  "policies", "solver",     "accounting",
    "comment"};

const std::set<std::string> kSolverKeys{"max_iterations", "kkt_tolerance", "step_shrink",
                                        "initial_step",   "warm_start",    "resolve_every"};

void reject_unknown(const Json& node, const std::set<std::string>& allowed, const std::string& prefix) {
  for (const auto& [key, value] : node.items()) {
    if (!allowed.contains(key)) invalid(prefix + key, "unknown field");
  }
}

double number_at(const Json& node, const std::string& path) {
  if (!node.is_number()) invalid(path, "expected a number");
  return node.get<double>();
}

long integer_at(const Json& node, const std::string& path) {
  if (!node.is_number_integer()) invalid(path, "expected an integer");
  return node.get<long>();
}

// A scalar or a nonempty list of scalars.
std::vector<double> numbers_at(const Json& node, const std::string& path) {
  if (!node.is_array()) return {number_at(node, path)};
  if (node.empty()) invalid(path, "empty list");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(number_at(node[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

double param(const Json& node, const char* key, double fallback, const std::string& path) {
  return node.contains(key) ? number_at(node[key], path + "." + key) : fallback;
}

std::string noise_label(const NoiseModel& noise) {
  const bool standard = noise.first() == 0.0 && noise.second() == 1.0;
  switch (noise.family()) {
    case NoiseFamily::Gaussian:
    case NoiseFamily::Laplace:
    case NoiseFamily::Cauchy:
      if (standard) return std::string(to_string(noise.family()));
      break;
    default: break;
  }
  return noise.describe();
}

SolverSettings solver_from_json(const Json& node) {
  if (!node.is_object()) invalid("solver", "expected an object");
  reject_unknown(node, kSolverKeys, "solver.");
  SolverSettings s;
  if (node.contains("max_iterations")) s.max_iterations = static_cast<int>(integer_at(node["max_iterations"], "solver.max_iterations"));
  if (node.contains("kkt_tolerance")) s.kkt_tolerance = number_at(node["kkt_tolerance"], "solver.kkt_tolerance");
  if (node.contains("step_shrink")) s.step_shrink = number_at(node["step_shrink"], "solver.step_shrink");
  if (node.contains("initial_step")) s.initial_step = number_at(node["initial_step"], "solver.initial_step");
  if (node.contains("warm_start")) {
    if (!node["warm_start"].is_boolean()) invalid("solver.warm_start", "expected a boolean");
    s.warm_start = node["warm_start"].get<bool>();
  }
  if (node.contains("resolve_every")) s.resolve_every = static_cast<int>(integer_at(node["resolve_every"], "solver.resolve_every"));
  try {
    s.validate();
  } catch (const Error& e) {
    invalid("solver", e.what());
  }
  return s;
}

Json solver_to_json(const SolverSettings& s) {
  return Json{{"max_iterations", s.max_iterations}, {"kkt_tolerance", s.kkt_tolerance},
              {"step_shrink", s.step_shrink},       {"initial_step", s.initial_step},
              {"warm_start", s.warm_start},         {"resolve_every", s.resolve_every}};
}

void validate_scenario(const Scenario& scenario) {
  try {
    scenario.validate();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigInvalid) throw;
    invalid(scenario.id, e.what());
  }
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

SweepSpec parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) invalid("sweep", "expected KEY=V1,V2,... got '" + text + "'");
  SweepSpec spec;
  spec.key = text.substr(0, eq);
  const auto& keys = sweepable_keys();
  if (std::find(keys.begin(), keys.end(), spec.key) == keys.end()) {
    invalid("sweep." + spec.key, "not a sweepable key");
  }
  std::stringstream values(text.substr(eq + 1));
  std::string item;
  while (std::getline(values, item, ',')) {
    double v = 0.0;
    const auto result = std::from_chars(item.data(), item.data() + item.size(), v);
    if (result.ec != std::errc{} || result.ptr != item.data() + item.size()) {
      invalid("sweep." + spec.key, "not a number: '" + item + "'");
    }
    spec.values.push_back(v);
  }
  if (spec.values.empty()) invalid("sweep." + spec.key, "no values");
  return spec;
}

const std::vector<std::string>& sweepable_keys() {
  static const std::vector<std::string> keys{"c_lambda", "alpha", "omega", "W", "T", "replicates"};
  return keys;
}

Json noise_to_json(const NoiseModel& noise) {
  switch (noise.family()) {
    case NoiseFamily::Gaussian: return {{"family", "gaussian"}, {"mean", noise.first()}, {"sd", noise.second()}};
    case NoiseFamily::Laplace: return {{"family", "laplace"}, {"loc", noise.first()}, {"scale", noise.second()}};
    case NoiseFamily::Periodic: return {{"family", "periodic"}, {"omega", noise.first()}};
    case NoiseFamily::Cauchy: return {{"family", "cauchy"}, {"loc", noise.first()}, {"scale", noise.second()}};
    case NoiseFamily::Uniform: return {{"family", "uniform"}, {"a", noise.first()}, {"b", noise.second()}};
  }
  return {};
}

NoiseModel noise_from_json(const Json& node, const std::string& path) {
  if (!node.is_object()) invalid(path, "expected a noise record {\"family\": ..., params}");
  if (!node.contains("family") || !node["family"].is_string()) invalid(path + ".family", "missing family name");
  NoiseFamily family{};
  try {
    family = parse_noise_family(node["family"].get<std::string>());
  } catch (const Error&) {
    invalid(path + ".family", "unknown family '" + node["family"].get<std::string>() + "'");
  }
  std::set<std::string> allowed{"family"};
  try {
    switch (family) {
      case NoiseFamily::Gaussian:
        allowed.insert({"mean", "sd"});
        reject_unknown(node, allowed, path + ".");
        return NoiseModel::gaussian(param(node, "mean", 0.0, path), param(node, "sd", 1.0, path));
      case NoiseFamily::Laplace:
        allowed.insert({"loc", "scale"});
        reject_unknown(node, allowed, path + ".");
        return NoiseModel::laplace(param(node, "loc", 0.0, path), param(node, "scale", 1.0, path));
      case NoiseFamily::Cauchy:
        allowed.insert({"loc", "scale"});
        reject_unknown(node, allowed, path + ".");
        return NoiseModel::cauchy(param(node, "loc", 0.0, path), param(node, "scale", 1.0, path));
      case NoiseFamily::Periodic:
        allowed.insert("omega");
        reject_unknown(node, allowed, path + ".");
        if (!node.contains("omega")) invalid(path + ".omega", "required for periodic noise");
        return NoiseModel::periodic(number_at(node["omega"], path + ".omega"));
      case NoiseFamily::Uniform:
        allowed.insert({"a", "b"});
        reject_unknown(node, allowed, path + ".");
        return NoiseModel::uniform(param(node, "a", 0.0, path), param(node, "b", 1.0, path));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigInvalid) throw;
    invalid(path, e.what());
  }
  invalid(path, "unreachable");
}

std::vector<Scenario> parse_config(const Json& config) {
  if (!config.is_object()) invalid("<root>", "expected an object");
  reject_unknown(config, kTopLevelKeys, "");

  Scenario base;
  if (!config.contains("theta0")) invalid("theta0", "missing required field");
  const Json& theta = config["theta0"];
  if (!theta.is_array() || theta.empty()) invalid("theta0", "expected a nonempty list of numbers");
  for (std::size_t i = 0; i < theta.size(); ++i) {
    base.theta0.push_back(number_at(theta[i], "theta0[" + std::to_string(i) + "]"));
  }
  base.d = base.theta0.size();
  if (config.contains("d")) {
    const long d = integer_at(config["d"], "d");
    if (d < 1 || static_cast<std::size_t>(d) != base.d) invalid("d", "must equal the length of theta0");
  }
  if (config.contains("s0")) base.s0 = static_cast<int>(integer_at(config["s0"], "s0"));
  if (config.contains("T")) base.T = integer_at(config["T"], "T");
  if (config.contains("replicates")) base.replicates = static_cast<int>(integer_at(config["replicates"], "replicates"));
  if (config.contains("base_seed")) {
    const Json& seed = config["base_seed"];
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) invalid("base_seed", "expected an unsigned integer");
    if (seed.is_number_integer() && seed.get<long long>() < 0) invalid("base_seed", "must be nonnegative");
    base.base_seed = seed.get<std::uint64_t>();
  }
  if (config.contains("noise_assumed")) base.noise_assumed = noise_from_json(config["noise_assumed"], "noise_assumed");
  if (config.contains("solver")) base.solver = solver_from_json(config["solver"]);
  if (config.contains("accounting")) {
    const Json& a = config["accounting"];
    if (a == "expected") {
      base.accounting = RevenueAccounting::Expected;
    } else if (a == "realized") {
      base.accounting = RevenueAccounting::Realized;
    } else {
      invalid("accounting", "expected \"expected\" or \"realized\"");
    }
  }
  if (config.contains("policies")) {
    const Json& p = config["policies"];
    if (!p.is_array() || p.empty()) invalid("policies", "expected a nonempty list");
    base.policies.clear();
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::string path = "policies[" + std::to_string(i) + "]";
      if (!p[i].is_string()) invalid(path, "expected a policy name");
      try {
        base.policies.push_back(parse_policy_kind(p[i].get<std::string>()));
      } catch (const Error&) {
        invalid(path, "unknown policy '" + p[i].get<std::string>() + "'");
      }
    }
  }

  std::vector<NoiseModel> noises;
  if (!config.contains("noise_true")) invalid("noise_true", "missing required field");
  if (config["noise_true"].is_array()) {
    if (config["noise_true"].empty()) invalid("noise_true", "empty list");
    for (std::size_t i = 0; i < config["noise_true"].size(); ++i) {
      noises.push_back(noise_from_json(config["noise_true"][i], "noise_true[" + std::to_string(i) + "]"));
    }
  } else {
    noises.push_back(noise_from_json(config["noise_true"], "noise_true"));
  }
  const std::vector<double> alphas = config.contains("alpha") ? numbers_at(config["alpha"], "alpha")
                                                              : std::vector<double>{base.alpha};
  const std::vector<double> scales = config.contains("c_lambda") ? numbers_at(config["c_lambda"], "c_lambda")
                                                                 : std::vector<double>{base.c_lambda};
  const std::vector<double> budgets = config.contains("W") ? numbers_at(config["W"], "W")
                                                           : std::vector<double>{base.W};

  std::vector<Scenario> scenarios;
  for (const auto& noise : noises) {
    for (double alpha : alphas) {
      for (double c : scales) {
        for (double w : budgets) {
          Scenario s = base;
          s.noise_true = noise;
          s.alpha = alpha;
          s.c_lambda = c;
          s.W = w;
          s.id = noise_label(noise) + "/alpha=" + format_number(alpha);
          if (scales.size() > 1) s.id += "/c_lambda=" + format_number(c);
          if (budgets.size() > 1) s.id += "/W=" + format_number(w);
          validate_scenario(s);
          scenarios.push_back(std::move(s));
        }
      }
    }
  }
  std::set<std::string> ids;
  for (const auto& s : scenarios) {
    if (!ids.insert(s.id).second) invalid("noise_true", "duplicate scenario '" + s.id + "'");
  }
  return scenarios;
}

std::vector<Scenario> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config '" + path + "'");
  Json config;
  try {
    config = Json::parse(in, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    invalid("<root>", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(config);
}

std::vector<Scenario> apply_sweeps(const std::vector<Scenario>& base, const std::vector<SweepSpec>& sweeps) {
  std::vector<Scenario> current = base;
  for (const auto& sweep : sweeps) {
    std::vector<Scenario> next;
    for (const auto& scenario : current) {
      if (sweep.key == "omega" && scenario.noise_true.family() != NoiseFamily::Periodic) {
        next.push_back(scenario);
        continue;
      }
      for (double v : sweep.values) {
        Scenario s = scenario;
        if (sweep.key == "c_lambda") {
          s.c_lambda = v;
        } else if (sweep.key == "alpha") {
          s.alpha = v;
        } else if (sweep.key == "omega") {
          s.noise_true = NoiseModel::periodic(v);
        } else if (sweep.key == "W") {
          s.W = v;
        } else if (sweep.key == "T") {
          s.T = static_cast<long>(v);
          if (static_cast<double>(s.T) != v) invalid("sweep.T", "expected integers");
        } else if (sweep.key == "replicates") {
          s.replicates = static_cast<int>(v);
          if (static_cast<double>(s.replicates) != v) invalid("sweep.replicates", "expected integers");
        } else {
          invalid("sweep." + sweep.key, "not a sweepable key");
        }
        s.id += "/" + sweep.key + "=" + format_number(v);
        try {
          validate_scenario(s);
        } catch (const Error& e) {
          invalid("sweep." + sweep.key, e.what());
        }
        next.push_back(std::move(s));
      }
    }
    current = std::move(next);
  }
  return current;
}

Json scenario_to_json(const Scenario& s) {
  Json policies = Json::array();
  for (auto p : s.policies) policies.push_back(std::string(to_string(p)));
  return Json{{"id", s.id},
              {"d", s.d},
              {"s0", s.s0},
              {"W", s.W},
              {"T", s.T},
              {"theta0", s.theta0},
              {"noise_true", noise_to_json(s.noise_true)},
              {"noise_assumed", noise_to_json(s.noise_assumed)},
              {"alpha", s.alpha},
              {"c_lambda", s.c_lambda},
              {"replicates", s.replicates},
              {"base_seed", s.base_seed},
              {"policies", policies},
              {"solver", solver_to_json(s.solver)},
              {"accounting", s.accounting == RevenueAccounting::Expected ? "expected" : "realized"}};
}

std::string config_digest(const std::vector<Scenario>& scenarios) {
  Json all = Json::array();
  for (const auto& s : scenarios) all.push_back(scenario_to_json(s));
  const std::string canonical = all.dump();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

std::string reference_config() {
  const Scenario defaults;
  const SolverSettings solver;
  return R"(// Reference configuration. Every accepted key is listed with its default.
// Comments are allowed. noise_true, alpha, c_lambda and W accept either a
// single value or a list; lists expand into their cartesian product.
{
  // Context dimension. Optional; when present it must equal len(theta0).
  "d": )" + std::to_string(defaults.d) + R"(,
  // Sparsity level s0 of the parameter space.
  "s0": )" + std::to_string(defaults.s0) + R"(,
  // l1 budget W.
  "W": )" + format_number(defaults.W) + R"(,
  // Horizon.
  "T": )" + std::to_string(defaults.T) + R"(,
  // Required.
  "theta0": [1, 1, 1, 0, 0, 0, 0, 0, 0, 0],
  // Required. Families and parameters (defaults in parentheses):
  //   {"family": "gaussian", "mean" (0), "sd" (1)}
  //   {"family": "laplace",  "loc" (0),  "scale" (1)}
  //   {"family": "cauchy",   "loc" (0),  "scale" (1)}
  //   {"family": "uniform",  "a" (0),    "b" (1)}
  //   {"family": "periodic", "omega" (required)}   eta_t = sin(omega * t)
  "noise_true": [{"family": "gaussian"}],
  // Noise model the policies price against.
  "noise_assumed": {"family": "gaussian", "mean": 0, "sd": 1},
  "alpha": )" + format_number(defaults.alpha) + R"(,
  "c_lambda": )" + format_number(defaults.c_lambda) + R"(,
  "replicates": )" + std::to_string(defaults.replicates) + R"(,
  "base_seed": )" + std::to_string(defaults.base_seed) + R"(,
  // Any subset of "oormlp", "rmlp", "oracle".
  "policies": ["oormlp", "rmlp", "oracle"],
  // "expected" or "realized" revenue in the regret.
  "accounting": "expected",
  "solver": {
    "max_iterations": )" + std::to_string(solver.max_iterations) + R"(,
    "kkt_tolerance": )" + format_number(solver.kkt_tolerance) + R"(,
    "step_shrink": )" + format_number(solver.step_shrink) + R"(,
    "initial_step": )" + format_number(solver.initial_step) + R"(,
    "warm_start": )" + (solver.warm_start ? "true" : "false") + R"(,
    // Solve at every k-th decision point; 1 solves at every step.
    "resolve_every": )" + std::to_string(solver.resolve_every) + R"(
  }
}
)";
}

}  // namespace oormlp
