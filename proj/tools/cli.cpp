#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "oormlp/config.hpp"
#include "oormlp/error.hpp"
#include "oormlp/outputs.hpp"
#include "oormlp/verification.hpp"
#include "oormlp/version.hpp"

namespace oormlp::cli {

namespace {

struct Options {
  std::string config;
  std::string out = "out";
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> sweeps;
  std::string checks = "all";
  int paths = 0;
  double lambda_scale = 1.0;
};

int resolve_threads(const Options& options) {
  if (options.threads) return std::max(*options.threads, 1);
  if (const char* env = std::getenv("OORMLP_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::ConfigInvalid, "OORMLP_THREADS: expected a positive integer, got '" + std::string(env) + "'");
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void report_error(const Error& e) {
  const Json message{{"error", to_string(e.code())}, {"message", e.what()}};
  std::cerr << message.dump() << '\n';
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigInvalid:
    case ErrorCode::UnknownCheck: return kExitConfig;
    default: return kExitRuntime;
  }
}

std::vector<Scenario> load_scenarios(const Options& options, std::vector<SweepSpec>* sweeps_out) {
  std::vector<Scenario> scenarios = load_config(options.config);
  if (options.seed) {
    for (auto& s : scenarios) s.base_seed = *options.seed;
  }
  std::vector<SweepSpec> sweeps;
  for (const auto& text : options.sweeps) sweeps.push_back(parse_sweep(text));
  if (sweeps_out) *sweeps_out = sweeps;
  return apply_sweeps(scenarios, sweeps);
}

void print_run_summary(const GridResult& grid, const RunManifest& manifest) {
  std::cout << "scenarios: " << grid.scenarios.size() << "  trajectories: " << grid.trajectories.size()
            << "  failures: " << grid.failures.size() << "  digest: " << manifest.config_digest << '\n';
  for (const auto& f : grid.failures) {
    std::cerr << "replicate failed: " << f.scenario_id << " " << to_string(f.policy) << " #" << f.replicate
              << " seed=" << f.seed << ": " << f.message << '\n';
  }
  for (const auto& path : manifest.outputs) std::cout << "wrote " << path << '\n';
}

int cmd_run(const Options& options) {
  const auto scenarios = load_scenarios(options, nullptr);
  const GridResult grid = run_grid(scenarios, resolve_threads(options));
  const RunManifest manifest = write_run_outputs(options.out, grid);
  print_run_summary(grid, manifest);
  return kExitOk;
}

int cmd_sweep(const Options& options) {
  std::vector<SweepSpec> sweeps;
  const auto scenarios = load_scenarios(options, &sweeps);
  const GridResult grid = run_grid(scenarios, resolve_threads(options));
  RunManifest manifest = write_run_outputs(options.out, grid);

  Json specs = Json::array();
  for (const auto& s : sweeps) specs.push_back({{"key", s.key}, {"values", s.values}});
  Json cells = Json::array();
  for (const auto& s : grid.scenarios) cells.push_back(scenario_to_json(s));
  const auto index_path = std::filesystem::path(options.out) / "sweep_index.json";
  write_text_file(index_path, Json{{"config_digest", manifest.config_digest},
                                   {"sweeps", specs},
                                   {"cells", cells}}.dump(2) + "\n");
  manifest.outputs.push_back(index_path.string());
  print_run_summary(grid, manifest);
  return kExitOk;
}

std::vector<std::string> split_checks(const std::string& list) {
  if (list == "all") return available_checks();
  std::vector<std::string> names;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto& known = available_checks();
    if (std::find(known.begin(), known.end(), item) == known.end()) {
      throw Error(ErrorCode::UnknownCheck, "unknown check '" + item + "'");
    }
    names.push_back(item);
  }
  if (names.empty()) throw Error(ErrorCode::UnknownCheck, "no checks selected");
  return names;
}

int cmd_verify(const Options& options) {
  const auto names = split_checks(options.checks);
  VerifyOptions verify;
  if (options.seed) verify.seed = *options.seed;
  verify.paths = options.paths;
  verify.lambda_scale = options.lambda_scale;
  verify.threads = resolve_threads(options);

  std::vector<CheckRecord> records;
  bool all = true;
  for (const auto& name : names) {
    records.push_back(run_check(name, verify));
    const auto& r = records.back();
    all = all && r.passed;
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  statistic=" << r.statistic
              << " bound=" << r.bound << '\n';
    for (const auto& d : r.details) {
      std::cout << "    " << (d.informational ? "info" : (d.passed ? "pass" : "fail")) << "  " << d.label
                << "  " << d.statistic << " vs " << d.bound << '\n';
    }
  }
  std::error_code ec;
  std::filesystem::create_directories(options.out, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create '" + options.out + "': " + ec.message());
  const auto path = std::filesystem::path(options.out) / "verify_report.json";
  write_text_file(path, verify_report_json(records, verify).dump(2) + "\n");
  std::cout << "wrote " << path.string() << '\n';
  return all ? kExitOk : kExitVerification;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Online regularized maximum likelihood pricing: simulation and verification"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options options;

  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", options.threads, "Worker threads (default: OORMLP_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
  };

  auto* run_cmd = app.add_subcommand("run", "Simulate every scenario of a config");
  run_cmd->add_option("--config", options.config, "Experiment config (JSON)")->required();
  run_cmd->add_option("--out", options.out, "Output directory");
  run_cmd->add_option("--seed", options.seed, "Override base_seed");
  run_cmd->add_option("--sweep", options.sweeps, "KEY=V1,V2,... (repeatable)");
  add_threads(run_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "Cartesian sweep over a base config");
  sweep_cmd->add_option("--config", options.config, "Base config (JSON)")->required();
  sweep_cmd->add_option("--sweep", options.sweeps, "KEY=V1,V2,... (repeatable)");
  sweep_cmd->add_option("--out", options.out, "Output directory");
  sweep_cmd->add_option("--seed", options.seed, "Override base_seed");
  add_threads(sweep_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Monte Carlo checks of the theoretical guarantees");
  verify_cmd->add_option("--checks", options.checks, "Comma-separated check names or 'all'");
  verify_cmd->add_option("--seed", options.seed, "Base seed");
  verify_cmd->add_option("--paths", options.paths, "Override the per-check path count")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--lambda-scale", options.lambda_scale, "c_lambda used by the event_g check");
  verify_cmd->add_option("--out", options.out, "Directory for verify_report.json");
  add_threads(verify_cmd);

  std::string reference_out;
  auto* reference_cmd = app.add_subcommand("reference-config", "Print the reference config with all defaults");
  reference_cmd->add_option("--out", reference_out, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(options);
    if (*sweep_cmd) return cmd_sweep(options);
    if (*verify_cmd) return cmd_verify(options);
    if (*reference_cmd) {
      if (reference_out.empty()) {
        std::cout << reference_config();
      } else {
        write_text_file(reference_out, reference_config());
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    report_error(e);
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace oormlp::cli
