#include "oormlp/outputs.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>

#include "oormlp/error.hpp"
#include "oormlp/version.hpp"

namespace oormlp {

namespace {

void append_number(std::string& line, double value) {
  char buffer[40];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
  line.append(buffer, result.ptr);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  return out;
}

void check_stream(const std::ostream& out, const std::filesystem::path& path) {
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

}  // namespace

std::string format_csv_number(double value) {
  std::string out;
  append_number(out, value);
  return out;
}

void write_trajectories_csv(std::ostream& out, const GridResult& grid) {
  out << "scenario_id,replicate,t,policy,lambda_t,posted_price,cum_regret,est_err_l1,est_err_l2_sq\n";
  std::string line;
  for (const auto& m : grid.trajectories) {
    const std::string prefix = m.scenario_id + "," + std::to_string(m.replicate) + ",";
    const std::string policy(to_string(m.policy));
    for (std::size_t i = 0; i < m.cumulative_regret.size(); ++i) {
      line = prefix;
      line += std::to_string(i + 1);
      line += ',';
      line += policy;
      for (const auto* series : {&m.lambda, &m.posted_price, &m.cumulative_regret,
                                 &m.estimation_error_l1, &m.estimation_error_l2_sq}) {
        line += ',';
        append_number(line, (*series)[i]);
      }
      line += '\n';
      out << line;
    }
  }
}

void write_summary_csv(std::ostream& out, const GridResult& grid) {
  out << "scenario_id,policy,t_checkpoint";
  for (const char* name : kMetricNames) out << ",mean_" << name << ",std_" << name;
  out << '\n';
  std::string line;
  for (const auto& block : grid.summaries) {
    for (std::size_t c = 0; c < block.checkpoints.size(); ++c) {
      line = block.scenario_id + "," + std::string(to_string(block.policy)) + "," +
             std::to_string(block.checkpoints[c]);
      for (std::size_t k = 0; k < kMetricCount; ++k) {
        line += ',';
        append_number(line, block.mean[k][c]);
        line += ',';
        append_number(line, block.stddev[k][c]);
      }
      line += '\n';
      out << line;
    }
  }
}

RunManifest make_manifest(const std::vector<Scenario>& scenarios, std::vector<std::string> outputs) {
  RunManifest manifest;
  manifest.config_digest = config_digest(scenarios);
  manifest.tool_version = kVersion;
  manifest.timestamp = utc_timestamp();
  manifest.base_seed = scenarios.empty() ? 0 : scenarios.front().base_seed;
  manifest.scenarios = scenarios;
  manifest.outputs = std::move(outputs);
  return manifest;
}

Json manifest_to_json(const RunManifest& manifest) {
  Json scenarios = Json::array();
  for (const auto& s : manifest.scenarios) scenarios.push_back(scenario_to_json(s));
  Json failures = Json::array();
  for (const auto& f : manifest.failures) {
    failures.push_back({{"scenario_id", f.scenario_id},
                        {"policy", std::string(to_string(f.policy))},
                        {"replicate", f.replicate},
                        {"seed", f.seed},
                        {"message", f.message}});
  }
  return Json{{"config_digest", manifest.config_digest}, {"tool_version", manifest.tool_version},
              {"timestamp", manifest.timestamp},         {"base_seed", manifest.base_seed},
              {"scenarios", scenarios},                  {"outputs", manifest.outputs},
              {"failures", failures}};
}

Json check_to_json(const CheckRecord& record) {
  Json details = Json::array();
  for (const auto& d : record.details) {
    details.push_back({{"label", d.label},
                       {"statistic", d.statistic},
                       {"bound", d.bound},
                       {"stderr", d.stderr_},
                       {"passed", d.passed},
                       {"informational", d.informational}});
  }
  return Json{{"name", record.name},       {"statistic", record.statistic}, {"bound", record.bound},
              {"stderr", record.stderr_},  {"passed", record.passed},       {"seed", record.seed},
              {"details", details}};
}

Json verify_report_json(const std::vector<CheckRecord>& records, const VerifyOptions& options) {
  Json checks = Json::array();
  bool all = true;
  for (const auto& r : records) {
    checks.push_back(check_to_json(r));
    all = all && r.passed;
  }
  return Json{{"tool_version", kVersion},
              {"timestamp", utc_timestamp()},
              {"seed", options.seed},
              {"paths", options.paths},
              {"lambda_scale", options.lambda_scale},
              {"all_passed", all},
              {"checks", checks}};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  auto out = open_for_write(path);
  out << text;
  check_stream(out, path);
}

RunManifest write_run_outputs(const std::filesystem::path& directory, const GridResult& grid) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create '" + directory.string() + "': " + ec.message());
  const auto trajectories = directory / "trajectories.csv";
  const auto summary = directory / "summary.csv";
  const auto manifest_path = directory / "manifest.json";
  {
    auto out = open_for_write(trajectories);
    write_trajectories_csv(out, grid);
    check_stream(out, trajectories);
  }
  {
    auto out = open_for_write(summary);
    write_summary_csv(out, grid);
    check_stream(out, summary);
  }
  RunManifest manifest =
      make_manifest(grid.scenarios, {trajectories.string(), summary.string(), manifest_path.string()});
  manifest.failures = grid.failures;
  write_text_file(manifest_path, manifest_to_json(manifest).dump(2) + "\n");
  return manifest;
}

}  // namespace oormlp
