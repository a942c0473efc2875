#pragma once
// CSV and JSON artifacts written by the command-line tool.

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "oormlp/config.hpp"
#include "oormlp/simulator.hpp"
#include "oormlp/verification.hpp"

namespace oormlp {

// 17 significant digits, '.' decimal point, no grouping.
std::string format_csv_number(double value);

// scenario_id,replicate,t,policy,lambda_t,posted_price,cum_regret,est_err_l1,est_err_l2_sq
void write_trajectories_csv(std::ostream& out, const GridResult& grid);
// scenario_id,policy,t_checkpoint,mean_<metric>,std_<metric> for each metric
void write_summary_csv(std::ostream& out, const GridResult& grid);

struct RunManifest {
  std::string config_digest;
  std::string tool_version;
  std::string timestamp;  // UTC, ISO 8601
  std::uint64_t base_seed = 0;
  std::vector<Scenario> scenarios;
  std::vector<std::string> outputs;
  std::vector<ReplicateFailure> failures;
};

RunManifest make_manifest(const std::vector<Scenario>& scenarios, std::vector<std::string> outputs);
Json manifest_to_json(const RunManifest& manifest);

Json check_to_json(const CheckRecord& record);
Json verify_report_json(const std::vector<CheckRecord>& records, const VerifyOptions& options);

// Writes trajectories.csv, summary.csv and manifest.json into `directory`.
RunManifest write_run_outputs(const std::filesystem::path& directory, const GridResult& grid);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace oormlp
