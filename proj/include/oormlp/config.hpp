#pragma once
// JSON experiment configuration: parsing into scenarios, sweep expansion,
// content digests and the generated reference config.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "oormlp/simulator.hpp"

namespace oormlp {

using Json = nlohmann::json;

// One "--sweep KEY=V1,V2,..." specification.
struct SweepSpec {
  std::string key;
  std::vector<double> values;
};

SweepSpec parse_sweep(const std::string& text);

// The keys a sweep may vary.
const std::vector<std::string>& sweepable_keys();

Json noise_to_json(const NoiseModel& noise);
NoiseModel noise_from_json(const Json& node, const std::string& path);

// Expands list-valued fields (noise_true, alpha, c_lambda, W) into their
// cartesian product. Errors name the offending field path.
std::vector<Scenario> parse_config(const Json& config);
std::vector<Scenario> load_config(const std::string& path);

// Each sweep multiplies the scenario list; ids gain "/key=value".
// omega only applies to scenarios whose true noise is periodic.
std::vector<Scenario> apply_sweeps(const std::vector<Scenario>& base, const std::vector<SweepSpec>& sweeps);

// Fully resolved scenario (every default filled in).
Json scenario_to_json(const Scenario& scenario);

// FNV-1a over the canonical dump of the resolved scenarios, as 16 hex digits.
// Formatting, key order and spelled-out defaults do not affect it.
std::string config_digest(const std::vector<Scenario>& scenarios);

// Every accepted key with its default value.
std::string reference_config();

std::string format_number(double value);

}  // namespace oormlp
