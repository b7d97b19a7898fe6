#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "avqa/circuit.hpp"
#include "avqa/hypertune.hpp"
#include "avqa/problems.hpp"
#include "avqa/result.hpp"

namespace avqa::io {

using json = nlohmann::json;

json to_json(const Circuit& c);
Circuit circuit_from_json(const json& j);

json to_json(const ProblemSpec& s);
ProblemSpec spec_from_json(const json& j);

/// {spec, q (row-major), constant, edges, values}
json to_json(const QuboInstance& q);
QuboInstance instance_from_json(const json& j);

/// {min_energy, argmin: bitstrings with qubit 0 leftmost}
json to_json(const GroundTruth& g, int n);
GroundTruth ground_truth_from_json(const json& j);

/// Everything but wall_time, so identical runs serialize identically.
json to_json(const AlgorithmResult& r);
AlgorithmResult result_from_json(const json& j);

json to_json(const hypertune::ParamConfig& p);
hypertune::ParamConfig param_config_from_json(const json& j);
json to_json(const hypertune::TrialRecord& t);

json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace avqa::io
