// JSON file formats and deterministic number formatting.
//
// Matrix:  {"dim": N, "entries": [[re, im], ...]}   row-major, N*N pairs
// Vector:  {"amplitudes": [[re, im], ...]}
// Scenario: {"name": ..., "system_state": <vector>,
//            "detector_states": [<vector>, ...],
//            "endpoint_a": [<matrix>, ...], "endpoint_b": [<matrix>, ...],
//            "theta": {"start": s, "stop": e, "steps": n}}   (theta optional)
#pragma once

#include <string>

#include <json.hpp>

#include "complab/povm_design.hpp"

namespace complab {

// 17 significant digits; round-trip exact for double.
std::string format_double(double v);

nlohmann::json load_json_file(const std::string& path);

ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

ComplexVector vector_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const ComplexVector& v);

// A state file holds either a matrix or a pure-state vector.
DensityMatrix state_from_json(const nlohmann::json& j);

ScenarioSpec scenario_from_json(const nlohmann::json& j);
ScenarioSpec load_scenario_file(const std::string& path);

}  // namespace complab
