#include "complab/io.hpp"

#include <cstdio>
#include <fstream>
#include <utility>

namespace complab {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

namespace {

Complex complex_from_json(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(std::string(where) + ": complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

const json& require(const json& j, const char* key, const char* where) {
  const auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string(where) + ": missing field \"" + key + "\"");
  return *it;
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix: expected an object");
  const json& jd = require(j, "dim", "matrix");
  if (!jd.is_number_integer() || jd.get<int>() < 1)
    throw ParseError("matrix: \"dim\" must be a positive integer");
  const int dim = jd.get<int>();
  const json& je = require(j, "entries", "matrix");
  if (!je.is_array() || je.size() != static_cast<size_t>(dim) * dim)
    throw ParseError("matrix: \"entries\" must hold dim*dim [re, im] pairs");
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k)
      m(i, k) = complex_from_json(je[static_cast<size_t>(i) * dim + k], "matrix");
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("matrix_to_json: matrix must be square");
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) entries.push_back(complex_to_json(m(i, k)));
  return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

ComplexVector vector_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("vector: expected an object");
  const json& ja = require(j, "amplitudes", "vector");
  if (!ja.is_array() || ja.empty())
    throw ParseError("vector: \"amplitudes\" must be a nonempty array");
  ComplexVector v(static_cast<Eigen::Index>(ja.size()));
  for (size_t i = 0; i < ja.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = complex_from_json(ja[i], "vector");
  return v;
}

json vector_to_json(const ComplexVector& v) {
  json amps = json::array();
  for (Eigen::Index i = 0; i < v.rows(); ++i) amps.push_back(complex_to_json(v(i)));
  return json{{"amplitudes", std::move(amps)}};
}

DensityMatrix state_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("state: expected an object");
  if (j.contains("entries") || j.contains("dim"))
    return DensityMatrix::validated(matrix_from_json(j));
  if (j.contains("amplitudes"))
    return PureState::validated(vector_from_json(j)).density();
  throw ParseError("state: expected a matrix ({dim, entries}) or a vector ({amplitudes})");
}

ScenarioSpec scenario_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("scenario: expected an object");

  std::string name = "custom";
  if (const auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) throw ParseError("scenario: \"name\" must be a string");
    name = it->get<std::string>();
  }

  PureState system = PureState::validated(
      vector_from_json(require(j, "system_state", "scenario")));

  const json& jd = require(j, "detector_states", "scenario");
  if (!jd.is_array() || jd.size() < 2)
    throw ParseError("scenario: \"detector_states\" needs one vector per path (>= 2)");
  std::vector<PureState> detectors;
  detectors.reserve(jd.size());
  for (const json& d : jd) detectors.push_back(PureState::validated(vector_from_json(d)));
  if (static_cast<int>(detectors.size()) != system.dim())
    throw ParseError("scenario: detector_states count must match the system dimension");

  const auto effects = [](const json& arr, const char* key) {
    if (!arr.is_array() || arr.empty())
      throw ParseError(std::string("scenario: \"") + key + "\" must be a nonempty array");
    std::vector<ComplexMatrix> out;
    out.reserve(arr.size());
    for (const json& e : arr) out.push_back(matrix_from_json(e));
    return out;
  };
  PovmFamily family{
      POVMSet::validated(effects(require(j, "endpoint_a", "scenario"), "endpoint_a")),
      POVMSet::validated(effects(require(j, "endpoint_b", "scenario"), "endpoint_b"))};

  ThetaGrid grid;
  if (const auto it = j.find("theta"); it != j.end()) {
    const json& jt = *it;
    if (!jt.is_object()) throw ParseError("scenario: \"theta\" must be an object");
    const json& js = require(jt, "start", "theta");
    const json& je = require(jt, "stop", "theta");
    const json& jn = require(jt, "steps", "theta");
    if (!js.is_number() || !je.is_number() || !jn.is_number_integer())
      throw ParseError("scenario: theta needs numeric start/stop and integer steps");
    grid.start = js.get<double>();
    grid.stop = je.get<double>();
    grid.steps = jn.get<int>();
    if (grid.steps < 2) throw ParseError("scenario: theta.steps must be >= 2");
  }

  return {std::move(name), std::move(system), std::move(detectors), std::move(family), grid};
}

ScenarioSpec load_scenario_file(const std::string& path) {
  return scenario_from_json(load_json_file(path));
}

}  // namespace complab
