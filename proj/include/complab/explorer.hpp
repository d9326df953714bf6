// Sampling of the (P, C, S_L) region, theta sweeps over scenarios, and the
// property verifier producing a machine-readable pass/fail report.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "complab/povm_design.hpp"

namespace complab {

struct TrianglePoint {
  double predictability = 0.0;
  double coherence = 0.0;
  double linear_entropy = 0.0;
  SaturationParams params;
  double boundary_gap = 0.0;
};

// count saturating-family states with p1 ~ U[1/dim, 1], a_mod ~ U[0, bound],
// phases ~ U[0, 2pi), rejection-resampled until PSD. Sample i uses stream
// base.stream_id + i, so results are independent of worker partitioning.
std::vector<TrianglePoint> sample_region(int count, int dim, const RngSpec& base);

struct SweepPoint {
  double theta = 0.0;
  AveragedTriple avg;
  double tcr_lhs = 0.0;       // p_bar^2 + c_bar^2 + s_bar
  double tcr_lhs_sqrt = 0.0;  // p_bar^2 + c_bar^2 + s_bar_sqrt^2
  double duality_lhs = 0.0;   // p_bar^2 + C(rho_s1)^2
  bool const_p = false;
  bool const_c = false;
  double dropped_mass = 0.0;
};

struct SweepResult {
  std::string scenario;
  std::vector<SweepPoint> points;
};

SweepResult sweep(const ScenarioSpec& spec);

enum class Mutation {
  None,
  // Test hook: skip the 1/(N-1) normalization of the coherence inside the
  // bound checks. Demonstrates the duality property actually bites.
  DropNormalization,
};

struct VerifyConfig {
  std::uint64_t seed = 20250815;
  std::vector<int> tcr_dims = {2, 3, 4, 5, 6};
  int tcr_samples = 100000;        // per dim
  int lemma_samples = 100000;
  int mix_samples = 100000;        // concavity/convexity triples
  std::vector<int> saturation_dims = {2, 3, 4, 5};
  int saturation_samples = 10000;  // per dim
  int wwd_samples = 10000;
  int two_qubit_samples = 10000;   // per ensemble (pure, mixed)
  int boundary_samples = 100000;   // dim 3
  Mutation mutation = Mutation::None;
};

// margin >= -tolerance means the property held on every sample; for equality
// properties the margin is -|deviation|. worst_stream identifies the sample
// (rng stream id) attaining the worst margin.
struct PropertyResult {
  std::string name;
  long long samples = 0;
  double worst_margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t worst_stream = 0;
};

struct PropertyReport {
  std::vector<PropertyResult> properties;
  bool all_pass() const;
  const PropertyResult* find(const std::string& name) const;
};

PropertyReport verify_properties(const VerifyConfig& config = {});

}  // namespace complab
