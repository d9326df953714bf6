// Interpolated POVM families, the certificates telling whether a family
// leaves the averaged predictability or the averaged coherence unchanged,
// and the built-in sweep scenarios.
#pragma once

#include <string>
#include <vector>

#include "complab/wwd.hpp"

namespace complab {

// Pi_i(theta) = cos^2(theta) * A_i + sin^2(theta) * B_i. Valid for every
// theta: PSD by convexity, complete by linearity.
struct PovmFamily {
  POVMSet endpoint_a;
  POVMSet endpoint_b;
};

POVMSet interpolate_povm(const PovmFamily& family, double theta);

struct ConstancyCertificate {
  bool holds = false;
  // Constant-P: the path index attaining every branch's diagonal maximum
  // (lowest such index). -1 when the certificate fails.
  int common_index = -1;
  // First branch/entry witnessing the failure; -1 fields are unused.
  int failing_branch = -1;
  int failing_row = -1;
  int failing_col = -1;
  // Value the average must equal while the certificate holds: P(rho_s1) for
  // the constant-P form, C(rho_s1) for the constant-C form.
  double predicted_average = 0.0;
};

// Averaged predictability stays at P(rho_s1) iff one path index attains the
// diagonal maximum of every branch with probability >= prob_floor.
ConstancyCertificate check_constant_P(const JointState& joint, const POVMSet& povm,
                                      double prob_floor = 1e-12, double tie_tol = 1e-12);

// Averaged coherence stays at C(rho_s1) iff, for every off-diagonal (j,k),
// the branch elements share a single phase (within phase_tol; moduli below
// zero_tol are exempt).
ConstancyCertificate check_constant_C(const JointState& joint, const POVMSet& povm,
                                      double prob_floor = 1e-12, double zero_tol = 1e-12,
                                      double phase_tol = 1e-8);

struct ThetaGrid {
  double start = 0.0;
  double stop = 1.5707963267948966;  // pi/2
  int steps = 181;

  double value(int t) const {
    return start + (stop - start) * (static_cast<double>(t) / (steps - 1));
  }
};

struct ScenarioSpec {
  std::string name;
  PureState system_state;
  std::vector<PureState> detector_states;
  PovmFamily family;
  ThetaGrid grid;
};

// Built-in presets fig2a, fig2b, fig2c, figS1a, figS1b, figS1c: a three-path
// system prepared in (1,3,2)/sqrt(14) with pairwise detector overlaps 1/2,
// read out by six different theta families.
ScenarioSpec scenario(const std::string& name);
const std::vector<std::string>& scenario_names();

}  // namespace complab
