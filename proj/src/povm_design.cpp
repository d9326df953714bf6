#include "complab/povm_design.hpp"

#include <cmath>
#include <cstdint>

namespace complab {

POVMSet interpolate_povm(const PovmFamily& family, double theta) {
  const POVMSet& a = family.endpoint_a;
  const POVMSet& b = family.endpoint_b;
  if (a.size() != b.size())
    throw IncompatibleEndpoints("endpoint POVMs have different effect counts");
  if (a.detector_dim() != b.detector_dim())
    throw IncompatibleEndpoints("endpoint POVMs have different dimensions");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double c2 = c * c;
  const double s2 = s * s;
  std::vector<ComplexMatrix> effects;
  effects.reserve(static_cast<size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) effects.push_back(c2 * a.effect(i) + s2 * b.effect(i));
  return POVMSet::validated(std::move(effects));
}

ConstancyCertificate check_constant_P(const JointState& joint, const POVMSet& povm,
                                      double prob_floor, double tie_tol) {
  if (povm.detector_dim() != joint.detector_dim)
    throw DimensionMismatch("POVM dimension does not match the detector");
  const int n = joint.system_dim;
  ConstancyCertificate cert;
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  std::uint64_t common = ~std::uint64_t{0};
  bool failed = false;
  for (int i = 0; i < povm.size(); ++i) {
    const ComplexMatrix t = hermitized(effect_block_trace(joint, povm.effect(i)));
    total += t;
    if (failed) continue;
    const double p = t.trace().real();
    if (p < prob_floor) continue;
    double mx = t(0, 0).real();
    for (int k = 1; k < n; ++k) mx = std::max(mx, t(k, k).real());
    std::uint64_t mask = 0;
    for (int k = 0; k < n; ++k)
      if (t(k, k).real() >= mx - tie_tol * p) mask |= std::uint64_t{1} << k;
    common &= mask;
    if (common == 0) {
      failed = true;
      cert.failing_branch = i;
    }
  }
  // The effects sum to I, so the accumulated branch matrices recombine into
  // the reduced system state.
  cert.predicted_average = predictability(DensityMatrix::trusted(total));
  cert.holds = !failed;
  if (cert.holds)
    for (int k = 0; k < n; ++k)
      if (common & (std::uint64_t{1} << k)) {
        cert.common_index = k;
        break;
      }
  return cert;
}

ConstancyCertificate check_constant_C(const JointState& joint, const POVMSet& povm,
                                      double prob_floor, double zero_tol, double phase_tol) {
  if (povm.detector_dim() != joint.detector_dim)
    throw DimensionMismatch("POVM dimension does not match the detector");
  const int n = joint.system_dim;
  ConstancyCertificate cert;
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  // reference phase per off-diagonal entry, as a unit complex number
  ComplexMatrix ref = ComplexMatrix::Zero(n, n);
  bool failed = false;
  for (int i = 0; i < povm.size(); ++i) {
    const ComplexMatrix t = hermitized(effect_block_trace(joint, povm.effect(i)));
    total += t;
    if (failed) continue;
    const double p = t.trace().real();
    if (p < prob_floor) continue;
    for (int j = 0; j < n && !failed; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const Complex z = t(j, k) / p;  // normalized branch element
        const double mod = std::abs(z);
        if (mod < zero_tol) continue;
        const Complex unit = z / mod;
        if (ref(j, k) == Complex(0.0, 0.0)) {
          ref(j, k) = unit;
          continue;
        }
        const double delta = std::abs(std::arg(unit * std::conj(ref(j, k))));
        if (delta > phase_tol) {
          failed = true;
          cert.failing_branch = i;
          cert.failing_row = j;
          cert.failing_col = k;
          break;
        }
      }
    }
  }
  cert.predicted_average = coherence_l1(DensityMatrix::trusted(total));
  cert.holds = !failed;
  return cert;
}

namespace {

ComplexVector vec3(double a, double b, double c) {
  ComplexVector v(3);
  v << Complex(a, 0), Complex(b, 0), Complex(c, 0);
  return v;
}

ComplexMatrix diag3(double a, double b, double c) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

struct ScenarioData {
  PureState system_state;
  std::vector<PureState> detectors;
  ComplexVector d1, d2, d3, psi123, psi12;
};

ScenarioData make_base() {
  ScenarioData s{PureState::normalized(vec3(1, 3, 2)), {},
                 ComplexVector(), ComplexVector(), ComplexVector(),
                 ComplexVector(), ComplexVector()};
  s.d1 = PureState::normalized(vec3(1, 1, 0)).amplitudes();
  s.d2 = PureState::normalized(vec3(0, 1, 1)).amplitudes();
  s.d3 = PureState::normalized(vec3(1, 0, 1)).amplitudes();
  s.detectors = {PureState::validated(s.d1), PureState::validated(s.d2),
                 PureState::validated(s.d3)};
  s.psi123 = PureState::normalized(s.d1 + s.d2 + s.d3).amplitudes();
  s.psi12 = PureState::normalized(s.d2 - 0.5 * s.d1).amplitudes();
  return s;
}

PovmFamily family_for(const std::string& name, const ScenarioData& s) {
  const ComplexMatrix eye = ComplexMatrix::Identity(3, 3);
  const ComplexMatrix zero = ComplexMatrix::Zero(3, 3);
  std::vector<ComplexMatrix> a, b;
  if (name == "fig2a") {
    a = {projector(s.d3), zero, eye - projector(s.d3)};
    b = {zero, projector(s.psi123), eye - projector(s.psi123)};
  } else if (name == "fig2b") {
    a = {diag3(1, 0, 0), diag3(0, 0, 1), diag3(0, 1, 0)};
    b = {projector(s.d1), projector(s.psi12),
         eye - projector(s.d1) - projector(s.psi12)};
  } else if (name == "fig2c") {
    a = {eye, zero};
    b = {projector(s.psi123), eye - projector(s.psi123)};
  } else if (name == "figS1a") {
    a = {diag3(1, 0, 0), diag3(0, 1, 0), diag3(0, 0, 1)};
    b = {diag3(1, 0, 0), diag3(0, 0, 1), diag3(0, 1, 0)};
  } else if (name == "figS1b") {
    a = {zero, diag3(0.5, 0, 0.5), diag3(0.5, 1, 0.5)};
    b = {diag3(1, 0, 0), diag3(0, 0, 0.5), diag3(0, 1, 0.5)};
  } else if (name == "figS1c") {
    a = {eye, zero, zero};
    b = {zero, projector(s.psi123), eye - projector(s.psi123)};
  } else {
    throw UnknownScenario(name);
  }
  return {POVMSet::validated(std::move(a)), POVMSet::validated(std::move(b))};
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"fig2a", "fig2b",  "fig2c",
                                                 "figS1a", "figS1b", "figS1c"};
  return names;
}

ScenarioSpec scenario(const std::string& name) {
  const ScenarioData base = make_base();
  PovmFamily family = family_for(name, base);
  return {name, base.system_state, base.detectors, std::move(family), ThetaGrid{}};
}

}  // namespace complab
