// Which-way-detector coupling, POVM readout of the detector, and the
// subensemble averages of the complementarity quantifiers.
//
// The coupling is controlled-unitary: U = sum_k |k><k| (x) U_k. Acting on
// rho_s (x) rho_d it produces blocks (rho_sd)_{jk} = rho_jk * U_j rho_d U_k^+,
// stored system-major. Reading the detector with effects {Pi_i} splits the
// system into branches rho_{s,i} = tr_d{(I (x) Pi_i) rho_sd} / P_i.
#pragma once

#include <optional>
#include <vector>

#include "complab/measures.hpp"

namespace complab {

struct WWDInteraction {
  int system_dim = 0;
  int detector_dim = 0;
  std::vector<ComplexMatrix> unitaries;  // one per system basis state
  DensityMatrix detector_input;
  // Set when built from target states |d_k> = U_k |0>; kept for callers that
  // reason in terms of detector-state overlaps.
  std::optional<std::vector<ComplexVector>> detector_states;
};

// From per-path detector target states. The detector starts in |0>; each U_k
// is a unitary completion (Householder QR) mapping |0> to the k-th state.
WWDInteraction build_interaction(const std::vector<PureState>& detector_states);

// From explicit unitaries and an arbitrary detector input state.
WWDInteraction build_interaction(std::vector<ComplexMatrix> unitaries,
                                 DensityMatrix detector_input,
                                 double unitarity_tol = 1e-10);

struct JointState {
  int system_dim = 0;
  int detector_dim = 0;
  DensityMatrix rho_sd;
};

JointState evolve(const DensityMatrix& rho_s, const WWDInteraction& w);

struct ReducedPair {
  DensityMatrix system;
  DensityMatrix detector;
};

ReducedPair reduced_states(const JointState& joint);

class POVMSet {
 public:
  struct Tolerances {
    double hermiticity = 1e-10;
    double psd_floor = 1e-10;
    double completeness = 1e-10;  // entrywise |sum - I|
  };

  static POVMSet validated(std::vector<ComplexMatrix> effects, const Tolerances& tol);
  static POVMSet validated(std::vector<ComplexMatrix> effects) {
    return validated(std::move(effects), Tolerances{});
  }

  int detector_dim() const { return dim_; }
  int size() const { return static_cast<int>(effects_.size()); }
  const ComplexMatrix& effect(int i) const { return effects_[static_cast<size_t>(i)]; }
  const std::vector<ComplexMatrix>& effects() const { return effects_; }

 private:
  POVMSet(int dim, std::vector<ComplexMatrix> effects)
      : dim_(dim), effects_(std::move(effects)) {}
  int dim_ = 0;
  std::vector<ComplexMatrix> effects_;
};

POVMSet validate_povm(std::vector<ComplexMatrix> effects, const POVMSet::Tolerances& tol = {});

// n_effects random PSD matrices A_i, renormalized as S^{-1/2} A_i S^{-1/2}
// with S = sum A_i so they add up to the identity.
POVMSet random_povm(int dim, int n_effects, Rng& rng);

// Unnormalized branch matrix tr_d{(I (x) effect) rho_sd}; its trace is the
// branch probability. Computed blockwise, no ND x ND product.
ComplexMatrix effect_block_trace(const JointState& joint, const ComplexMatrix& effect);

struct Subensemble {
  double probability = 0.0;
  DensityMatrix state;
};

struct SubensembleDecomposition {
  std::vector<Subensemble> branches;
  double dropped_mass = 0.0;  // total probability of skipped branches
  static constexpr double kProbabilityFloor = 1e-12;
};

SubensembleDecomposition decompose(const JointState& joint, const POVMSet& povm);

struct AveragedTriple {
  double p_bar = 0.0;
  double c_bar = 0.0;
  double s_bar = 0.0;       // sum_i P_i * S_i
  double s_bar_sqrt = 0.0;  // sum_i P_i * sqrt(S_i)
};

// Requires dropped_mass < 1e-9 (ExcessDroppedMass otherwise).
AveragedTriple averages(const SubensembleDecomposition& d);

struct AveragedTcrReport {
  double lhs_linear = 0.0;  // p_bar^2 + c_bar^2 + s_bar
  double lhs_sqrt = 0.0;    // p_bar^2 + c_bar^2 + s_bar_sqrt^2
  double margin_linear = 0.0;
  double margin_sqrt = 0.0;
  std::optional<double> duality_lhs;  // p_bar^2 + C(rho_s1)^2 when supplied

  bool within_bounds(double tol = 1e-10) const {
    return margin_linear >= -tol && margin_sqrt >= -tol &&
           (!duality_lhs || *duality_lhs <= 1.0 + tol);
  }
};

AveragedTcrReport averaged_tcr(const AveragedTriple& t,
                               std::optional<double> coherence_s1 = std::nullopt);

}  // namespace complab
