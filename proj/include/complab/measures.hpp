// Complementarity quantifiers for N-state systems and the structures that
// saturate their joint bound.
//
// For a density matrix rho of dimension N:
//   predictability  P = (N * max_k rho_kk - 1) / (N - 1)
//   coherence       C = sum_{i != k} |rho_ik| / (N - 1)
//   linear entropy  S_L = N * (1 - tr rho^2) / (N - 1)
// These satisfy P^2 + C^2 + S_L <= 1, with equality for every qubit state and
// exactly on the uniform-offdiagonal family below for N > 2.
#pragma once

#include <vector>

#include "complab/density.hpp"

namespace complab {

struct MeasureTriple {
  double predictability = 0.0;
  double coherence = 0.0;
  double linear_entropy = 0.0;

  double tcr_lhs() const {
    return predictability * predictability + coherence * coherence + linear_entropy;
  }
  double duality_lhs() const {
    return predictability * predictability + coherence * coherence;
  }
};

// Dispersion-style cross-check pair:
//   predictability sqrt(N/(N-1) * sum_j (rho_jj - 1/N)^2)
//   visibility     sqrt(N/(N-1) * sum_{j != k} |rho_jk|^2)
// They obey predictability^2 + visibility^2 + S_L = 1 identically and
// dominate the headline P and C entrywise.
struct DurrPair {
  double predictability = 0.0;
  double visibility = 0.0;
};

double predictability(const DensityMatrix& rho);
int most_probable_index(const DensityMatrix& rho);  // lowest index on ties
double coherence_l1(const DensityMatrix& rho);
double linear_entropy(const DensityMatrix& rho);
MeasureTriple tcr_triple(const DensityMatrix& rho);
DurrPair durr_measures(const DensityMatrix& rho);

// Family saturating the ternary bound: diagonal (p1, p2, ..., p2) with
// p2 = (1-p1)/(N-1) and every off-diagonal modulus equal to a_mod. Phases
// fill the strict lower triangle row by row: (1,0), (2,0), (2,1), (3,0), ...;
// the upper triangle is conjugate. Positivity restricts a_mod to
// sqrt(p1*p2) for N = 2 and to p2 for N > 2 (necessary; for N > 2 it is
// sufficient only when the phases factor as phi_ik = t_i - t_k, so the
// constructed matrix is re-validated and may still be rejected as non-PSD).
struct SaturationParams {
  int dim = 2;
  double p1 = 0.5;
  double a_mod = 0.0;
  std::vector<double> phases;  // size dim*(dim-1)/2
  int p1_position = 0;

  double p2() const { return (1.0 - p1) / (dim - 1); }
  double a_bound() const;
};

DensityMatrix saturating_state(const SaturationParams& params);

// Wootters concurrence of a two-qubit state. Computed as the singular values
// of sqrt(rho) * (sy (x) sy) * conj(sqrt(rho)), which carries the same
// spectrum as the textbook product rho * (sy (x) sy) * conj(rho) * (sy (x) sy)
// but stays accurate when eigenvalues cluster at zero (pure states).
double concurrence_two_qubit(const DensityMatrix& rho);

// Signed distance to the low-entropy boundary curve:
//   2*S_L - (1 - (P^2 - C^2)^2)
// Nonnegative (within tolerance) on the PSD part of the saturating family;
// zero exactly at a_mod = p2.
double boundary_gap(const DensityMatrix& rho);
double boundary_gap(const MeasureTriple& t);

}  // namespace complab
