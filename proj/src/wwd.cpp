#include "complab/wwd.hpp"

#include <cmath>

namespace complab {

namespace {

// Unitary completion: maps |0> to the given unit vector (Householder QR with
// the first-column phase fixed).
ComplexMatrix completion_unitary(const ComplexVector& d) {
  const ComplexMatrix column = d;
  Eigen::HouseholderQR<ComplexMatrix> qr(column);
  ComplexMatrix q = qr.householderQ();
  const Complex r = qr.matrixQR()(0, 0);  // |r| = ||d|| = 1
  q.col(0) *= r / std::abs(r);
  return q;
}

}  // namespace

WWDInteraction build_interaction(const std::vector<PureState>& detector_states) {
  if (detector_states.size() < 2)
    throw DimensionMismatch("build_interaction: need at least two detector states");
  const int d = detector_states.front().dim();
  if (d < 2) throw DimensionMismatch("build_interaction: detector dim must be >= 2");
  std::vector<ComplexMatrix> unitaries;
  std::vector<ComplexVector> targets;
  unitaries.reserve(detector_states.size());
  targets.reserve(detector_states.size());
  for (const PureState& s : detector_states) {
    if (s.dim() != d)
      throw DimensionMismatch("build_interaction: detector states must share one dimension");
    unitaries.push_back(completion_unitary(s.amplitudes()));
    targets.push_back(s.amplitudes());
  }
  ComplexMatrix ground = ComplexMatrix::Zero(d, d);
  ground(0, 0) = 1.0;
  WWDInteraction w{static_cast<int>(detector_states.size()), d, std::move(unitaries),
                   DensityMatrix::trusted(std::move(ground)), std::move(targets)};
  return w;
}

WWDInteraction build_interaction(std::vector<ComplexMatrix> unitaries,
                                 DensityMatrix detector_input, double unitarity_tol) {
  if (unitaries.size() < 2)
    throw DimensionMismatch("build_interaction: need at least two path unitaries");
  const int d = detector_input.dim();
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  for (size_t k = 0; k < unitaries.size(); ++k) {
    const ComplexMatrix& u = unitaries[k];
    if (u.rows() != d || u.cols() != d)
      throw DimensionMismatch("build_interaction: unitary dimension mismatch");
    const double defect = (u.adjoint() * u - eye).cwiseAbs().maxCoeff();
    if (!(defect <= unitarity_tol))
      throw ValidationError({Violation::NotUnitary, defect, static_cast<int>(k)});
  }
  return {static_cast<int>(unitaries.size()), d, std::move(unitaries),
          std::move(detector_input), std::nullopt};
}

JointState evolve(const DensityMatrix& rho_s, const WWDInteraction& w) {
  const int n = w.system_dim;
  const int d = w.detector_dim;
  if (rho_s.dim() != n)
    throw DimensionMismatch("evolve: system state dimension does not match interaction");
  // Controlled unitary on rho_s (x) rho_d, written per block:
  // block(j,k) = rho_jk * U_j rho_d U_k^+.
  std::vector<ComplexMatrix> propagated(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    propagated[static_cast<size_t>(k)] = w.unitaries[static_cast<size_t>(k)] *
                                         w.detector_input.matrix();
  ComplexMatrix out(n * d, n * d);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      out.block(j * d, k * d, d, d) =
          rho_s(j, k) * (propagated[static_cast<size_t>(j)] *
                         w.unitaries[static_cast<size_t>(k)].adjoint());
  return {n, d, DensityMatrix::validated(hermitized(out))};
}

ReducedPair reduced_states(const JointState& joint) {
  const ComplexMatrix& m = joint.rho_sd.matrix();
  ComplexMatrix sys = partial_trace_detector(m, joint.system_dim, joint.detector_dim);
  ComplexMatrix det = partial_trace_system(m, joint.system_dim, joint.detector_dim);
  return {DensityMatrix::validated(hermitized(sys)),
          DensityMatrix::validated(hermitized(det))};
}

POVMSet POVMSet::validated(std::vector<ComplexMatrix> effects, const Tolerances& tol) {
  if (effects.empty()) throw DimensionMismatch("POVM needs at least one effect");
  const int d = static_cast<int>(effects.front().rows());
  if (d < 1) throw DimensionMismatch("POVM effects must be nonempty");
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (size_t i = 0; i < effects.size(); ++i) {
    const ComplexMatrix& e = effects[i];
    if (e.rows() != d || e.cols() != d)
      throw DimensionMismatch("POVM effects must be square with one shared dimension");
    if (!all_finite(e)) throw ValidationError({Violation::NotFinite, 0.0, static_cast<int>(i)});
    const double defect = hermiticity_defect(e);
    if (!(defect <= tol.hermiticity))
      throw ValidationError({Violation::NotHermitian, defect, static_cast<int>(i)});
    const double min_eig = min_eigenvalue_hermitian(e);
    if (!(min_eig >= -tol.psd_floor))
      throw ValidationError({Violation::NotPsd, min_eig, static_cast<int>(i)});
    sum += e;
  }
  const double gap = (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (!(gap <= tol.completeness)) throw ValidationError({Violation::IncompleteSum, gap});
  return POVMSet(d, std::move(effects));
}

POVMSet validate_povm(std::vector<ComplexMatrix> effects, const POVMSet::Tolerances& tol) {
  return POVMSet::validated(std::move(effects), tol);
}

POVMSet random_povm(int dim, int n_effects, Rng& rng) {
  if (dim < 2) throw DimensionMismatch("random_povm: dim must be >= 2");
  if (n_effects < 1) throw DimensionMismatch("random_povm: need at least one effect");
  std::vector<ComplexMatrix> parts;
  parts.reserve(static_cast<size_t>(n_effects));
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < n_effects; ++i) {
    ComplexMatrix g(dim, dim);
    for (int c = 0; c < dim; ++c)
      for (int r = 0; r < dim; ++r) g(r, c) = rng.complex_gaussian();
    ComplexMatrix a = g * g.adjoint();
    sum += a;
    parts.push_back(std::move(a));
  }
  // sum is positive definite almost surely; whiten so the effects add to I.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitized(sum));
  const ComplexMatrix inv_root = solver.eigenvectors() *
                                 solver.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                 solver.eigenvectors().adjoint();
  std::vector<ComplexMatrix> effects;
  effects.reserve(parts.size());
  for (const ComplexMatrix& a : parts) effects.push_back(hermitized(inv_root * a * inv_root));
  return POVMSet::validated(std::move(effects));
}

ComplexMatrix effect_block_trace(const JointState& joint, const ComplexMatrix& effect) {
  const int n = joint.system_dim;
  const int d = joint.detector_dim;
  if (effect.rows() != d || effect.cols() != d)
    throw DimensionMismatch("effect dimension does not match the detector");
  const ComplexMatrix& m = joint.rho_sd.matrix();
  const ComplexMatrix effect_t = effect.transpose();
  ComplexMatrix out(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      out(j, k) = effect_t.cwiseProduct(m.block(j * d, k * d, d, d)).sum();
  return out;
}

SubensembleDecomposition decompose(const JointState& joint, const POVMSet& povm) {
  if (povm.detector_dim() != joint.detector_dim)
    throw DimensionMismatch("POVM dimension does not match the detector");
  SubensembleDecomposition result;
  for (int i = 0; i < povm.size(); ++i) {
    // Hermitize before normalizing: the raw asymmetry is ~1e-17 but dividing
    // by a small branch probability would amplify it.
    ComplexMatrix t = hermitized(effect_block_trace(joint, povm.effect(i)));
    const double p = t.trace().real();
    if (p < SubensembleDecomposition::kProbabilityFloor) {
      result.dropped_mass += p;
      continue;
    }
    result.branches.push_back({p, DensityMatrix::validated(t / p)});
  }
  return result;
}

AveragedTriple averages(const SubensembleDecomposition& d) {
  if (!(d.dropped_mass < 1e-9))
    throw ValidationError({Violation::ExcessDroppedMass, d.dropped_mass});
  AveragedTriple out;
  for (const Subensemble& b : d.branches) {
    const MeasureTriple t = tcr_triple(b.state);
    out.p_bar += b.probability * t.predictability;
    out.c_bar += b.probability * t.coherence;
    out.s_bar += b.probability * t.linear_entropy;
    out.s_bar_sqrt += b.probability * std::sqrt(t.linear_entropy);
  }
  return out;
}

AveragedTcrReport averaged_tcr(const AveragedTriple& t, std::optional<double> coherence_s1) {
  AveragedTcrReport r;
  const double pc = t.p_bar * t.p_bar + t.c_bar * t.c_bar;
  r.lhs_linear = pc + t.s_bar;
  r.lhs_sqrt = pc + t.s_bar_sqrt * t.s_bar_sqrt;
  r.margin_linear = 1.0 - r.lhs_linear;
  r.margin_sqrt = 1.0 - r.lhs_sqrt;
  if (coherence_s1)
    r.duality_lhs = t.p_bar * t.p_bar + *coherence_s1 * *coherence_s1;
  return r;
}

}  // namespace complab
