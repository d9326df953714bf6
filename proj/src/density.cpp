#include "complab/density.hpp"

#include <cmath>

namespace complab {

std::optional<ViolationReport> check_density(const ComplexMatrix& m,
                                             const DensityTolerances& tol) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw DimensionMismatch("density matrix must be square and nonempty");
  if (!all_finite(m)) return ViolationReport{Violation::NotFinite, 0.0};
  const double defect = hermiticity_defect(m);
  if (!(defect <= tol.hermiticity)) return ViolationReport{Violation::NotHermitian, defect};
  const double trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));
  if (!(trace_dev <= tol.trace)) return ViolationReport{Violation::BadTrace, trace_dev};
  const double min_eig = min_eigenvalue_hermitian(m);
  if (!(min_eig >= -tol.psd_floor)) return ViolationReport{Violation::NotPsd, min_eig};
  return std::nullopt;
}

DensityMatrix DensityMatrix::validated(ComplexMatrix m, const DensityTolerances& tol) {
  if (auto bad = check_density(m, tol)) throw ValidationError(*bad);
  return DensityMatrix(std::move(m));
}

DensityMatrix validate_density(const ComplexMatrix& m, const DensityTolerances& tol) {
  return DensityMatrix::validated(m, tol);
}

PureState PureState::validated(ComplexVector v, double norm_tol) {
  if (v.rows() < 1) throw DimensionMismatch("pure state must be nonempty");
  if (!all_finite(v)) throw ValidationError({Violation::NotFinite, 0.0});
  const double norm_dev = std::abs(v.norm() - 1.0);
  if (!(norm_dev <= norm_tol)) throw ValidationError({Violation::BadNorm, norm_dev});
  return PureState(std::move(v));
}

PureState PureState::normalized(const ComplexVector& v) {
  if (v.rows() < 1) throw DimensionMismatch("pure state must be nonempty");
  if (!all_finite(v)) throw ValidationError({Violation::NotFinite, 0.0});
  const double n = v.norm();
  if (!(n > 0.0)) throw ValidationError({Violation::BadNorm, 0.0});
  return PureState(v / n);
}

DensityMatrix random_density(int dim, Rng& rng, Ensemble ensemble) {
  if (dim < 2) throw DimensionMismatch("random_density: dim must be >= 2");
  if (ensemble == Ensemble::PureHaar) return random_pure(dim, rng).density();
  ComplexMatrix g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = rng.complex_gaussian();
  ComplexMatrix w = g * g.adjoint();
  w /= w.trace().real();
  // Hermitian and PSD by construction; kill the roundoff asymmetry exactly.
  return DensityMatrix::trusted(hermitized(w));
}

DensityMatrix random_density(int dim, const RngSpec& spec, Ensemble ensemble) {
  Rng rng(spec);
  return random_density(dim, rng, ensemble);
}

PureState random_pure(int dim, Rng& rng) {
  if (dim < 1) throw DimensionMismatch("random_pure: dim must be >= 1");
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
  return PureState::normalized(v);
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
  if (dim < 1) throw DimensionMismatch("random_unitary: dim must be >= 1");
  ComplexMatrix g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the column phases so the distribution is Haar, not QR-convention biased.
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

}  // namespace complab
