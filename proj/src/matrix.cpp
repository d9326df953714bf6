#include "complab/matrix.hpp"

#include <cmath>
#include <sstream>

namespace complab {

const char* violation_name(Violation v) {
  switch (v) {
    case Violation::NotFinite: return "NotFinite";
    case Violation::NotHermitian: return "NotHermitian";
    case Violation::BadTrace: return "BadTrace";
    case Violation::NotPsd: return "NotPSD";
    case Violation::BadNorm: return "BadNorm";
    case Violation::NotUnitary: return "NotUnitary";
    case Violation::BadDetectorState: return "BadDetectorState";
    case Violation::IncompleteSum: return "IncompleteSum";
    case Violation::PositivityBound: return "PositivityBound";
    case Violation::ExcessDroppedMass: return "ExcessDroppedMass";
    case Violation::OutOfRange: return "OutOfRange";
  }
  return "Unknown";
}

std::string ViolationReport::describe() const {
  std::ostringstream os;
  os << violation_name(kind) << " (magnitude " << magnitude;
  if (index >= 0) os << ", index " << index;
  os << ")";
  return os.str();
}

ValidationError::ValidationError(const ViolationReport& report)
    : std::runtime_error(report.describe()), report_(report) {}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

bool all_finite(const ComplexVector& v) {
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
  return true;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("hermiticity check needs a square matrix");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.rows() * b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) out.segment(i * b.rows(), b.rows()) = a(i) * b;
  return out;
}

namespace {
void require_joint_dims(const ComplexMatrix& m, int system_dim, int detector_dim) {
  if (system_dim < 1 || detector_dim < 1)
    throw DimensionMismatch("partial trace: factor dimensions must be positive");
  const Eigen::Index nd = static_cast<Eigen::Index>(system_dim) * detector_dim;
  if (m.rows() != nd || m.cols() != nd)
    throw DimensionMismatch("partial trace: matrix is not system_dim*detector_dim square");
}
}  // namespace

ComplexMatrix partial_trace_detector(const ComplexMatrix& m, int system_dim, int detector_dim) {
  require_joint_dims(m, system_dim, detector_dim);
  ComplexMatrix out = ComplexMatrix::Zero(system_dim, system_dim);
  for (int j = 0; j < system_dim; ++j)
    for (int k = 0; k < system_dim; ++k)
      out(j, k) = m.block(j * detector_dim, k * detector_dim, detector_dim, detector_dim).trace();
  return out;
}

ComplexMatrix partial_trace_system(const ComplexMatrix& m, int system_dim, int detector_dim) {
  require_joint_dims(m, system_dim, detector_dim);
  ComplexMatrix out = ComplexMatrix::Zero(detector_dim, detector_dim);
  for (int j = 0; j < system_dim; ++j)
    out += m.block(j * detector_dim, j * detector_dim, detector_dim, detector_dim);
  return out;
}

RealVector eigenvalues_hermitian(const ComplexMatrix& m, double herm_tol) {
  if (m.rows() != m.cols()) throw DimensionMismatch("eigenvalues: matrix must be square");
  const double defect = hermiticity_defect(m);
  if (!(defect <= herm_tol))
    throw ValidationError({Violation::NotHermitian, defect});
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();  // ascending
}

double min_eigenvalue_hermitian(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitized(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

ComplexMatrix sqrt_hermitian_psd(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitized(m));
  RealVector roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace complab
