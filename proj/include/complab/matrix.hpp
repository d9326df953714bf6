// Dense complex matrix utilities: tensor products with system-major block
// ordering, partial traces over either factor, and a checked Hermitian
// eigensolver. Eigen supplies the storage and decompositions.
#pragma once

#include <Eigen/Dense>
#include <complex>

#include "complab/errors.hpp"

namespace complab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

bool all_finite(const ComplexMatrix& m);
bool all_finite(const ComplexVector& v);

// Largest entry magnitude of m - m^dagger.
double hermiticity_defect(const ComplexMatrix& m);

inline ComplexMatrix hermitized(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Kronecker product, row index = i_a * b.rows() + i_b (first factor major).
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b);

// Trace out the second (detector) factor of a (system_dim*detector_dim)^2
// matrix stored in system-major block order; result is system_dim x system_dim.
ComplexMatrix partial_trace_detector(const ComplexMatrix& m, int system_dim, int detector_dim);

// Trace out the first (system) factor; result is detector_dim x detector_dim.
ComplexMatrix partial_trace_system(const ComplexMatrix& m, int system_dim, int detector_dim);

// Eigenvalues of a Hermitian matrix in ascending order. Rejects inputs whose
// hermiticity defect exceeds herm_tol.
RealVector eigenvalues_hermitian(const ComplexMatrix& m, double herm_tol = 1e-10);

double min_eigenvalue_hermitian(const ComplexMatrix& m);

// Hermitian principal square root; negative roundoff eigenvalues are clamped.
ComplexMatrix sqrt_hermitian_psd(const ComplexMatrix& m);

}  // namespace complab
