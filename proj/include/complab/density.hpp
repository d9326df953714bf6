// Density matrices and pure states as validated value types, plus random
// state ensembles. A DensityMatrix can only be obtained through validation
// or from constructions that guarantee the invariants.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "complab/matrix.hpp"
#include "complab/rng.hpp"

namespace complab {

struct DensityTolerances {
  double hermiticity = 1e-12;
  double trace = 1e-12;
  double psd_floor = 1e-10;  // smallest eigenvalue must be >= -psd_floor
};

// Non-throwing check; empty result means all invariants hold.
std::optional<ViolationReport> check_density(const ComplexMatrix& m,
                                             const DensityTolerances& tol = {});

class DensityMatrix {
 public:
  static DensityMatrix validated(ComplexMatrix m, const DensityTolerances& tol = {});

  // For outputs of algorithms that guarantee the invariants by construction
  // (e.g. G G^dagger / tr normalized, or convex combinations of states).
  static DensityMatrix trusted(ComplexMatrix m) { return DensityMatrix(std::move(m)); }

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

// Throwing form of check_density.
DensityMatrix validate_density(const ComplexMatrix& m, const DensityTolerances& tol = {});

class PureState {
 public:
  static PureState validated(ComplexVector v, double norm_tol = 1e-12);
  static PureState normalized(const ComplexVector& v);  // scales v to unit norm

  int dim() const { return static_cast<int>(v_.rows()); }
  const ComplexVector& amplitudes() const { return v_; }
  DensityMatrix density() const { return DensityMatrix::trusted(v_ * v_.adjoint()); }

 private:
  explicit PureState(ComplexVector v) : v_(std::move(v)) {}
  ComplexVector v_;
};

enum class Ensemble {
  HilbertSchmidt,  // G G^dagger / tr(G G^dagger), G square complex Ginibre
  PureHaar,        // normalized complex Gaussian vector, projected
};

DensityMatrix random_density(int dim, Rng& rng, Ensemble ensemble);
DensityMatrix random_density(int dim, const RngSpec& spec, Ensemble ensemble);

PureState random_pure(int dim, Rng& rng);

// Haar-distributed unitary: QR of a Ginibre matrix with the R-diagonal phase fix.
ComplexMatrix random_unitary(int dim, Rng& rng);

}  // namespace complab
