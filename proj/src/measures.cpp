#include "complab/measures.hpp"

#include <cmath>
#include <stdexcept>

namespace complab {

namespace {

constexpr double kClampSlack = 1e-12;

// Measures live in [0, 1]; excursions beyond roundoff indicate a bug.
double clamp_unit(double x, const char* what) {
  if (x < -kClampSlack || x > 1.0 + kClampSlack)
    throw std::logic_error(std::string("internal: ") + what + " outside [0,1] beyond tolerance");
  if (x < 0.0) return 0.0;
  if (x > 1.0) return 1.0;
  return x;
}

}  // namespace

int most_probable_index(const DensityMatrix& rho) {
  const int n = rho.dim();
  int best = 0;
  double best_val = rho(0, 0).real();
  for (int k = 1; k < n; ++k) {
    const double v = rho(k, k).real();
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  return best;
}

double predictability(const DensityMatrix& rho) {
  const int n = rho.dim();
  if (n < 2) throw DimensionMismatch("predictability: dim must be >= 2");
  const int k = most_probable_index(rho);
  const double p1 = rho(k, k).real();
  return clamp_unit((n * p1 - 1.0) / (n - 1.0), "predictability");
}

double coherence_l1(const DensityMatrix& rho) {
  const int n = rho.dim();
  if (n < 2) throw DimensionMismatch("coherence: dim must be >= 2");
  double sum = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (j != k) sum += std::abs(rho(j, k));
  return clamp_unit(sum / (n - 1.0), "coherence");
}

double linear_entropy(const DensityMatrix& rho) {
  const int n = rho.dim();
  if (n < 2) throw DimensionMismatch("linear entropy: dim must be >= 2");
  const double purity = rho.matrix().squaredNorm();  // tr(rho^2) for Hermitian rho
  return clamp_unit(n * (1.0 - purity) / (n - 1.0), "linear entropy");
}

MeasureTriple tcr_triple(const DensityMatrix& rho) {
  return {predictability(rho), coherence_l1(rho), linear_entropy(rho)};
}

DurrPair durr_measures(const DensityMatrix& rho) {
  const int n = rho.dim();
  if (n < 2) throw DimensionMismatch("durr measures: dim must be >= 2");
  double diag_sq = 0.0;
  double off_sq = 0.0;
  for (int j = 0; j < n; ++j) {
    const double centered = rho(j, j).real() - 1.0 / n;
    diag_sq += centered * centered;
    for (int k = 0; k < n; ++k)
      if (j != k) off_sq += std::norm(rho(j, k));
  }
  const double scale = static_cast<double>(n) / (n - 1.0);
  return {std::sqrt(clamp_unit(scale * diag_sq, "durr predictability")),
          std::sqrt(clamp_unit(scale * off_sq, "durr visibility"))};
}

double SaturationParams::a_bound() const {
  return dim == 2 ? std::sqrt(p1 * p2()) : p2();
}

DensityMatrix saturating_state(const SaturationParams& params) {
  const int n = params.dim;
  if (n < 2) throw DimensionMismatch("saturating_state: dim must be >= 2");
  if (params.p1_position < 0 || params.p1_position >= n)
    throw ValidationError({Violation::OutOfRange, static_cast<double>(params.p1_position)});
  if (!(params.p1 >= 1.0 / n - kClampSlack) || !(params.p1 <= 1.0 + kClampSlack))
    throw ValidationError({Violation::OutOfRange, params.p1});
  const size_t n_phases = static_cast<size_t>(n) * (n - 1) / 2;
  if (params.phases.size() != n_phases)
    throw DimensionMismatch("saturating_state: need dim*(dim-1)/2 phases");
  if (!(params.a_mod >= 0.0) || !(params.a_mod <= params.a_bound() + kClampSlack))
    throw ValidationError({Violation::PositivityBound, params.a_mod - params.a_bound()});

  const double p2 = params.p2();
  ComplexMatrix m = ComplexMatrix::Constant(n, n, Complex(0.0, 0.0));
  for (int k = 0; k < n; ++k) m(k, k) = (k == params.p1_position) ? params.p1 : p2;
  size_t idx = 0;
  for (int i = 1; i < n; ++i) {
    for (int k = 0; k < i; ++k) {
      const Complex z = params.a_mod * std::polar(1.0, params.phases[idx++]);
      m(i, k) = z;
      m(k, i) = std::conj(z);
    }
  }
  // The modulus bound is necessary but not sufficient for n > 2 when the
  // phases do not factorize, so positivity is re-checked here.
  return DensityMatrix::validated(std::move(m));
}

double concurrence_two_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DimensionMismatch("concurrence: need a 4x4 two-qubit state");
  ComplexMatrix flip = ComplexMatrix::Zero(4, 4);  // sy (x) sy
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const ComplexMatrix root = sqrt_hermitian_psd(rho.matrix());
  const ComplexMatrix a = root * flip * root.conjugate();
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const RealVector lam = svd.singularValues();  // descending
  const double c = lam(0) - lam(1) - lam(2) - lam(3);
  return c > 0.0 ? c : 0.0;
}

double boundary_gap(const MeasureTriple& t) {
  const double d = t.predictability * t.predictability - t.coherence * t.coherence;
  return 2.0 * t.linear_entropy - (1.0 - d * d);
}

double boundary_gap(const DensityMatrix& rho) { return boundary_gap(tcr_triple(rho)); }

}  // namespace complab
