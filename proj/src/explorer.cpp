#include "complab/explorer.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "complab/parallel.hpp"

namespace complab {

namespace {

SaturationParams draw_params(int dim, Rng& rng) {
  SaturationParams p;
  p.dim = dim;
  p.p1 = rng.uniform(1.0 / dim, 1.0);
  p.a_mod = rng.uniform(0.0, p.a_bound());
  p.phases.resize(static_cast<size_t>(dim) * (dim - 1) / 2);
  for (double& phase : p.phases) phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return p;
}

TrianglePoint draw_triangle_point(int dim, Rng& rng) {
  for (;;) {
    SaturationParams params = draw_params(dim, rng);
    try {
      const DensityMatrix rho = saturating_state(params);
      const MeasureTriple t = tcr_triple(rho);
      return {t.predictability, t.coherence, t.linear_entropy, std::move(params),
              boundary_gap(t)};
    } catch (const ValidationError& e) {
      // Non-factorizable phases can break positivity inside the modulus
      // bound; resample within the same stream.
      if (e.kind() != Violation::NotPsd) throw;
    }
  }
}

}  // namespace

std::vector<TrianglePoint> sample_region(int count, int dim, const RngSpec& base) {
  if (count < 1) throw DimensionMismatch("sample_region: count must be >= 1");
  if (dim < 2) throw DimensionMismatch("sample_region: dim must be >= 2");
  std::vector<TrianglePoint> out(static_cast<size_t>(count));
  parallel_for_index(count, [&](std::int64_t i) {
    Rng rng(base.seed, base.stream_id + static_cast<std::uint64_t>(i));
    out[static_cast<size_t>(i)] = draw_triangle_point(dim, rng);
  });
  return out;
}

SweepResult sweep(const ScenarioSpec& spec) {
  if (spec.grid.steps < 2) throw DimensionMismatch("sweep: grid needs at least two steps");
  const WWDInteraction w = build_interaction(spec.detector_states);
  const JointState joint = evolve(spec.system_state.density(), w);
  const DensityMatrix rho_s1 = reduced_states(joint).system;
  const double c_s1 = coherence_l1(rho_s1);

  SweepResult result{spec.name, std::vector<SweepPoint>(static_cast<size_t>(spec.grid.steps))};
  parallel_for_index(spec.grid.steps, [&](std::int64_t t) {
    const double theta = spec.grid.value(static_cast<int>(t));
    const POVMSet povm = interpolate_povm(spec.family, theta);
    const SubensembleDecomposition dec = decompose(joint, povm);
    const AveragedTriple avg = averages(dec);
    const AveragedTcrReport rep = averaged_tcr(avg, c_s1);
    SweepPoint& pt = result.points[static_cast<size_t>(t)];
    pt.theta = theta;
    pt.avg = avg;
    pt.tcr_lhs = rep.lhs_linear;
    pt.tcr_lhs_sqrt = rep.lhs_sqrt;
    pt.duality_lhs = *rep.duality_lhs;
    pt.const_p = check_constant_P(joint, povm).holds;
    pt.const_c = check_constant_C(joint, povm).holds;
    pt.dropped_mass = dec.dropped_mass;
  });
  return result;
}

namespace {

struct Worst {
  double margin = std::numeric_limits<double>::infinity();
  std::uint64_t stream = 0;

  void update(double m, std::uint64_t s) {
    if (m < margin) {
      margin = m;
      stream = s;
    }
  }
};

PropertyResult finish(std::string name, long long samples, const Worst& w, double tol) {
  return {std::move(name), samples, w.margin, tol, w.margin >= -tol, w.stream};
}

// Stream-id layout: one block per property group so reported worst_stream
// values can be replayed in isolation.
constexpr std::uint64_t kBlock = std::uint64_t{1} << 32;
constexpr std::uint64_t kDimStride = std::uint64_t{1} << 24;

double mutated_coherence(double c, int dim, Mutation m) {
  return m == Mutation::DropNormalization ? c * (dim - 1) : c;
}

}  // namespace

bool PropertyReport::all_pass() const {
  for (const PropertyResult& p : properties)
    if (!p.pass) return false;
  return true;
}

const PropertyResult* PropertyReport::find(const std::string& name) const {
  for (const PropertyResult& p : properties)
    if (p.name == name) return &p;
  return nullptr;
}

PropertyReport verify_properties(const VerifyConfig& config) {
  PropertyReport report;
  const std::uint64_t seed = config.seed;

  // Ternary and binary bounds plus the dispersion-pair cross-checks on
  // Hilbert-Schmidt random states, per dimension.
  {
    Worst duality, durr_id, durr_p, durr_c;
    long long total = 0;
    for (int dim : config.tcr_dims) {
      Worst bound, equality;
      for (int i = 0; i < config.tcr_samples; ++i) {
        const std::uint64_t stream = 0 * kBlock + dim * kDimStride + i;
        Rng rng(seed, stream);
        const DensityMatrix rho = random_density(dim, rng, Ensemble::HilbertSchmidt);
        const MeasureTriple t = tcr_triple(rho);
        const double c_used = mutated_coherence(t.coherence, dim, config.mutation);
        const double lhs = t.predictability * t.predictability + c_used * c_used +
                           t.linear_entropy;
        bound.update(1.0 - lhs, stream);
        if (dim == 2) equality.update(-std::abs(1.0 - lhs), stream);
        duality.update(1.0 - (t.predictability * t.predictability + c_used * c_used), stream);
        const DurrPair d = durr_measures(rho);
        durr_id.update(-std::abs(d.predictability * d.predictability +
                                 d.visibility * d.visibility + t.linear_entropy - 1.0),
                       stream);
        durr_p.update(d.predictability - t.predictability, stream);
        durr_c.update(d.visibility - t.coherence, stream);
        ++total;
      }
      report.properties.push_back(
          finish("tcr_bound_n" + std::to_string(dim), config.tcr_samples, bound, 1e-10));
      if (dim == 2)
        report.properties.push_back(
            finish("tcr_equality_n2", config.tcr_samples, equality, 1e-10));
    }
    report.properties.push_back(finish("duality_bound", total, duality, 1e-10));
    report.properties.push_back(finish("durr_identity", total, durr_id, 1e-10));
    report.properties.push_back(finish("durr_dominates_p", total, durr_p, 1e-10));
    report.properties.push_back(finish("durr_dominates_c", total, durr_c, 1e-10));
  }

  // Diagonal-concentration and off-diagonal Cauchy-Schwarz bounds, with
  // constructed equality cases.
  {
    Worst l1_bound, l2_bound, l1_eq, l2_eq;
    for (int i = 0; i < config.lemma_samples; ++i) {
      const std::uint64_t stream = 1 * kBlock + i;
      Rng rng(seed, stream);
      const int dim = 2 + static_cast<int>(rng.next_u64() % 5);
      const DensityMatrix rho = random_density(dim, rng, Ensemble::HilbertSchmidt);
      double diag_sq = 0.0, p1 = 0.0, off_sum = 0.0, off_sq = 0.0;
      for (int j = 0; j < dim; ++j) {
        const double d = rho(j, j).real();
        diag_sq += d * d;
        p1 = std::max(p1, d);
        for (int k = 0; k < dim; ++k)
          if (j != k) {
            off_sum += std::abs(rho(j, k));
            off_sq += std::norm(rho(j, k));
          }
      }
      l1_bound.update(diag_sq - (p1 * p1 + (1.0 - p1) * (1.0 - p1) / (dim - 1)), stream);
      l2_bound.update(dim * (dim - 1) * off_sq - off_sum * off_sum, stream);

      // Equality forms: uniform non-max diagonal for the first bound, uniform
      // off-diagonal moduli for the second.
      SaturationParams params;
      params.dim = dim;
      params.p1 = rng.uniform(1.0 / dim, 1.0);
      params.a_mod = rng.uniform(0.0, params.a_bound());
      params.phases.assign(static_cast<size_t>(dim) * (dim - 1) / 2, 0.0);
      const DensityMatrix flat = saturating_state(params);
      double f_diag_sq = 0.0, f_p1 = 0.0, f_off_sum = 0.0, f_off_sq = 0.0;
      for (int j = 0; j < dim; ++j) {
        const double d = flat(j, j).real();
        f_diag_sq += d * d;
        f_p1 = std::max(f_p1, d);
        for (int k = 0; k < dim; ++k)
          if (j != k) {
            f_off_sum += std::abs(flat(j, k));
            f_off_sq += std::norm(flat(j, k));
          }
      }
      l1_eq.update(-std::abs(f_diag_sq - (f_p1 * f_p1 + (1.0 - f_p1) * (1.0 - f_p1) / (dim - 1))),
                   stream);
      l2_eq.update(-std::abs(dim * (dim - 1) * f_off_sq - f_off_sum * f_off_sum), stream);
    }
    report.properties.push_back(
        finish("diag_concentration_bound", config.lemma_samples, l1_bound, 1e-10));
    report.properties.push_back(
        finish("diag_concentration_equality", config.lemma_samples, l1_eq, 1e-12));
    report.properties.push_back(
        finish("offdiag_cauchy_schwarz_bound", config.lemma_samples, l2_bound, 1e-10));
    report.properties.push_back(
        finish("offdiag_cauchy_schwarz_equality", config.lemma_samples, l2_eq, 1e-12));
  }

  // Concavity of S_L and sqrt(S_L), convexity of P and C under mixing.
  {
    Worst s_conc, sqrt_conc, p_conv, c_conv;
    for (int i = 0; i < config.mix_samples; ++i) {
      const std::uint64_t stream = 2 * kBlock + i;
      Rng rng(seed, stream);
      const int dim = 2 + static_cast<int>(rng.next_u64() % 5);
      const DensityMatrix a = random_density(dim, rng, Ensemble::HilbertSchmidt);
      const DensityMatrix b = random_density(dim, rng, Ensemble::HilbertSchmidt);
      const double alpha = rng.uniform();
      const DensityMatrix mix =
          DensityMatrix::trusted(alpha * a.matrix() + (1.0 - alpha) * b.matrix());
      const MeasureTriple ta = tcr_triple(a), tb = tcr_triple(b), tm = tcr_triple(mix);
      s_conc.update(tm.linear_entropy - (alpha * ta.linear_entropy +
                                         (1.0 - alpha) * tb.linear_entropy),
                    stream);
      sqrt_conc.update(std::sqrt(tm.linear_entropy) -
                           (alpha * std::sqrt(ta.linear_entropy) +
                            (1.0 - alpha) * std::sqrt(tb.linear_entropy)),
                       stream);
      p_conv.update(alpha * ta.predictability + (1.0 - alpha) * tb.predictability -
                        tm.predictability,
                    stream);
      c_conv.update(alpha * ta.coherence + (1.0 - alpha) * tb.coherence - tm.coherence,
                    stream);
    }
    report.properties.push_back(
        finish("concavity_linear_entropy", config.mix_samples, s_conc, 1e-10));
    report.properties.push_back(
        finish("concavity_sqrt_linear_entropy", config.mix_samples, sqrt_conc, 1e-10));
    report.properties.push_back(
        finish("convexity_predictability", config.mix_samples, p_conv, 1e-10));
    report.properties.push_back(
        finish("convexity_coherence", config.mix_samples, c_conv, 1e-10));
  }

  // The uniform-offdiagonal family sits exactly on the bound.
  for (int dim : config.saturation_dims) {
    Worst eq;
    const std::uint64_t base = 3 * kBlock + dim * kDimStride;
    const std::vector<TrianglePoint> pts =
        sample_region(config.saturation_samples, dim, {seed, base});
    for (size_t i = 0; i < pts.size(); ++i) {
      const TrianglePoint& p = pts[i];
      const double lhs = p.predictability * p.predictability + p.coherence * p.coherence +
                         p.linear_entropy;
      eq.update(-std::abs(lhs - 1.0), base + i);
    }
    report.properties.push_back(finish("saturation_equality_n" + std::to_string(dim),
                                       config.saturation_samples, eq, 1e-10));
  }

  // Subensemble averages over random (state, coupling, POVM) triples.
  {
    Worst lin, sqrt_mode, mono_s, mono_p, mono_c, duality14, recombine, joint_psd, joint_trace;
    for (int i = 0; i < config.wwd_samples; ++i) {
      const std::uint64_t stream = 4 * kBlock + i;
      Rng rng(seed, stream);
      const int n = 2 + static_cast<int>(rng.next_u64() % 4);
      const int d = 2 + static_cast<int>(rng.next_u64() % 4);
      const int m = 1 + static_cast<int>(rng.next_u64() % 5);
      const DensityMatrix rho_s = random_density(n, rng, Ensemble::HilbertSchmidt);
      WWDInteraction w = [&] {
        if (i % 2 == 0) {
          std::vector<PureState> targets;
          for (int k = 0; k < n; ++k) targets.push_back(random_pure(d, rng));
          return build_interaction(targets);
        }
        std::vector<ComplexMatrix> us;
        for (int k = 0; k < n; ++k) us.push_back(random_unitary(d, rng));
        return build_interaction(std::move(us),
                                 random_density(d, rng, Ensemble::HilbertSchmidt));
      }();
      const JointState joint = evolve(rho_s, w);
      joint_psd.update(min_eigenvalue_hermitian(joint.rho_sd.matrix()), stream);
      joint_trace.update(-std::abs(joint.rho_sd.matrix().trace().real() - 1.0), stream);
      const POVMSet povm = random_povm(d, m, rng);
      const SubensembleDecomposition dec = decompose(joint, povm);
      const DensityMatrix rho_s1 = reduced_states(joint).system;
      const MeasureTriple t1 = tcr_triple(rho_s1);
      const AveragedTriple avg = averages(dec);
      const AveragedTcrReport rep = averaged_tcr(avg, t1.coherence);
      lin.update(rep.margin_linear, stream);
      sqrt_mode.update(rep.margin_sqrt, stream);
      mono_s.update(t1.linear_entropy - avg.s_bar, stream);
      mono_p.update(avg.p_bar - t1.predictability, stream);
      mono_c.update(avg.c_bar - t1.coherence, stream);
      duality14.update(1.0 - *rep.duality_lhs, stream);
      ComplexMatrix sum = ComplexMatrix::Zero(n, n);
      for (const Subensemble& b : dec.branches) sum += b.probability * b.state.matrix();
      recombine.update(-(sum - rho_s1.matrix()).cwiseAbs().maxCoeff(), stream);
    }
    report.properties.push_back(finish("averaged_tcr_linear", config.wwd_samples, lin, 1e-10));
    report.properties.push_back(
        finish("averaged_tcr_sqrt", config.wwd_samples, sqrt_mode, 1e-10));
    report.properties.push_back(finish("monotone_entropy", config.wwd_samples, mono_s, 1e-10));
    report.properties.push_back(
        finish("monotone_predictability", config.wwd_samples, mono_p, 1e-10));
    report.properties.push_back(finish("monotone_coherence", config.wwd_samples, mono_c, 1e-10));
    report.properties.push_back(
        finish("duality_reduced_coherence", config.wwd_samples, duality14, 1e-10));
    report.properties.push_back(finish("recombination", config.wwd_samples, recombine, 1e-10));
    report.properties.push_back(finish("evolve_psd", config.wwd_samples, joint_psd, 1e-10));
    report.properties.push_back(
        finish("evolve_trace", config.wwd_samples, joint_trace, 1e-10));
  }

  // Two-qubit entanglement: equality on pure states, dominance on mixed.
  {
    Worst pure_eq, mixed_bound;
    for (int i = 0; i < config.two_qubit_samples; ++i) {
      const std::uint64_t stream = 5 * kBlock + i;
      Rng rng(seed, stream);
      const DensityMatrix rho = random_density(4, rng, Ensemble::PureHaar);
      const double c = concurrence_two_qubit(rho);
      const DensityMatrix red = DensityMatrix::trusted(
          hermitized(partial_trace_detector(rho.matrix(), 2, 2)));
      pure_eq.update(-std::abs(linear_entropy(red) - c * c), stream);
    }
    for (int i = 0; i < config.two_qubit_samples; ++i) {
      const std::uint64_t stream = 6 * kBlock + i;
      Rng rng(seed, stream);
      const DensityMatrix rho = random_density(4, rng, Ensemble::HilbertSchmidt);
      const double c = concurrence_two_qubit(rho);
      const DensityMatrix red = DensityMatrix::trusted(
          hermitized(partial_trace_detector(rho.matrix(), 2, 2)));
      mixed_bound.update(linear_entropy(red) - c * c, stream);
    }
    report.properties.push_back(
        finish("two_qubit_pure_equality", config.two_qubit_samples, pure_eq, 1e-10));
    report.properties.push_back(
        finish("two_qubit_mixed_bound", config.two_qubit_samples, mixed_bound, 1e-10));
  }

  // Low-entropy boundary of the sampled region (dim 3), and its attainment
  // at a_mod = p2.
  {
    Worst gap_all, gap_low;
    const std::uint64_t base = 7 * kBlock;
    const std::vector<TrianglePoint> pts = sample_region(config.boundary_samples, 3, {seed, base});
    for (size_t i = 0; i < pts.size(); ++i) {
      gap_all.update(pts[i].boundary_gap, base + i);
      if (pts[i].linear_entropy < 0.5) gap_low.update(pts[i].boundary_gap, base + i);
    }
    Worst attained;
    const int grid = 101;
    for (int g = 0; g < grid; ++g) {
      SaturationParams params;
      params.dim = 3;
      params.p1 = 1.0 / 3.0 + (2.0 / 3.0) * g / (grid - 1);
      params.a_mod = params.p2();
      params.phases.assign(3, 0.0);
      attained.update(-std::abs(boundary_gap(saturating_state(params))),
                      static_cast<std::uint64_t>(g));
    }
    report.properties.push_back(
        finish("boundary_gap_n3", config.boundary_samples, gap_all, 1e-10));
    report.properties.push_back(
        finish("boundary_gap_low_entropy", config.boundary_samples, gap_low, 1e-10));
    report.properties.push_back(finish("boundary_attained", grid, attained, 1e-10));
  }

  return report;
}

}  // namespace complab
