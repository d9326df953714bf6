#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "complab/povm_design.hpp"

using namespace complab;

namespace {

constexpr double kPi = std::numbers::pi;

JointState worked_joint() {
  ComplexVector s(3), d1(3), d2(3), d3(3);
  s << 1.0, 3.0, 2.0;
  d1 << 1.0, 1.0, 0.0;
  d2 << 0.0, 1.0, 1.0;
  d3 << 1.0, 0.0, 1.0;
  const std::vector<PureState> targets = {PureState::normalized(d1),
                                          PureState::normalized(d2),
                                          PureState::normalized(d3)};
  return evolve(PureState::normalized(s).density(), build_interaction(targets));
}

}  // namespace

TEST_CASE("povm interpolation endpoints and validity") {
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  ComplexMatrix h = ComplexMatrix::Constant(2, 2, 0.5);  // |+><+|
  const POVMSet a = POVMSet::validated({p0, p1});
  const POVMSet b = POVMSet::validated({h, ComplexMatrix::Identity(2, 2) - h});
  const PovmFamily family{a, b};

  const POVMSet at0 = interpolate_povm(family, 0.0);
  CHECK((at0.effect(0) - p0).cwiseAbs().maxCoeff() < 1e-15);
  const POVMSet at90 = interpolate_povm(family, kPi / 2);
  CHECK((at90.effect(0) - h).cwiseAbs().maxCoeff() < 1e-15);
  const POVMSet mid = interpolate_povm(family, kPi / 4);
  CHECK((mid.effect(0) - 0.5 * (p0 + h)).cwiseAbs().maxCoeff() < 1e-15);

  ComplexMatrix sum = mid.effect(0) + mid.effect(1);
  CHECK((sum - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("incompatible interpolation endpoints are rejected") {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix id3 = ComplexMatrix::Identity(3, 3);
  const POVMSet one2 = POVMSet::validated({id2});
  const POVMSet one3 = POVMSet::validated({id3});
  const POVMSet two2 = POVMSet::validated({0.5 * id2, 0.5 * id2});
  CHECK_THROWS_AS((void)interpolate_povm({one2, two2}, 0.3), IncompatibleEndpoints);
  CHECK_THROWS_AS((void)interpolate_povm({one2, one3}, 0.3), IncompatibleEndpoints);
}

TEST_CASE("theta grid endpoints") {
  const ThetaGrid grid{0.25, 1.25, 5};
  CHECK(grid.value(0) == 0.25);
  CHECK(grid.value(4) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(grid.value(2) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("built-in scenarios") {
  const std::vector<std::string> names = scenario_names();
  REQUIRE(names.size() == 6);
  CHECK(names[0] == "fig2a");
  CHECK(names[1] == "fig2b");
  CHECK(names[2] == "fig2c");
  CHECK(names[3] == "figS1a");
  CHECK(names[4] == "figS1b");
  CHECK(names[5] == "figS1c");
  CHECK_THROWS_AS((void)scenario("fig9z"), UnknownScenario);

  for (const std::string& name : names) {
    const ScenarioSpec spec = scenario(name);
    CHECK(spec.name == name);
    CHECK(spec.system_state.dim() == 3);
    REQUIRE(spec.detector_states.size() == 3);
    CHECK(spec.grid.start == 0.0);
    CHECK(spec.grid.stop == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(spec.grid.steps == 181);
    CHECK(spec.family.endpoint_a.detector_dim() == 3);
    CHECK(spec.family.endpoint_b.detector_dim() == 3);
    // every scenario shares the worked preparation
    CHECK(std::abs(spec.system_state.amplitudes()(1)) ==
          doctest::Approx(3.0 / std::sqrt(14.0)).epsilon(1e-14));
    for (int j = 0; j < 3; ++j)
      for (int k = j + 1; k < 3; ++k) {
        const Complex overlap = spec.detector_states[static_cast<size_t>(j)]
                                    .amplitudes()
                                    .dot(spec.detector_states[static_cast<size_t>(k)]
                                             .amplitudes());
        CHECK(std::abs(overlap) == doctest::Approx(0.5).epsilon(1e-14));
      }
  }
}

TEST_CASE("certificate soundness: a holding certificate predicts the average") {
  const JointState joint = worked_joint();
  const DensityMatrix rho_s1 = reduced_states(joint).system;
  const double p_s1 = predictability(rho_s1);
  const double c_s1 = coherence_l1(rho_s1);
  CHECK(p_s1 == doctest::Approx(13.0 / 28).epsilon(1e-13));
  CHECK(c_s1 == doctest::Approx(11.0 / 28).epsilon(1e-13));

  for (const std::string& name : scenario_names()) {
    const ScenarioSpec spec = scenario(name);
    for (double theta : {0.0, kPi / 8, kPi / 4, 3 * kPi / 8, kPi / 2}) {
      const POVMSet povm = interpolate_povm(spec.family, theta);
      const ConstancyCertificate cp = check_constant_P(joint, povm);
      const ConstancyCertificate cc = check_constant_C(joint, povm);
      CHECK(cp.predicted_average == doctest::Approx(p_s1).epsilon(1e-12));
      CHECK(cc.predicted_average == doctest::Approx(c_s1).epsilon(1e-12));

      const AveragedTriple avg = averages(decompose(joint, povm));
      if (cp.holds) {
        CHECK(avg.p_bar == doctest::Approx(p_s1).epsilon(1e-11));
        CHECK(cp.common_index >= 0);
      } else {
        CHECK(avg.p_bar > p_s1 + 1e-13);
        CHECK(cp.failing_branch >= 0);
      }
      if (cc.holds) {
        CHECK(avg.c_bar == doctest::Approx(c_s1).epsilon(1e-11));
      } else {
        CHECK(avg.c_bar > c_s1 + 1e-13);
        CHECK(cc.failing_branch >= 0);
        CHECK(cc.failing_row >= 0);
        CHECK(cc.failing_col > cc.failing_row);
      }
    }
  }
}

TEST_CASE("which certificate each family carries") {
  const JointState joint = worked_joint();

  SUBCASE("fig2b: coherence is pinned across the whole sweep") {
    const ScenarioSpec spec = scenario("fig2b");
    for (int t = 0; t < 13; ++t) {
      const double theta = kPi / 2 * t / 12.0;
      const POVMSet povm = interpolate_povm(spec.family, theta);
      CHECK(check_constant_C(joint, povm).holds);
    }
    // and the predictability certificate fails somewhere
    bool p_fails_somewhere = false;
    for (int t = 0; t < 13; ++t) {
      const POVMSet povm = interpolate_povm(spec.family, kPi / 2 * t / 12.0);
      if (!check_constant_P(joint, povm).holds) p_fails_somewhere = true;
    }
    CHECK(p_fails_somewhere);
  }

  SUBCASE("fig2c: predictability is pinned, with the expected pointer index") {
    const ScenarioSpec spec = scenario("fig2c");
    for (int t = 0; t < 13; ++t) {
      const double theta = kPi / 2 * t / 12.0;
      const ConstancyCertificate cp =
          check_constant_P(joint, interpolate_povm(spec.family, theta));
      CHECK(cp.holds);
      CHECK(cp.common_index == 1);  // the dominant path of (1,3,2)
    }
    bool c_fails_somewhere = false;
    for (int t = 0; t < 13; ++t) {
      const POVMSet povm = interpolate_povm(spec.family, kPi / 2 * t / 12.0);
      if (!check_constant_C(joint, povm).holds) c_fails_somewhere = true;
    }
    CHECK(c_fails_somewhere);
  }

  SUBCASE("fig2c at theta=0 degenerates to {I, 0}: both certificates hold") {
    const ScenarioSpec spec = scenario("fig2c");
    const POVMSet povm = interpolate_povm(spec.family, 0.0);
    CHECK(check_constant_P(joint, povm).holds);
    CHECK(check_constant_C(joint, povm).holds);
  }

  SUBCASE("figS1a at theta=0 is the detector-basis readout: P moves to 19/28") {
    const ScenarioSpec spec = scenario("figS1a");
    const POVMSet povm = interpolate_povm(spec.family, 0.0);
    CHECK(!check_constant_P(joint, povm).holds);
    CHECK(check_constant_C(joint, povm).holds);
    const AveragedTriple avg = averages(decompose(joint, povm));
    CHECK(avg.p_bar == doctest::Approx(19.0 / 28).epsilon(1e-13));
    CHECK(avg.c_bar == doctest::Approx(11.0 / 28).epsilon(1e-13));
  }
}

TEST_CASE("a phase-sensitive readout breaks the coherence certificate") {
  const JointState joint = worked_joint();
  ComplexVector v(3);
  v << Complex(1, 0), Complex(0, 1), Complex(0, 0);  // (e0 + i e1)/sqrt(2)
  const ComplexMatrix proj = PureState::normalized(v).density().matrix();
  const POVMSet povm =
      POVMSet::validated({proj, ComplexMatrix::Identity(3, 3) - proj});
  const ConstancyCertificate cc = check_constant_C(joint, povm);
  CHECK(!cc.holds);
  const AveragedTriple avg = averages(decompose(joint, povm));
  CHECK(avg.c_bar > 11.0 / 28 + 1e-9);
}

TEST_CASE("tie tolerance admits branches with degenerate maxima") {
  // Joint state whose branches keep two equal diagonal entries: a qubit pair
  // of paths with symmetric populations and an uninformative detector.
  ComplexVector s(2), d(2);
  s << 1.0, 1.0;
  d << 1.0, 0.0;
  const std::vector<PureState> targets = {PureState::normalized(d),
                                          PureState::normalized(d)};
  const JointState joint = evolve(PureState::normalized(s).density(),
                                  build_interaction(targets));
  Rng rng(21, 0);
  const POVMSet povm = random_povm(2, 3, rng);
  const ConstancyCertificate cp = check_constant_P(joint, povm);
  // identical detector states carry no which-way information: every branch
  // equals rho_s1, whose diagonal is (1/2, 1/2); ties resolve to index 0
  CHECK(cp.holds);
  CHECK(cp.common_index == 0);
  CHECK(cp.predicted_average == doctest::Approx(0.0).epsilon(1e-12));
}
