#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "complab/explorer.hpp"

using namespace complab;

namespace {

VerifyConfig tiny_config() {
  VerifyConfig config;
  config.tcr_samples = 300;
  config.lemma_samples = 300;
  config.mix_samples = 300;
  config.saturation_samples = 100;
  config.wwd_samples = 50;
  config.two_qubit_samples = 200;
  config.boundary_samples = 500;
  return config;
}

}  // namespace

TEST_CASE("sampled family points sit on the bound surface") {
  for (int dim : {2, 3, 4}) {
    const std::vector<TrianglePoint> pts =
        sample_region(1500, dim, {4242, static_cast<std::uint64_t>(dim) << 40});
    REQUIRE(pts.size() == 1500);
    for (const TrianglePoint& pt : pts) {
      const double lhs = pt.predictability * pt.predictability +
                         pt.coherence * pt.coherence + pt.linear_entropy;
      CHECK(std::abs(lhs - 1.0) <= 1e-10);
      CHECK(pt.params.dim == dim);
      CHECK(pt.params.p1 >= 1.0 / dim);
      CHECK(pt.params.p1 <= 1.0);
      CHECK(pt.params.a_mod <= pt.params.a_bound() + 1e-15);
      if (dim == 3) CHECK(pt.boundary_gap >= -1e-10);
    }
  }
}

TEST_CASE("sampling is deterministic and independent of the worker count") {
  const RngSpec spec{777, 123};
  setenv("COMPLAB_THREADS", "1", 1);
  const std::vector<TrianglePoint> serial = sample_region(400, 3, spec);
  setenv("COMPLAB_THREADS", "5", 1);
  const std::vector<TrianglePoint> threaded = sample_region(400, 3, spec);
  unsetenv("COMPLAB_THREADS");
  REQUIRE(serial.size() == threaded.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].predictability == threaded[i].predictability);
    CHECK(serial[i].coherence == threaded[i].coherence);
    CHECK(serial[i].linear_entropy == threaded[i].linear_entropy);
    CHECK(serial[i].params.p1 == threaded[i].params.p1);
    CHECK(serial[i].params.a_mod == threaded[i].params.a_mod);
  }
  CHECK_THROWS_AS((void)sample_region(0, 3, spec), DimensionMismatch);
  CHECK_THROWS_AS((void)sample_region(10, 1, spec), DimensionMismatch);
}

TEST_CASE("sweep of the worked scenarios") {
  SUBCASE("grid plumbing and per-row bounds") {
    ScenarioSpec spec = scenario("fig2a");
    spec.grid.steps = 13;
    const SweepResult result = sweep(spec);
    CHECK(result.scenario == "fig2a");
    REQUIRE(result.points.size() == 13);
    CHECK(result.points.front().theta == 0.0);
    CHECK(result.points.back().theta ==
          doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    for (const SweepPoint& pt : result.points) {
      CHECK(pt.tcr_lhs <= 1.0 + 1e-10);
      CHECK(pt.tcr_lhs_sqrt <= 1.0 + 1e-10);
      CHECK(pt.duality_lhs <= 1.0 + 1e-10);
      CHECK(pt.dropped_mass < 1e-9);
      // averaging a readout can only sharpen both knowledge terms
      CHECK(pt.avg.p_bar >= 13.0 / 28 - 1e-12);
      CHECK(pt.avg.c_bar >= 11.0 / 28 - 1e-12);
      CHECK(pt.avg.s_bar <= 9.0 / 16 + 1e-12);
      CHECK(pt.avg.s_bar_sqrt * pt.avg.s_bar_sqrt <= pt.avg.s_bar + 1e-12);
    }
  }

  SUBCASE("full-strength projective row of fig2a") {
    ScenarioSpec spec = scenario("fig2a");
    spec.grid.steps = 13;
    const SweepResult result = sweep(spec);
    const SweepPoint& row0 = result.points.front();
    CHECK(row0.avg.p_bar == doctest::Approx(73.0 / 112).epsilon(1e-13));
    CHECK(row0.avg.c_bar == doctest::Approx(11.0 / 28).epsilon(1e-13));
    CHECK(row0.avg.s_bar == doctest::Approx(9.0 / 70).epsilon(1e-13));
    CHECK(row0.const_p == false);
    CHECK(row0.const_c == true);
  }

  SUBCASE("certificate columns of the pinned families") {
    ScenarioSpec b = scenario("fig2b");
    b.grid.steps = 13;
    for (const SweepPoint& pt : sweep(b).points) CHECK(pt.const_c);

    ScenarioSpec c = scenario("fig2c");
    c.grid.steps = 13;
    for (const SweepPoint& pt : sweep(c).points) {
      CHECK(pt.const_p);
      CHECK(pt.avg.p_bar == doctest::Approx(13.0 / 28).epsilon(1e-11));
    }
  }

  SUBCASE("custom grids are honored") {
    ScenarioSpec spec = scenario("figS1c");
    spec.grid = {0.1, 0.9, 5};
    const SweepResult result = sweep(spec);
    REQUIRE(result.points.size() == 5);
    CHECK(result.points[0].theta == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(result.points[2].theta == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(result.points[4].theta == doctest::Approx(0.9).epsilon(1e-15));
  }
}

TEST_CASE("property verifier") {
  const PropertyReport report = verify_properties(tiny_config());

  SUBCASE("everything passes at library tolerances") {
    for (const PropertyResult& p : report.properties) {
      INFO(p.name, " margin=", p.worst_margin);
      CHECK(p.pass);
      CHECK(p.worst_margin >= -p.tolerance);
    }
    CHECK(report.all_pass());
  }

  SUBCASE("the expected property lines are present") {
    for (const char* name :
         {"tcr_bound_n2", "tcr_bound_n6", "tcr_equality_n2", "duality_bound",
          "durr_identity", "durr_dominates_p", "durr_dominates_c",
          "diag_concentration_bound", "diag_concentration_equality",
          "offdiag_cauchy_schwarz_bound", "offdiag_cauchy_schwarz_equality",
          "concavity_linear_entropy", "concavity_sqrt_linear_entropy",
          "convexity_predictability", "convexity_coherence", "saturation_equality_n2",
          "saturation_equality_n5", "averaged_tcr_linear", "averaged_tcr_sqrt",
          "monotone_entropy", "monotone_predictability", "monotone_coherence",
          "duality_reduced_coherence", "recombination", "evolve_psd", "evolve_trace",
          "two_qubit_pure_equality", "two_qubit_mixed_bound", "boundary_gap_n3",
          "boundary_gap_low_entropy", "boundary_attained"}) {
      INFO(name);
      CHECK(report.find(name) != nullptr);
    }
    CHECK(report.find("no_such_property") == nullptr);
  }

  SUBCASE("sample counts are reported") {
    const PropertyResult* tcr = report.find("tcr_bound_n3");
    REQUIRE(tcr != nullptr);
    CHECK(tcr->samples == 300);
    const PropertyResult* boundary = report.find("boundary_gap_n3");
    REQUIRE(boundary != nullptr);
    CHECK(boundary->samples == 500);
  }

  SUBCASE("equality properties really sit at equality") {
    const PropertyResult* eq = report.find("tcr_equality_n2");
    REQUIRE(eq != nullptr);
    CHECK(eq->worst_margin >= -1e-10);
    CHECK(eq->worst_margin <= 0.0);  // margin is -|deviation|
  }
}

TEST_CASE("the mutation hook breaks the duality bound") {
  VerifyConfig config = tiny_config();
  config.mutation = Mutation::DropNormalization;
  const PropertyReport report = verify_properties(config);
  CHECK(!report.all_pass());
  const PropertyResult* duality = report.find("duality_bound");
  REQUIRE(duality != nullptr);
  CHECK(!duality->pass);
  CHECK(duality->worst_margin < -1e-3);  // gross violation, not a tolerance nick
  // untouched block: the averages pipeline ignores the mutation
  const PropertyResult* avg = report.find("averaged_tcr_linear");
  REQUIRE(avg != nullptr);
  CHECK(avg->pass);
}

TEST_CASE("verification is reproducible for a fixed seed") {
  VerifyConfig config = tiny_config();
  config.tcr_samples = 100;
  config.boundary_samples = 200;
  const PropertyReport a = verify_properties(config);
  const PropertyReport b = verify_properties(config);
  REQUIRE(a.properties.size() == b.properties.size());
  for (size_t i = 0; i < a.properties.size(); ++i) {
    CHECK(a.properties[i].name == b.properties[i].name);
    CHECK(a.properties[i].worst_margin == b.properties[i].worst_margin);
    CHECK(a.properties[i].worst_stream == b.properties[i].worst_stream);
  }
}
