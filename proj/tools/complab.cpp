// complab: measure complementarity quantifiers, sweep POVM families over a
// theta grid, sample the saturating family, and verify the library's
// numerical properties.
//
// Exit codes: 0 success, 2 usage error, 3 validation/input error,
// 4 property verification failure.
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "complab/explorer.hpp"
#include "complab/io.hpp"

namespace {

using namespace complab;

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitPropertyFailure = 4;

template <typename WriteFn>
void with_output(const std::string& path, WriteFn&& write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write(out);
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

void run_measure(const std::string& input, const std::string& output,
                 const std::string& format) {
  const DensityMatrix rho = state_from_json(load_json_file(input));
  const MeasureTriple t = tcr_triple(rho);
  const DurrPair d = durr_measures(rho);
  const double p_sq = t.predictability * t.predictability;
  const double c_sq = t.coherence * t.coherence;
  with_output(output, [&](std::ostream& os) {
    if (format == "csv") {
      os << "p,c,s_l,p_sq,c_sq,tcr_lhs,durr_p,durr_v\n"
         << format_double(t.predictability) << ',' << format_double(t.coherence) << ','
         << format_double(t.linear_entropy) << ',' << format_double(p_sq) << ','
         << format_double(c_sq) << ',' << format_double(t.tcr_lhs()) << ','
         << format_double(d.predictability) << ',' << format_double(d.visibility) << '\n';
    } else if (format == "json") {
      const nlohmann::json j{{"dim", rho.dim()},
                             {"p", t.predictability},
                             {"c", t.coherence},
                             {"s_l", t.linear_entropy},
                             {"p_sq", p_sq},
                             {"c_sq", c_sq},
                             {"tcr_lhs", t.tcr_lhs()},
                             {"durr_p", d.predictability},
                             {"durr_v", d.visibility}};
      os << j.dump(2) << '\n';
    } else {
      os << "dim      " << rho.dim() << '\n'
         << "p        " << format_double(t.predictability) << '\n'
         << "c        " << format_double(t.coherence) << '\n'
         << "s_l      " << format_double(t.linear_entropy) << '\n'
         << "p_sq     " << format_double(p_sq) << '\n'
         << "c_sq     " << format_double(c_sq) << '\n'
         << "tcr_lhs  " << format_double(t.tcr_lhs()) << '\n'
         << "durr_p   " << format_double(d.predictability) << '\n'
         << "durr_v   " << format_double(d.visibility) << '\n';
    }
  });
}

void run_sweep(const ScenarioSpec& spec, const std::string& output,
               const std::string& format) {
  const SweepResult result = sweep(spec);
  with_output(output, [&](std::ostream& os) {
    if (format == "json") {
      nlohmann::json rows = nlohmann::json::array();
      for (const SweepPoint& pt : result.points)
        rows.push_back({{"theta", pt.theta},
                        {"p_bar", pt.avg.p_bar},
                        {"c_bar", pt.avg.c_bar},
                        {"s_bar", pt.avg.s_bar},
                        {"s_bar_sqrt", pt.avg.s_bar_sqrt},
                        {"p_bar_sq", pt.avg.p_bar * pt.avg.p_bar},
                        {"c_bar_sq", pt.avg.c_bar * pt.avg.c_bar},
                        {"tcr_lhs", pt.tcr_lhs},
                        {"const_P", pt.const_p},
                        {"const_C", pt.const_c}});
      os << rows.dump(2) << '\n';
    } else {
      os << "theta,p_bar,c_bar,s_bar,s_bar_sqrt,p_bar_sq,c_bar_sq,tcr_lhs,const_P,const_C\n";
      for (const SweepPoint& pt : result.points)
        os << format_double(pt.theta) << ',' << format_double(pt.avg.p_bar) << ','
           << format_double(pt.avg.c_bar) << ',' << format_double(pt.avg.s_bar) << ','
           << format_double(pt.avg.s_bar_sqrt) << ','
           << format_double(pt.avg.p_bar * pt.avg.p_bar) << ','
           << format_double(pt.avg.c_bar * pt.avg.c_bar) << ','
           << format_double(pt.tcr_lhs) << ',' << (pt.const_p ? 1 : 0) << ','
           << (pt.const_c ? 1 : 0) << '\n';
    }
  });
}

void run_sample(int dim, int count, std::uint64_t seed, const std::string& output,
                const std::string& format) {
  const std::vector<TrianglePoint> pts = sample_region(count, dim, {seed, 0});
  with_output(output, [&](std::ostream& os) {
    if (format == "json") {
      nlohmann::json rows = nlohmann::json::array();
      for (const TrianglePoint& pt : pts)
        rows.push_back({{"p", pt.predictability},
                        {"c", pt.coherence},
                        {"s_l", pt.linear_entropy},
                        {"p1", pt.params.p1},
                        {"a_mod", pt.params.a_mod},
                        {"boundary_gap", pt.boundary_gap}});
      os << rows.dump(2) << '\n';
    } else {
      os << "p,c,s_l,p1,a_mod,boundary_gap\n";
      for (const TrianglePoint& pt : pts)
        os << format_double(pt.predictability) << ',' << format_double(pt.coherence) << ','
           << format_double(pt.linear_entropy) << ',' << format_double(pt.params.p1) << ','
           << format_double(pt.params.a_mod) << ',' << format_double(pt.boundary_gap)
           << '\n';
    }
  });
}

int run_verify(const VerifyConfig& config, const std::string& output) {
  const PropertyReport report = verify_properties(config);
  int failed = 0;
  with_output(output, [&](std::ostream& os) {
    os << "# seed=" << config.seed << " mutation="
       << (config.mutation == Mutation::DropNormalization ? "drop-normalization" : "none")
       << '\n';
    for (const PropertyResult& p : report.properties) {
      if (!p.pass) ++failed;
      os << (p.pass ? "PASS " : "FAIL ") << p.name;
      for (size_t pad = p.name.size(); pad < 36; ++pad) os << ' ';
      os << " samples=" << p.samples << " worst_margin=" << format_double(p.worst_margin)
         << " tol=" << format_double(p.tolerance) << " stream=" << p.worst_stream << '\n';
    }
    os << (failed == 0 ? "all properties passed"
                       : std::to_string(failed) + " properties FAILED")
       << " (" << report.properties.size() << " total)\n";
  });
  return failed == 0 ? 0 : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"complementarity measures, POVM sweeps, and property verification"};
  app.require_subcommand(1);

  std::string input, output;

  CLI::App* measure = app.add_subcommand("measure", "quantifiers of a state file");
  std::string measure_format = "text";
  measure->add_option("--input", input, "state JSON file")->required();
  measure->add_option("--output", output, "output file (default stdout)");
  measure->add_option("--format", measure_format, "text, csv, or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  CLI::App* sw = app.add_subcommand("sweep", "theta sweep of a POVM family");
  std::string sweep_scenario, sweep_format = "csv";
  double theta_start = 0.0, theta_stop = 1.5707963267948966;
  int steps = 181;
  CLI::Option* opt_scn = sw->add_option("--scenario", sweep_scenario, "built-in scenario name");
  CLI::Option* opt_in = sw->add_option("--input", input, "scenario JSON file");
  opt_scn->excludes(opt_in);
  sw->add_option("--theta-start", theta_start, "grid start (default 0)");
  sw->add_option("--theta-stop", theta_stop, "grid stop (default pi/2)");
  sw->add_option("--steps", steps, "grid points (default 181)")
      ->check(CLI::Range(2, 1000000));
  sw->add_option("--output", output, "output file (default stdout)");
  sw->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* sample = app.add_subcommand("sample", "sample the saturating family");
  std::string sample_format = "csv";
  int dim = 3, count = 1000;
  std::uint64_t seed = 20250815;
  sample->add_option("--n", dim, "dimension")->required()->check(CLI::Range(2, 1024));
  sample->add_option("--count", count, "number of samples")
      ->required()
      ->check(CLI::Range(1, 100000000));
  sample->add_option("--seed", seed, "rng seed");
  sample->add_option("--output", output, "output file (default stdout)");
  sample->add_option("--format", sample_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* verify = app.add_subcommand("verify", "run the property suites");
  VerifyConfig config;
  std::string mutate;
  bool quick = false;
  verify->add_option("--seed", config.seed, "rng seed");
  verify->add_option("--tcr-samples", config.tcr_samples, "per dimension")
      ->check(CLI::Range(1, 100000000));
  verify->add_option("--lemma-samples", config.lemma_samples, "")
      ->check(CLI::Range(1, 100000000));
  verify->add_option("--mix-samples", config.mix_samples, "")
      ->check(CLI::Range(1, 100000000));
  verify->add_option("--saturation-samples", config.saturation_samples, "per dimension")
      ->check(CLI::Range(1, 100000000));
  verify->add_option("--wwd-samples", config.wwd_samples, "")
      ->check(CLI::Range(1, 100000000));
  verify->add_option("--two-qubit-samples", config.two_qubit_samples, "per ensemble")
      ->check(CLI::Range(1, 100000000));
  verify->add_option("--boundary-samples", config.boundary_samples, "")
      ->check(CLI::Range(1, 100000000));
  verify->add_flag("--quick", quick, "small sample counts (smoke test)");
  verify->add_option("--mutate", mutate, "test hook; weakens a bound on purpose")
      ->check(CLI::IsMember({"drop-normalization"}));
  verify->add_option("--output", output, "report file (default stdout)");

  CLI::App* scn = app.add_subcommand("scenario", "scenario utilities");
  std::string action;
  scn->add_option("action", action, "list")->required()->check(CLI::IsMember({"list"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (measure->parsed()) {
      run_measure(input, output, measure_format);
      return 0;
    }
    if (sw->parsed()) {
      if (sweep_scenario.empty() && input.empty()) {
        std::cerr << "sweep: one of --scenario or --input is required\n";
        return kExitUsage;
      }
      ScenarioSpec spec =
          sweep_scenario.empty() ? load_scenario_file(input) : scenario(sweep_scenario);
      if (sw->count("--theta-start")) spec.grid.start = theta_start;
      if (sw->count("--theta-stop")) spec.grid.stop = theta_stop;
      if (sw->count("--steps")) spec.grid.steps = steps;
      run_sweep(spec, output, sweep_format);
      return 0;
    }
    if (sample->parsed()) {
      run_sample(dim, count, seed, output, sample_format);
      return 0;
    }
    if (verify->parsed()) {
      if (quick) {
        // Explicit --*-samples flags take precedence over the quick defaults.
        if (!verify->count("--tcr-samples")) config.tcr_samples = 2000;
        if (!verify->count("--lemma-samples")) config.lemma_samples = 2000;
        if (!verify->count("--mix-samples")) config.mix_samples = 2000;
        if (!verify->count("--saturation-samples")) config.saturation_samples = 500;
        if (!verify->count("--wwd-samples")) config.wwd_samples = 300;
        if (!verify->count("--two-qubit-samples")) config.two_qubit_samples = 500;
        if (!verify->count("--boundary-samples")) config.boundary_samples = 2000;
      }
      if (mutate == "drop-normalization") config.mutation = Mutation::DropNormalization;
      return run_verify(config, output);
    }
    if (scn->parsed()) {
      with_output(output, [&](std::ostream& os) {
        for (const std::string& name : scenario_names()) os << name << '\n';
      });
      return 0;
    }
  } catch (const UnknownScenario& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
