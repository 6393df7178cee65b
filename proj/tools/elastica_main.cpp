#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "elastica/field.hpp"
#include "elastica/io.hpp"
#include "elastica/verify.hpp"

namespace {

int run_command(const elastica::RunConfig& cfg) {
  const elastica::RunReport rep = elastica::run(cfg);
  for (const elastica::RunCheck& c : rep.checks)
    std::printf("[%s] %-26s measured=%-13.5g threshold=%-10.4g %s\n",
                c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.tolerance,
                c.details.c_str());
  for (const std::string& path : rep.artifacts) std::printf("wrote %s\n", path.c_str());
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed inextensible elastic loop: transformed and direct wave solvers"};
  app.require_subcommand(1);

  elastica::RunConfig cfg;
  std::string config_path;

  CLI::App* run_cmd = app.add_subcommand(
      "run", "Evolve one scenario and write trajectory, diagnostics, and report files");
  run_cmd->add_option("--config", config_path,
                      "key=value configuration file (explicit flags override it)");
  run_cmd->add_option("--scenario", cfg.scenario,
                      "circle | latitude | latitude-drift | perturbed-circle | "
                      "perturbed-circle-3d | random | random-planar");
  run_cmd->add_option("--solver", cfg.solver, "hasimoto | direct | both");
  run_cmd->add_option("--N", cfg.N, "modes per component (power of two)");
  run_cmd->add_option("--dt", cfg.dt, "time step");
  run_cmd->add_option("--T", cfg.T, "final time");
  run_cmd->add_option("--psi", cfg.psi, "latitude polar angle, in (0, pi)");
  run_cmd->add_option("--eps", cfg.eps, "perturbation amplitude, in [0, 0.1]");
  run_cmd->add_option("--mode", cfg.mode, "perturbation wave number, 2..N/4");
  run_cmd->add_option("--seed", cfg.seed, "seed for the random scenarios");
  run_cmd->add_option("--out", cfg.out,
                      "output directory (default $ELASTICA_OUT_DIR or ./elastica_out)");
  run_cmd->add_option("--format", cfg.format, "csv | json");
  run_cmd->add_option("--sample-stride", cfg.sample_stride, "record every k-th step");
  run_cmd->add_option("--refine", cfg.refine, "frame-transport grid refinement");
  run_cmd->add_flag("--mutate-f3", cfg.mutate_f3,
                    "flip the cubic forcing sign (sensitivity checks)")
      ->group("");

  elastica::VerifyOptions vopts;
  std::string verify_out;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the structural verification suite");
  verify_cmd->add_option("--N", vopts.N, "modes per component (power of two)");
  verify_cmd->add_option(
      "--out", verify_out,
      "directory for verify_report.json (default $ELASTICA_OUT_DIR or ./elastica_out)");
  verify_cmd->add_flag("--mutate-f3", vopts.mutate_f3,
                       "flip the cubic forcing sign; the energy-drift check must fail");
  verify_cmd->add_option("--only", vopts.only, "run a single numbered criterion (1..11)")
      ->group("");
  verify_cmd->add_option("--ensemble", vopts.ensemble_size,
                         "random curves in the spectral sweep")
      ->group("");
  verify_cmd->add_option("--roundtrips", vopts.roundtrip_count,
                         "random pairs in the transform round trip")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 4;
  }

  try {
    if (*run_cmd) {
      if (!config_path.empty()) {
        // The file provides the base configuration; flags given explicitly on
        // the command line win.
        const elastica::RunConfig file_cfg = elastica::parse_config_file(config_path);
        const auto keep = [&](const char* flag, auto member) {
          if (run_cmd->count(flag) == 0) cfg.*member = file_cfg.*member;
        };
        keep("--scenario", &elastica::RunConfig::scenario);
        keep("--solver", &elastica::RunConfig::solver);
        keep("--N", &elastica::RunConfig::N);
        keep("--T", &elastica::RunConfig::T);
        keep("--dt", &elastica::RunConfig::dt);
        keep("--psi", &elastica::RunConfig::psi);
        keep("--eps", &elastica::RunConfig::eps);
        keep("--mode", &elastica::RunConfig::mode);
        keep("--seed", &elastica::RunConfig::seed);
        keep("--out", &elastica::RunConfig::out);
        keep("--format", &elastica::RunConfig::format);
        keep("--sample-stride", &elastica::RunConfig::sample_stride);
        keep("--refine", &elastica::RunConfig::refine);
        keep("--mutate-f3", &elastica::RunConfig::mutate_f3);
      }
      return run_command(cfg);
    }
    if (*verify_cmd) {
      elastica::RunConfig dir_cfg;
      dir_cfg.out = verify_out;
      const int failures = elastica::verify_and_report(vopts, elastica::resolve_out_dir(dir_cfg));
      return failures == 0 ? 0 : 1;
    }
  } catch (const elastica::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 4;
  } catch (const elastica::ElasticaError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
