#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "shapeforce/cli.hpp"

using namespace shapeforce;

namespace {

void add_common(CLI::App* app, cli::CommonOptions& c) {
  app->add_option("--seed", c.seed, "root seed for every stochastic draw");
  app->add_option("--config", c.config_path, "wrist/camera/pipeline/policy JSON");
  app->add_option("--scene", c.scene_path, "scene JSON");
  app->add_option("--out", c.out_dir, "output directory");
  app->add_flag("--no-noise", c.no_noise, "disable observation noise");
  app->add_flag("--no-filter", c.no_filter, "disable signal smoothing");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shapeforce: deformation-based force sensing toolkit"};
  app.require_subcommand(1);

  cli::GenerateOptions gen;
  CLI::App* c_gen = app.add_subcommand("generate", "simulate a paired calibration dataset");
  add_common(c_gen, gen.common);
  c_gen->add_option("--n", gen.samples, "sample count");

  cli::CalibrateOptions cal;
  CLI::App* c_cal = app.add_subcommand("calibrate", "fit the stiffness matrix from a CSV");
  add_common(c_cal, cal.common);
  c_cal->add_option("dataset", cal.dataset_path, "paired dataset CSV")->required();
  c_cal->add_option("--ridge", cal.ridge, "ridge regularization for near-deficient data");

  cli::SensitivityOptions sen;
  CLI::App* c_sen = app.add_subcommand("sensitivity", "sensitivity vector and F_min report");
  add_common(c_sen, sen.common);
  c_sen->add_option("--k", sen.stiffness_path, "stiffness JSON (fit report or 36 numbers)");
  c_sen->add_option("--dr", sen.pixel_resolution, "override the pixel resolution d_R");

  cli::RunOptions run;
  CLI::App* c_run = app.add_subcommand("run", "execute a contact task");
  add_common(c_run, run.common);
  c_run->add_option("task", run.task, "peg|usb|screw|desk|wipe|maze")->required();
  c_run->add_option("--trials", run.trials, "aggregate a success-rate summary");

  cli::ReplayOptions rep;
  CLI::App* c_rep = app.add_subcommand("replay", "re-run a recorded trace through the pipeline");
  add_common(c_rep, rep.common);
  c_rep->add_option("trace", rep.trace_path, "trace JSONL")->required();

  cli::AcceptOptions acc;
  CLI::App* c_acc = app.add_subcommand("accept", "run the acceptance suite");
  add_common(c_acc, acc.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? cli::kExitOk : cli::kExitConfigError;
  }

  try {
    if (c_gen->parsed()) return cli::cmd_generate(gen, std::cout);
    if (c_cal->parsed()) return cli::cmd_calibrate(cal, std::cout);
    if (c_sen->parsed()) return cli::cmd_sensitivity(sen, std::cout);
    if (c_run->parsed()) return cli::cmd_run(run, std::cout);
    if (c_rep->parsed()) return cli::cmd_replay(rep, std::cout);
    if (c_acc->parsed()) return cli::cmd_accept(acc, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitConfigError;
  }
  return cli::kExitConfigError;
}
