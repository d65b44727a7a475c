#include "shapeforce/cli.hpp"

#include <filesystem>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "shapeforce/acceptance.hpp"
#include "shapeforce/calibration.hpp"
#include "shapeforce/config.hpp"
#include "shapeforce/io.hpp"
#include "shapeforce/kernels.hpp"
#include "shapeforce/policies.hpp"

namespace shapeforce::cli {

namespace {

using nlohmann::json;

SimSetup setup_from(const CommonOptions& c) {
  SimSetup setup = c.config_path ? load_setup(*c.config_path) : SimSetup{};
  if (c.no_noise) setup.noise = false;
  if (c.no_filter) setup.pipeline.filter_enabled = false;
  return setup;
}

std::string out_path(const CommonOptions& c, const std::string& name) {
  std::filesystem::create_directories(c.out_dir);
  return (std::filesystem::path(c.out_dir) / name).string();
}

json vec6_json(const Vec6& v) {
  json j = json::array();
  for (int i = 0; i < 6; ++i) j.push_back(v[i]);
  return j;
}

}  // namespace

int cmd_generate(const GenerateOptions& opt, std::ostream& out) {
  const SimSetup setup = setup_from(opt.common);
  const WristSimulator sim = make_simulator(setup);
  const std::vector<kernels::SimulatedRow> rows =
      kernels::simulate_rows(sim, opt.samples, opt.common.seed, kernels::WrenchRanges{}, true);

  PairedDataset data;
  data.rows.reserve(rows.size());
  for (const kernels::SimulatedRow& row : rows) data.rows.push_back(row.sample);
  const std::string csv_path = out_path(opt.common, "dataset.csv");
  write_dataset_csv(csv_path, data);

  // trace of the sweep through an unfiltered pipeline: samples are
  // independent draws, so smoothing across them would be meaningless
  SignalPipelineConfig pipe_cfg = make_pipeline_config(setup);
  pipe_cfg.filter_enabled = false;
  SignalPipeline pipe(pipe_cfg);
  pipe.set_reference(sim.unloaded_tag_in_cam());
  double t = 0.0;
  for (const kernels::SimulatedRow& row : rows) {
    pipe.ingest(t += 0.01, row.tag_in_cam, row.sample.wrench);
  }
  const std::string trace_path = out_path(opt.common, "trace.jsonl");
  write_trace_jsonl(trace_path, pipe.trace());

  out << "wrote " << data.rows.size() << " samples to " << csv_path << " and " << trace_path
      << "\n";
  return kExitOk;
}

int cmd_calibrate(const CalibrateOptions& opt, std::ostream& out) {
  const PairedDataset data = read_dataset_csv(opt.dataset_path);
  const FitReport fit = estimate_stiffness(data, opt.ridge);
  const std::string path = out_path(opt.common, "fit_report.json");
  write_fit_report_json(path, fit);
  double mean = 0.0;
  out << "R^2 per wrench component:\n";
  const char* names[6] = {"Fx", "Fy", "Fz", "Tx", "Ty", "Tz"};
  for (int i = 0; i < 6; ++i) {
    out << "  " << names[i] << ": " << fit.r_squared[i] << "\n";
    mean += fit.r_squared[i] / 6.0;
  }
  out << "mean R^2: " << mean << "\n";
  out << "wrote " << path << "\n";
  return kExitOk;
}

int cmd_sensitivity(const SensitivityOptions& opt, std::ostream& out) {
  SimSetup setup = setup_from(opt.common);
  if (opt.pixel_resolution) setup.camera.pixel_resolution = *opt.pixel_resolution;
  const StiffnessMatrix k = opt.stiffness_path ? read_stiffness_json(*opt.stiffness_path)
                                               : StiffnessMatrix(setup.stiffness);
  const SensitivityVector s = sensitivity(setup.camera);
  const Wrench f_min = min_detectable_wrench(k, s);

  const char* sig_names[6] = {"x (mm)", "y (mm)", "z (mm)",
                              "theta_x (rad)", "theta_y (rad)", "theta_z (rad)"};
  const char* wrench_names[6] = {"Fx (N)", "Fy (N)", "Fz (N)",
                                 "Tx (N*m)", "Ty (N*m)", "Tz (N*m)"};
  out << "sensitivity vector s:\n";
  for (int i = 0; i < 6; ++i) out << "  " << sig_names[i] << ": " << s[i] << "\n";
  out << "minimum detectable wrench F_min = K * s:\n";
  const Vec6 f = f_min.as_vector();
  for (int i = 0; i < 6; ++i) out << "  " << wrench_names[i] << ": " << f[i] << "\n";

  json j;
  j["s"] = vec6_json(s.values());
  j["f_min"] = vec6_json(f);
  spit_file(out_path(opt.common, "sensitivity.json"), j.dump(2) + "\n");
  return kExitOk;
}

int cmd_run(const RunOptions& opt, std::ostream& out) {
  const SimSetup setup = setup_from(opt.common);
  const TaskKind kind = task_kind_from_string(opt.task);
  const ContactScene scene =
      opt.common.scene_path ? load_scene(*opt.common.scene_path) : default_scene_for(kind);
  const WristSimulator sim = make_simulator(setup);
  const SignalPipelineConfig pipe_cfg = make_pipeline_config(setup);

  if (opt.trials <= 1) {
    const TaskResult r =
        run_task(kind, scene, sim, pipe_cfg, setup.policy, opt.common.seed, true);
    write_trace_jsonl(out_path(opt.common, "trace.jsonl"), r.trace);

    // final history window for downstream learners
    const int h = setup.pipeline.history_length;
    if (static_cast<int>(r.trace.size()) >= h) {
      SignalWindow window;
      window.signals.resize(h, 6);
      const std::size_t base = r.trace.size() - static_cast<std::size_t>(h);
      for (int i = 0; i < h; ++i) {
        const TraceRecord& rec = r.trace[base + static_cast<std::size_t>(i)];
        window.signals.row(i) = rec.filtered_signal.as_vector().transpose();
        window.timestamps.push_back(rec.t);
      }
      write_window_csv(out_path(opt.common, "window.csv"), window);
    }
    json j;
    j["task"] = opt.task;
    j["status"] = to_string(r.outcome.status);
    j["success"] = r.success;
    j["steps"] = r.steps;
    j["retries"] = r.retries;
    if (r.outcome.fired_trigger) j["fired_trigger"] = *r.outcome.fired_trigger;
    json events = json::array();
    for (const PolicyEvent& e : r.events) {
      events.push_back(json{{"step", e.step}, {"type", e.type}, {"r", e.r}, {"c", e.c},
                            {"dir", e.dir}, {"value", e.value}});
    }
    j["trigger_log"] = events;
    spit_file(out_path(opt.common, "outcome.json"), j.dump(2) + "\n");
    out << opt.task << ": " << to_string(r.outcome.status) << (r.success ? " (success)" : "")
        << " in " << r.steps << " steps\n";
    return r.success ? kExitOk : kExitTaskFailure;
  }

  const BatchSummary batch = run_task_batch(kind, scene, sim, pipe_cfg, setup.policy, opt.trials,
                                            opt.common.seed, true);
  json j;
  j["task"] = opt.task;
  j["trials"] = batch.trials;
  j["successes"] = batch.successes;
  j["success_rate"] = batch.success_rate();
  json per = json::array();
  for (const TaskResult& r : batch.results) {
    per.push_back(json{{"success", r.success}, {"steps", r.steps}, {"retries", r.retries},
                       {"status", to_string(r.outcome.status)}});
  }
  j["trials_detail"] = per;
  spit_file(out_path(opt.common, "summary.json"), j.dump(2) + "\n");
  out << opt.task << ": " << batch.successes << "/" << batch.trials << " ("
      << 100.0 * batch.success_rate() << "%)\n";
  return batch.successes == batch.trials ? kExitOk : kExitTaskFailure;
}

int cmd_replay(const ReplayOptions& opt, std::ostream& out) {
  const SimSetup setup = setup_from(opt.common);
  const std::vector<TraceRecord> trace = read_trace_jsonl(opt.trace_path);
  if (trace.empty()) {
    out << "empty trace\n";
    return kExitConfigError;
  }
  // the zero reference is not part of the trace; it is the unloaded pose of
  // the configured wrist, exactly as at recording time
  SignalPipeline pipe(make_pipeline_config(setup));
  pipe.set_reference(make_simulator(setup).unloaded_tag_in_cam());
  std::size_t mismatches = 0;
  for (const TraceRecord& rec : trace) {
    const DeformationSignal sig = pipe.ingest(rec.t, rec.tag_in_cam, rec.true_wrench);
    if ((sig.as_vector() - rec.filtered_signal.as_vector()).cwiseAbs().maxCoeff() != 0.0) {
      ++mismatches;
    }
  }
  write_trace_jsonl(out_path(opt.common, "replay.jsonl"), pipe.trace());
  out << "replayed " << trace.size() << " records, " << mismatches << " filtered mismatches\n";
  return mismatches == 0 ? kExitOk : kExitTaskFailure;
}

int cmd_accept(const AcceptOptions& opt, std::ostream& out) {
  const AcceptanceReport report = run_acceptance(opt.common.seed);
  out << format_acceptance_table(report);
  spit_file(out_path(opt.common, "accept_report.json"), report.canonical_json);
  return report.all_pass() ? kExitOk : kExitTaskFailure;
}

}  // namespace shapeforce::cli
