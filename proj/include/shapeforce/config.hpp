#pragma once

#include <string>

#include "shapeforce/policies.hpp"
#include "shapeforce/sensing.hpp"
#include "shapeforce/wrist.hpp"

namespace shapeforce {

struct PipelineSettings {
  int filter_window = 9;
  int filter_degree = 2;
  int history_length = 15;
  bool filter_enabled = true;
};

/// Everything needed to build the simulated wrist, sensing pipeline, and
/// policy fixtures. Loads from one JSON file; missing fields keep defaults.
struct SimSetup {
  Mat6 stiffness;
  CameraModel camera;
  Pose reference_tag_in_flange;
  Pose alignment;
  double aging_cycles = 0.0;
  bool noise = true;
  PipelineSettings pipeline;
  PolicyParams policy;

  SimSetup();
};

SimSetup setup_from_json(const std::string& text);
std::string setup_to_json(const SimSetup& setup);
SimSetup load_setup(const std::string& path);
void save_setup(const std::string& path, const SimSetup& setup);

WristSimulator make_simulator(const SimSetup& setup);
SignalPipelineConfig make_pipeline_config(const SimSetup& setup);

ContactScene scene_from_json(const std::string& text);
std::string scene_to_json(const ContactScene& scene);
ContactScene load_scene(const std::string& path);
void save_scene(const std::string& path, const ContactScene& scene);

/// The committed fixture scene for each task.
ContactScene default_scene_for(TaskKind kind);

}  // namespace shapeforce
