#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace shapeforce::cli {

// exit codes: 0 success, 1 task failure, 2 configuration error
inline constexpr int kExitOk = 0;
inline constexpr int kExitTaskFailure = 1;
inline constexpr int kExitConfigError = 2;

struct CommonOptions {
  std::uint64_t seed = 1;
  std::optional<std::string> config_path;  // wrist/camera/pipeline/policy JSON
  std::optional<std::string> scene_path;
  std::string out_dir = ".";
  bool no_noise = false;
  bool no_filter = false;
};

struct GenerateOptions {
  CommonOptions common;
  int samples = 5000;
};

struct CalibrateOptions {
  CommonOptions common;
  std::string dataset_path;
  double ridge = 0.0;
};

struct SensitivityOptions {
  CommonOptions common;
  std::optional<std::string> stiffness_path;  // fit report or raw matrix
  std::optional<double> pixel_resolution;     // d_R override
};

struct RunOptions {
  CommonOptions common;
  std::string task;
  int trials = 1;
};

struct ReplayOptions {
  CommonOptions common;
  std::string trace_path;
};

struct AcceptOptions {
  CommonOptions common;
};

int cmd_generate(const GenerateOptions& opt, std::ostream& out);
int cmd_calibrate(const CalibrateOptions& opt, std::ostream& out);
int cmd_sensitivity(const SensitivityOptions& opt, std::ostream& out);
int cmd_run(const RunOptions& opt, std::ostream& out);
int cmd_replay(const ReplayOptions& opt, std::ostream& out);
int cmd_accept(const AcceptOptions& opt, std::ostream& out);

}  // namespace shapeforce::cli
