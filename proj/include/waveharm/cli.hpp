#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "waveharm/scattering.hpp"

namespace waveharm::cli {

// Exit-code contract: 0 success, 1 numerical failure, 2 config error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitConfig = 2;

// Thrown for malformed configs; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  bool log_spacing = false;

  std::vector<double> values() const;
};

enum class BoundaryKind { PlaneWave, ModeTrace, GridFile };

struct JobConfig {
  std::shared_ptr<Surface> surface;
  int l_max = 0;

  bool is_sweep = false;
  double k = 0.0;
  SweepSpec sweep;

  BoundaryKind boundary = BoundaryKind::PlaneWave;
  std::array<double, 3> direction{0.0, 0.0, 1.0};
  AngularIndex mode{0, 0};
  std::string grid_file;

  // 0 -> default_rule(l_max, surface degree)
  int n_theta = 0;
  int n_phi = 0;

  double tolerance = 1e-8;         // validate-suite tolerance
  std::string moment_cache;        // optional binary cache path for sweeps

  std::vector<std::array<double, 3>> field_points;
  std::vector<std::array<double, 3>> kernel_r;
  std::vector<std::array<double, 3>> kernel_t;
  std::vector<std::array<double, 2>> dtn_points;  // (theta, phi)

  nlohmann::json resolved;  // reproducibility header for every result file
};

JobConfig parse_config(const nlohmann::json& doc);
JobConfig load_config(const std::string& path);

// Subcommand drivers; each writes its artifacts under out_dir and returns an
// exit code.
int run_solve(const JobConfig& config, const std::string& out_dir);
int run_sweep(const JobConfig& config, const std::string& out_dir);
int run_field(const JobConfig& config, const std::string& out_dir);
int run_kernel(const JobConfig& config, const std::string& out_dir);
int run_dtn(const JobConfig& config, const std::string& out_dir);
int run_validate(const JobConfig& config, const std::string& out_dir);

// Dispatch by subcommand name, translating exceptions into the exit-code
// contract. threads <= 0 falls back to WAVEHARM_THREADS, then hardware.
int run_command(const std::string& command, const std::string& config_path,
                const std::string& out_dir, int threads);

}  // namespace waveharm::cli
