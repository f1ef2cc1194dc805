#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "centro/scenario.hpp"

namespace centro {

struct TickRecord {
  double time = 0.0;
  double phase = 0.0;
  int support_sign = kRight;
  bool exchanged = false;

  Eigen::Vector2d ref_com{0, 0}, ref_vel{0, 0}, ref_zmp{0, 0}, ref_eos{0, 0};
  Eigen::Vector2d est_com{0, 0}, est_vel{0, 0}, est_acc{0, 0}, est_zmp{0, 0};
  Eigen::Vector2d cmd_com{0, 0}, cmd_zmp{0, 0};
  double cmd_frequency = 0.0;
  double cmd_step_advance = 0.0;
  double fw_cmd_sag = 0.0, fw_cmd_lat = 0.0;
  double fw_sag = 0.0, fw_lat = 0.0;
  Eigen::Vector2d true_com{0, 0}, true_vel{0, 0}, true_zmp{0, 0};
  Eigen::Vector3d foot_left{0, 0, 0}, foot_right{0, 0, 0};
  Eigen::Vector2d push{0, 0};
  bool zmp_saturated = false;
  bool pose_feasible = true;
  bool fallen = false;
};

struct RunLog {
  std::vector<TickRecord> ticks;
  double dt = 0.01;
  std::uint64_t seed = 0;
  std::string config_text;  // resolved configuration snapshot
  int exchange_count = 0;
  bool fallen = false;
  double fall_time = -1.0;  // s, or negative when the run completed upright
};

/// Closed-loop run of one scenario. Deterministic: the same config and seed
/// produce an identical log. Throws std::invalid_argument on config errors.
RunLog run_scenario(const ScenarioConfig& config);

struct PushBenchRow {
  double impulse = 0.0;  // N*s
  int survived = 0;
  int trials = 0;
};

/// Survival counts under randomized pushes: per level, `trials` runs with one
/// push each at a seeded random direction and gait phase.
std::vector<PushBenchRow> push_benchmark(const ScenarioConfig& base,
                                         const std::vector<double>& levels, int trials,
                                         std::uint64_t seed);

/// Largest forward velocity (to `resolution`) that survives `survive_time`
/// seconds, found by bisection over ramped-command runs.
double max_stable_velocity(const ScenarioConfig& base, double lo, double hi, double resolution,
                           double survive_time);

/// Deterministic seed derivation for sub-runs (levels, trials, stream splits).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

}  // namespace centro
