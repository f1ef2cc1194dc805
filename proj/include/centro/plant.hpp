#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <deque>
#include <random>
#include <string>

#include "centro/control.hpp"
#include "centro/kinematics.hpp"
#include "centro/lipm.hpp"
#include "centro/support_polygon.hpp"

namespace centro {

// command-path imperfections: transport latency, gear play, compliance lag,
// and command noise that grows with knee bend
struct ActuatorModel {
  double lag_time = 0.0;         // s, first-order response of realized targets
  double backlash = 0.0;         // m (rad for flywheel), deadband of play
  int latency_ticks = 0;         // whole control ticks of transport delay
  double noise_sigma = 0.0;      // m, std dev added to realized targets
  double knee_noise_gain = 0.0;  // noise multiplier per radian of knee bend
  double landing_noise = 0.0;    // m of touchdown scatter per m of swing travel
  double flywheel_accel_limit = 20.0;  // rad/s^2

  std::string validate() const;
};

struct PushEvent {
  double time = 0.0;       // s, force onset
  Eigen::Vector2d direction{1.0, 0.0};  // unit vector in the ground plane
  double impulse = 0.0;    // N*s, integral of the applied force
  double duration = 0.1;   // s, force is impulse/duration while active

  std::string validate() const;
};

struct PlantState {
  Eigen::Vector2d com_pos{0.0, 0.0};
  Eigen::Vector2d com_vel{0.0, 0.0};
  Eigen::Vector2d com_acc{0.0, 0.0};        // at the end of the last tick
  Eigen::Vector2d zmp{0.0, 0.0};            // realized pivot after the polygon clamp
  Eigen::Vector2d flywheel_angle{0.0, 0.0};  // sagittal, lateral
  Eigen::Vector2d flywheel_rate{0.0, 0.0};
  FootFrame foot_left;
  FootFrame foot_right;
  double time = 0.0;
  bool zmp_saturated = false;
  bool fallen = false;
};

struct PlantConfig {
  LipmParams lipm;
  FlywheelParams flywheel;
  ActuatorModel actuator;
  FootGeometry foot;
  double dt = 0.01;
  int substeps = 10;
  double contact_height = 1e-4;  // m, a foot below this height bears load
  double fall_margin = 0.01;     // m, CoM excursion outside the polygon
  double fall_time = 0.2;        // s, sustained saturation before a fall
  uint64_t noise_seed = 0;
};

// LIPM-plus-flywheel plant with kinematic foot placement.  Commands pass a
// latency queue, a backlash deadband, and a first-order lag before a pivot
// servo tracks the commanded CoM trajectory; dynamics integrate exactly over
// piecewise-constant pivots at dt/substeps.
class Plant {
 public:
  Plant(const PlantConfig& config, const PlantState& initial);

  const PlantState& state() const { return state_; }
  const SupportPolygon& polygon() const { return polygon_; }

  void step(const ControlCommand& command, const Eigen::Vector2d& push_force);

 private:
  struct Target {
    Eigen::Vector2d com_pos{0.0, 0.0};
    Eigen::Vector2d com_vel{0.0, 0.0};
    Eigen::Vector2d zmp{0.0, 0.0};
    Eigen::Vector2d flywheel{0.0, 0.0};
    FootFrame foot_left;
    FootFrame foot_right;
    double knee_bend = 0.0;
  };

  Target realize(const Target& commanded);
  void rebuild_polygon();

  // touchdown scatter bookkeeping for one foot
  struct FootTouch {
    bool grounded = true;
    Eigen::Vector2d liftoff{0.0, 0.0};
    Eigen::Vector2d offset{0.0, 0.0};
  };

  PlantConfig config_;
  PlantState state_;
  SupportPolygon polygon_;
  std::deque<Target> latency_queue_;
  Target play_;     // backlash output
  Target lagged_;   // first-order lag output
  bool primed_ = false;
  double saturated_outside_ = 0.0;  // s of sustained saturation with CoM outside
  FootTouch touch_[2];              // left, right
  std::mt19937_64 rng_;
  // separate engine so landings do not shift the per-tick draw stream
  std::mt19937_64 rng_land_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace centro
