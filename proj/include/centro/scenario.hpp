#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "centro/control.hpp"
#include "centro/gait.hpp"
#include "centro/plant.hpp"

namespace centro {

// one knot of the piecewise-linear velocity schedule
struct CommandPoint {
  double time = 0.0;
  VelocityCommand command;
};

// noise injected into the synthetic measurement streams
struct SensorModel {
  double com_noise = 0.002;    // m
  double accel_noise = 0.15;   // m/s^2
  double angle_noise = 0.01;   // rad
};

// what the estimator assumes, as opposed to what the sensors actually do
struct EstimatorTuning {
  double jerk_density = 50.0;
  double position_noise = 0.002;
  double accel_noise = 0.15;
  double angular_jerk_density = 400.0;
  double angle_noise = 0.01;
  double support_band = 0.005;  // m of foot-height hysteresis
};

struct ScenarioConfig {
  // run
  double duration = 20.0;
  std::uint64_t seed = 1;
  ControlMode mode = ControlMode::kFull;

  // gait and pendulum geometry
  double frequency = 2.6;     // Hz, nominal step frequency
  double step_width = 0.08;   // m, lateral half distance between tracks
  double step_height = 0.04;  // m, swing apex
  double com_height = 0.40;   // m
  double dt = 0.01;           // s, control tick
  double gravity = 9.81;      // m/s^2

  MassModel model;
  ControlGains gains;
  double max_step_advance = 0.22;
  double flywheel_inertia = 0.0;    // kg m^2; 0 derives the standing-pose value
  double flywheel_max_angle = 0.35; // rad

  EstimatorTuning estimator;
  ActuatorModel actuator;
  SensorModel sensors;
  FootGeometry foot;

  std::vector<CommandPoint> commands;  // sorted by time; linear between knots
  std::vector<PushEvent> pushes;

  // empty when consistent, else an error prefixed with the offending field path
  std::string validate() const;

  VelocityCommand command_at(double time) const;
  Eigen::Vector2d push_force_at(double time) const;

  LipmParams lipm() const { return LipmParams::from_height(com_height, gravity); }
  FlywheelParams flywheel() const;  // inertia resolved per validate()'s rules
  ControllerConfig controller_config() const;
  PlantConfig plant_config(std::uint64_t noise_seed) const;
};

/// Transverse principal moment of the standing pose (mean of the two
/// horizontal principal moments); 0 when the pose is infeasible. This is the
/// flywheel inertia a config with flywheel.inertia = 0 resolves to.
double standing_transverse_moment(const ScenarioConfig& config);

}  // namespace centro
