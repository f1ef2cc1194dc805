#include "centro/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace centro {

std::string ScenarioConfig::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration))
    return "[run] duration: must be > 0";
  if (!(dt > 0.0) || !std::isfinite(dt)) return "[gait] dt: must be > 0";
  if (!(frequency > 0.0) || !std::isfinite(frequency))
    return "[gait] frequency: must be > 0";
  if (!(step_width > 0.0)) return "[gait] step_width: must be > 0";
  if (!(step_height >= 0.0)) return "[gait] step_height: must be >= 0";
  if (!(com_height > 0.0)) return "[gait] com_height: must be > 0";
  if (!(gravity > 0.0)) return "[gait] gravity: must be > 0";

  const std::string model_error = model.validate();
  if (!model_error.empty()) return "[model] " + model_error;

  const std::string gain_error = gains.validate(lipm().omega);
  if (!gain_error.empty()) return "[gains] " + gain_error;
  if (!(max_step_advance > 0.0)) return "[gains] max_step_advance: must be > 0";
  if (!(flywheel_inertia >= 0.0))
    return "[flywheel] inertia: must be >= 0 (0 derives the standing-pose value)";
  if (flywheel_inertia == 0.0 && !(standing_transverse_moment(*this) > 0.0))
    return "[flywheel] inertia: standing pose infeasible, set an explicit value";
  if (!(flywheel_max_angle > 0.0)) return "[flywheel] max_angle: must be > 0";

  if (!(estimator.jerk_density > 0.0))
    return "[estimation] jerk_density: must be > 0";
  if (!(estimator.position_noise > 0.0))
    return "[estimation] position_noise: must be > 0";
  if (!(estimator.accel_noise > 0.0))
    return "[estimation] accel_noise: must be > 0";
  if (!(estimator.angular_jerk_density > 0.0))
    return "[estimation] angular_jerk_density: must be > 0";
  if (!(estimator.angle_noise > 0.0))
    return "[estimation] angle_noise: must be > 0";
  if (!(estimator.support_band >= 0.0))
    return "[estimation] support_band: must be >= 0";

  const std::string actuator_error = actuator.validate();
  if (!actuator_error.empty()) return "[actuator] " + actuator_error;

  if (!(sensors.com_noise >= 0.0)) return "[sensors] com_noise: must be >= 0";
  if (!(sensors.accel_noise >= 0.0)) return "[sensors] accel_noise: must be >= 0";
  if (!(sensors.angle_noise >= 0.0)) return "[sensors] angle_noise: must be >= 0";

  if (!(foot.half_length > 0.0)) return "[foot] half_length: must be > 0";
  if (!(foot.half_width > 0.0)) return "[foot] half_width: must be > 0";

  for (size_t i = 0; i + 1 < commands.size(); ++i)
    if (commands[i + 1].time < commands[i].time)
      return "[command." + std::to_string(i + 1) + "] time: schedule must be sorted";
  for (size_t i = 0; i < pushes.size(); ++i) {
    const std::string push_error = pushes[i].validate();
    if (!push_error.empty())
      return "[push." + std::to_string(i) + "] " + push_error;
  }
  return {};
}

VelocityCommand ScenarioConfig::command_at(double time) const {
  if (commands.empty()) return {};
  if (time <= commands.front().time) return commands.front().command;
  if (time >= commands.back().time) return commands.back().command;
  for (size_t i = 0; i + 1 < commands.size(); ++i) {
    const CommandPoint& a = commands[i];
    const CommandPoint& b = commands[i + 1];
    if (time > b.time) continue;
    const double span = b.time - a.time;
    const double w = span > 0.0 ? (time - a.time) / span : 1.0;
    VelocityCommand out;
    out.vx = a.command.vx + w * (b.command.vx - a.command.vx);
    out.vy = a.command.vy + w * (b.command.vy - a.command.vy);
    out.vpsi = a.command.vpsi + w * (b.command.vpsi - a.command.vpsi);
    return out;
  }
  return commands.back().command;
}

Eigen::Vector2d ScenarioConfig::push_force_at(double time) const {
  Eigen::Vector2d force = Eigen::Vector2d::Zero();
  for (const PushEvent& push : pushes)
    if (time >= push.time && time < push.time + push.duration)
      force += push.direction * (push.impulse / push.duration);
  return force;
}

// Transverse principal moment of the standing pose, held constant for the run.
double standing_transverse_moment(const ScenarioConfig& config) {
  const Eigen::Vector3d com(0.0, 0.0, config.com_height);
  FootFrame left, right;
  left.position = Eigen::Vector3d(0.0, config.step_width, -config.com_height);
  right.position = Eigen::Vector3d(0.0, -config.step_width, -config.com_height);
  auto pose = generate_pose(com, left, right, InertiaSpec{}, config.model);
  if (!pose) return 0.0;
  const InertiaResult inertia = composite_inertia(config.model, pose->mass_positions);
  return 0.5 * (inertia.principal_moments[0] + inertia.principal_moments[1]);
}

FlywheelParams ScenarioConfig::flywheel() const {
  FlywheelParams fw;
  fw.inertia =
      flywheel_inertia > 0.0 ? flywheel_inertia : standing_transverse_moment(*this);
  fw.max_angle = flywheel_max_angle;
  fw.mass = model.total_mass();
  fw.height = com_height;
  return fw;
}

ControllerConfig ScenarioConfig::controller_config() const {
  ControllerConfig cc;
  cc.gains = gains;
  cc.flywheel = flywheel();
  cc.foot = foot;
  cc.lipm = lipm();
  cc.model = model;
  cc.mode = mode;
  cc.max_step_advance = max_step_advance;
  return cc;
}

PlantConfig ScenarioConfig::plant_config(std::uint64_t noise_seed) const {
  PlantConfig pc;
  pc.lipm = lipm();
  pc.flywheel = flywheel();
  pc.actuator = actuator;
  pc.foot = foot;
  pc.dt = dt;
  pc.noise_seed = noise_seed;
  return pc;
}

}  // namespace centro
