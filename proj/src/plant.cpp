#include "centro/plant.hpp"

#include <algorithm>
#include <cmath>

namespace centro {
namespace {

// CoM servo toward the commanded trajectory.  Deliberately gentle: the
// balance law upstream differentiates the measured pivot, which folds the
// servo's own acceleration back into the command stream.  That cascade stays
// well-behaved only while kd < omega^2/k_zmp and kp stays a few times below
// (kd + leak)/(k_zmp/omega^2); 2/2 sits inside that region with margin for
// the discrete tick and estimator lag.
constexpr double kServoP = 2.0;
constexpr double kServoD = 2.0;
// flywheel angle servo, critically damped at 20 rad/s; slower tracking adds
// enough phase at the gait frequency to turn the lean channel's own pivot
// feedback regenerative
constexpr double kFlywheelP = 400.0;
constexpr double kFlywheelD = 40.0;
// cross-track share of touchdown scatter
constexpr double kLandingCross = 0.25;

double backlash_play(double play, double cmd, double band) {
  const double half = 0.5 * band;
  if (cmd > play + half) return cmd - half;
  if (cmd < play - half) return cmd + half;
  return play;
}

}  // namespace

std::string ActuatorModel::validate() const {
  if (!(lag_time >= 0.0) || !std::isfinite(lag_time))
    return "actuator: lag_time must be >= 0";
  if (!(backlash >= 0.0) || !std::isfinite(backlash))
    return "actuator: backlash must be >= 0";
  if (latency_ticks < 0) return "actuator: latency_ticks must be >= 0";
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
    return "actuator: noise_sigma must be >= 0";
  if (!(knee_noise_gain >= 0.0) || !std::isfinite(knee_noise_gain))
    return "actuator: knee_noise_gain must be >= 0";
  if (!(landing_noise >= 0.0) || !std::isfinite(landing_noise))
    return "actuator: landing_noise must be >= 0";
  if (!(flywheel_accel_limit > 0.0))
    return "actuator: flywheel_accel_limit must be > 0";
  return {};
}

std::string PushEvent::validate() const {
  if (!(impulse >= 0.0) || !std::isfinite(impulse))
    return "push: impulse must be >= 0";
  if (!(duration > 0.0)) return "push: duration must be > 0";
  if (std::abs(direction.norm() - 1.0) > 1e-6)
    return "push: direction must be a unit vector";
  if (!std::isfinite(time)) return "push: time must be finite";
  return {};
}

Plant::Plant(const PlantConfig& config, const PlantState& initial)
    : config_(config),
      state_(initial),
      rng_(config.noise_seed),
      rng_land_(config.noise_seed ^ 0x9e3779b97f4a7c15ull) {
  rebuild_polygon();
}

void Plant::rebuild_polygon() {
  const bool left_down = state_.foot_left.position.z() < config_.contact_height;
  const bool right_down = state_.foot_right.position.z() < config_.contact_height;
  if (left_down && right_down)
    polygon_ = SupportPolygon::from_feet(state_.foot_left, state_.foot_right, config_.foot);
  else if (left_down)
    polygon_ = SupportPolygon::from_foot(state_.foot_left, config_.foot);
  else if (right_down)
    polygon_ = SupportPolygon::from_foot(state_.foot_right, config_.foot);
  // airborne never happens with the kinematic gait; keep the last polygon
}

Plant::Target Plant::realize(const Target& commanded) {
  latency_queue_.push_back(commanded);
  while (latency_queue_.size() > size_t(config_.actuator.latency_ticks) + 1)
    latency_queue_.pop_front();
  const Target delayed = latency_queue_.front();

  if (!primed_) {
    play_ = delayed;
    lagged_ = delayed;
    primed_ = true;
  }

  const double band = config_.actuator.backlash;
  for (int a = 0; a < 2; ++a) {
    play_.com_pos[a] = backlash_play(play_.com_pos[a], delayed.com_pos[a], band);
    play_.zmp[a] = backlash_play(play_.zmp[a], delayed.zmp[a], band);
    play_.flywheel[a] = backlash_play(play_.flywheel[a], delayed.flywheel[a], band);
  }
  play_.com_vel = delayed.com_vel;
  play_.foot_left = delayed.foot_left;
  play_.foot_right = delayed.foot_right;
  play_.knee_bend = delayed.knee_bend;

  const double tau = config_.actuator.lag_time;
  const double keep = tau > 0.0 ? std::exp(-config_.dt / tau) : 0.0;
  for (int a = 0; a < 2; ++a) {
    lagged_.com_pos[a] = play_.com_pos[a] + (lagged_.com_pos[a] - play_.com_pos[a]) * keep;
    lagged_.com_vel[a] = play_.com_vel[a] + (lagged_.com_vel[a] - play_.com_vel[a]) * keep;
    lagged_.zmp[a] = play_.zmp[a] + (lagged_.zmp[a] - play_.zmp[a]) * keep;
    lagged_.flywheel[a] = play_.flywheel[a] + (lagged_.flywheel[a] - play_.flywheel[a]) * keep;
  }
  lagged_.foot_left = play_.foot_left;
  lagged_.foot_right = play_.foot_right;
  lagged_.knee_bend = play_.knee_bend;

  Target realized = lagged_;
  // knee bend magnifies command noise; a straightened leg steadies the chain
  const double sigma =
      config_.actuator.noise_sigma *
      (1.0 + config_.actuator.knee_noise_gain * std::max(0.0, realized.knee_bend));
  // six draws every tick keeps the stream aligned across configurations
  double draws[6];
  for (double& d : draws) d = normal_(rng_);
  for (int a = 0; a < 2; ++a) {
    realized.com_pos[a] += sigma * draws[a];
    realized.zmp[a] += sigma * draws[2 + a];
    realized.flywheel[a] += sigma * draws[4 + a];
  }

  // a swing foot lands off its commanded spot by an error that grows with how
  // far the step travelled; most of the miss is overshoot or undershoot along
  // the travel direction, with a smaller cross-track part.  the offset holds
  // until the next touchdown redraws it, so the support polygon genuinely sits
  // where the foot came down
  for (int f = 0; f < 2; ++f) {
    FootFrame& foot = f == 0 ? realized.foot_left : realized.foot_right;
    FootTouch& touch = touch_[f];
    const Eigen::Vector2d spot(foot.position.x(), foot.position.y());
    const bool grounded = foot.position.z() < config_.contact_height;
    if (grounded && !touch.grounded) {
      const Eigen::Vector2d travel = spot - touch.liftoff;
      const double dist = travel.norm();
      const double sigma_land = config_.actuator.landing_noise * dist;
      const Eigen::Vector2d along = dist > 1e-9 ? Eigen::Vector2d(travel / dist)
                                                : Eigen::Vector2d(1.0, 0.0);
      const Eigen::Vector2d across(-along.y(), along.x());
      touch.offset = sigma_land * normal_(rng_land_) * along +
                     kLandingCross * sigma_land * normal_(rng_land_) * across;
    } else if (!grounded && touch.grounded) {
      touch.liftoff = spot;
    }
    touch.grounded = grounded;
    foot.position.x() += touch.offset.x();
    foot.position.y() += touch.offset.y();
  }
  return realized;
}

void Plant::step(const ControlCommand& command, const Eigen::Vector2d& push_force) {
  if (state_.fallen) {
    state_.time += config_.dt;
    return;
  }

  Target commanded;
  commanded.com_pos = command.com_set;
  commanded.com_vel = command.com_vel;
  commanded.zmp = command.zmp_cmd;
  commanded.flywheel = {command.flywheel_sagittal, command.flywheel_lateral};
  commanded.foot_left = command.foot_left;
  commanded.foot_right = command.foot_right;
  commanded.knee_bend =
      0.5 * (command.pose.joint_angles[2] + command.pose.joint_angles[5]);
  const Target realized = realize(commanded);

  state_.foot_left = realized.foot_left;
  state_.foot_right = realized.foot_right;
  rebuild_polygon();

  const double omega = config_.lipm.omega;
  const double omega2 = omega * omega;
  const double mass = config_.flywheel.mass;
  const double h = config_.dt / config_.substeps;
  const double cosh_h = std::cosh(omega * h);
  const double sinh_h = std::sinh(omega * h);
  // reaction scaling: flywheel torque shifts the effective pivot
  const double fly_gain = config_.flywheel.inertia / (mass * config_.lipm.gravity);
  const Eigen::Vector2d push_shift = push_force / (mass * omega2);

  bool saturated = false;
  Eigen::Vector2d applied = state_.zmp;
  for (int j = 0; j < config_.substeps; ++j) {
    const double tj = j * h;
    Eigen::Vector2d servo;
    for (int a = 0; a < 2; ++a) {
      const LipmState target = lipm_state(realized.com_pos[a] - realized.zmp[a],
                                          realized.com_vel[a], config_.lipm, tj);
      const double pos_t = target.pos + realized.zmp[a];
      const double a_des = omega2 * (pos_t - realized.zmp[a]) +
                           kServoP * (pos_t - state_.com_pos[a]) +
                           kServoD * (target.vel - state_.com_vel[a]);
      servo[a] = state_.com_pos[a] - a_des / omega2;
    }
    applied = polygon_.clamp(servo);
    if ((applied - servo).norm() > 1e-12) saturated = true;

    Eigen::Vector2d fly_acc;
    for (int a = 0; a < 2; ++a) {
      const double raw = kFlywheelP * (realized.flywheel[a] - state_.flywheel_angle[a]) -
                         kFlywheelD * state_.flywheel_rate[a];
      fly_acc[a] = std::clamp(raw, -config_.actuator.flywheel_accel_limit,
                              config_.actuator.flywheel_accel_limit);
    }

    const Eigen::Vector2d pivot_eff = applied + fly_gain * fly_acc - push_shift;
    for (int a = 0; a < 2; ++a) {
      const double u = state_.com_pos[a] - pivot_eff[a];
      const double v = state_.com_vel[a];
      state_.com_pos[a] = u * cosh_h + (v / omega) * sinh_h + pivot_eff[a];
      state_.com_vel[a] = u * omega * sinh_h + v * cosh_h;
      state_.com_acc[a] = omega2 * (state_.com_pos[a] - pivot_eff[a]);
    }
    for (int a = 0; a < 2; ++a) {
      state_.flywheel_angle[a] += state_.flywheel_rate[a] * h + 0.5 * fly_acc[a] * h * h;
      state_.flywheel_rate[a] += fly_acc[a] * h;
      const double limit = config_.flywheel.max_angle;
      if (state_.flywheel_angle[a] > limit) {
        state_.flywheel_angle[a] = limit;
        state_.flywheel_rate[a] = std::min(state_.flywheel_rate[a], 0.0);
      } else if (state_.flywheel_angle[a] < -limit) {
        state_.flywheel_angle[a] = -limit;
        state_.flywheel_rate[a] = std::max(state_.flywheel_rate[a], 0.0);
      }
    }
  }

  state_.zmp = applied;
  state_.zmp_saturated = saturated;

  const Eigen::Vector2d inside = polygon_.clamp(state_.com_pos);
  const bool outside = (state_.com_pos - inside).norm() > config_.fall_margin;
  if (saturated && outside)
    saturated_outside_ += config_.dt;
  else
    saturated_outside_ = 0.0;
  if (saturated_outside_ > config_.fall_time) state_.fallen = true;

  state_.time += config_.dt;
}

}  // namespace centro
