#include "centro/control.hpp"

#include <algorithm>
#include <cmath>

#include "centro/rotation.hpp"

namespace centro {

std::string ControlGains::validate(double omega) const {
  const double values[] = {k_zmp, k_com, k_vel, k_eos, k_zmp_aug, k_com_aug,
                           k_timing, k_step, alpha};
  for (double v : values)
    if (!std::isfinite(v)) return "gains: all gains must be finite";
  if (alpha < 0.0 || alpha > 1.0) return "gains: alpha must lie in [0, 1]";
  if (!(k_zmp > omega))
    return "gains: k_zmp must exceed the pendulum frequency omega";
  if (k_com < 0.0 || k_com > omega)
    return "gains: k_com must lie in [0, omega]";
  return {};
}

double com_control(double x_ref, double x, double zmp_ref, double zmp, double vel_ref, double vel,
                   double eos_ref, double eos, const ControlGains& gains) {
  return gains.k_com * (x_ref - x) + gains.k_zmp * (zmp_ref - zmp) +
         gains.k_vel * (vel_ref - vel) + gains.k_eos * (eos_ref - eos);
}

double leaky_integrate(double integrator, double rate, double alpha, double dt) {
  return rate * dt + (1.0 - alpha) * integrator;
}

LipmState eos_predict(double pos, double vel, double pivot, double phase, double frequency,
                      const LipmParams& params) {
  const double remaining = (1.0 - phase) / frequency;
  LipmState state = lipm_state(pos - pivot, vel, params, remaining);
  state.pos += pivot;
  return state;
}

double acom(double x, double flywheel_angle, const FlywheelParams& fw) {
  return x + fw.to_linear() * flywheel_angle;
}

double inertia_control(double acom_ref, double acom_val, double azmp_ref, double azmp_val,
                       const ControlGains& gains) {
  return gains.k_com_aug * (acom_ref - acom_val) + gains.k_zmp_aug * (azmp_ref - azmp_val);
}

double flywheel_angle(double integrator, const FlywheelParams& fw) {
  const double angle = integrator / fw.to_linear();
  return std::clamp(angle, -fw.max_angle, fw.max_angle);
}

Eigen::Matrix3d complementary_rotation(double roll, double pitch) {
  return rotation_from_projected(roll, pitch);
}

double step_timing(double y_eos_ref, double y_eos, double frequency, double gain) {
  const double adjusted = frequency + gain * (y_eos_ref - y_eos);
  return std::clamp(adjusted, 0.0, 2.0 * frequency);
}

double step_size_adjust(double v_ref_x, double frequency, double x_eos_ref, double x_eos,
                        double gain) {
  return v_ref_x / frequency - gain * (x_eos_ref - x_eos);
}

ModeFlags mode_flags(ControlMode mode) {
  ModeFlags f;
  switch (mode) {
    case ControlMode::kOpenLoop:
      f = {false, false, false, false, false, false, false};
      break;
    case ControlMode::kStraightLeg:
      f = {true, false, false, false, false, false, false};
      break;
    case ControlMode::kClosedLoopPlain:
      f = {true, true, false, false, false, false, false};
      break;
    case ControlMode::kLeaky:
      f = {true, true, true, false, false, false, false};
      break;
    case ControlMode::kExtended:
      f = {true, true, true, true, false, false, false};
      break;
    case ControlMode::kInertia:
      f = {true, true, true, true, true, false, false};
      break;
    case ControlMode::kTiming:
      f = {true, true, true, true, true, true, false};
      break;
    case ControlMode::kFull:
      f = {true, true, true, true, true, true, true};
      break;
    case ControlMode::kNoInertia:
      f = {true, true, true, true, false, true, true};
      break;
  }
  return f;
}

const char* mode_name(ControlMode mode) {
  switch (mode) {
    case ControlMode::kOpenLoop: return "open-loop";
    case ControlMode::kStraightLeg: return "straight-leg";
    case ControlMode::kClosedLoopPlain: return "closed-loop-plain";
    case ControlMode::kLeaky: return "leaky";
    case ControlMode::kExtended: return "extended";
    case ControlMode::kInertia: return "inertia";
    case ControlMode::kTiming: return "timing";
    case ControlMode::kFull: return "full";
    case ControlMode::kNoInertia: return "no-inertia";
  }
  return "full";
}

bool mode_from_name(const std::string& name, ControlMode& mode) {
  const ControlMode all[] = {
      ControlMode::kOpenLoop, ControlMode::kStraightLeg, ControlMode::kClosedLoopPlain,
      ControlMode::kLeaky,    ControlMode::kExtended,    ControlMode::kInertia,
      ControlMode::kTiming,   ControlMode::kFull,        ControlMode::kNoInertia};
  for (ControlMode m : all) {
    if (name == mode_name(m)) {
      mode = m;
      return true;
    }
  }
  return false;
}

Controller::Controller(const ControllerConfig& config)
    : config_(config), flags_(mode_flags(config.mode)) {}

void Controller::reset() {
  integrators_ = IntegratorState{};
  has_last_pose_ = false;
}

ControlCommand Controller::tick(const ReferenceTick& ref, const EstimateInputs& est,
                                ReferenceGenerator& generator) {
  const double dt = generator.gait().dt;
  const double f_nom = generator.gait().nominal_frequency;

  ControlCommand cmd;
  cmd.com_height = ref.com_height;
  cmd.foot_left = ref.foot_left;
  cmd.foot_right = ref.foot_right;
  cmd.frequency = f_nom;
  cmd.step_advance = generator.upcoming_step_advance();

  ControlGains gains = config_.gains;
  if (!flags_.extended_terms) {
    gains.k_vel = 0.0;
    gains.k_eos = 0.0;
  }
  const double alpha = flags_.leak ? gains.alpha : 0.0;

  const Eigen::Matrix3d rot_ref =
      rotation_to_axis(ref.inertia.tilt_axis) * yaw_rotation(ref.inertia.yaw);
  Eigen::Matrix3d rot_set = rot_ref;
  Eigen::Vector2d com_set = ref.com_pos;

  // measured pivot confined to the support: a physical ZMP cannot leave the
  // polygon, and the raw acceleration-derived point swings outside it around
  // exchanges.  The polygon follows the commanded stance; whenever the sensed
  // support disagrees (exchange in flight) or sits in the hysteresis band,
  // fall back to the hull of both feet.
  const FootFrame& support_foot = ref.support_sign == kRight ? ref.foot_right : ref.foot_left;
  const FootFrame& other_foot = ref.support_sign == kRight ? ref.foot_left : ref.foot_right;
  const bool support_agrees = est.support_sign == ref.support_sign && !est.semi_double;
  const SupportPolygon polygon =
      support_agrees ? SupportPolygon::from_foot(support_foot, config_.foot)
                     : SupportPolygon::from_feet(support_foot, other_foot, config_.foot);

  // flywheel deflection: the estimated orientation relative to the reference
  const Eigen::Matrix3d deflection = est.inertia_orientation * rot_ref.transpose();
  const ProjectedAngles tilt = projected_angles(deflection);
  const double theta_est[2] = {pitch_to_channel(tilt.pitch), roll_to_channel(tilt.roll)};
  const double theta_acc[2] = {est.flywheel_sagittal_rate2, est.flywheel_lateral_rate2};
  Eigen::Vector2d x_aug, zmp_aug, lean;
  for (int c = 0; c < 2; ++c) {
    lean[c] = config_.flywheel.to_linear() * theta_est[c];
    x_aug[c] = acom(est.com_pos[c], theta_est[c], config_.flywheel);
    const double acc_aug = est.com_acc[c] + config_.flywheel.to_linear() * theta_acc[c];
    zmp_aug[c] = zmp_estimate(x_aug[c], est.com_height, acc_aug, config_.lipm.gravity);
  }

  // With the flywheel in play the accelerometer reads the reaction torque on
  // top of the pivot; the augmented estimate cancels that term, so the
  // physical pivot is recovered from it before the polygon clamp.
  const Eigen::Vector2d pivot_raw =
      flags_.inertia ? Eigen::Vector2d(zmp_aug - lean) : est.zmp;
  const Eigen::Vector2d pivot = polygon.clamp(pivot_raw);
  zmp_aug = pivot + lean;
  cmd.zmp_clamped = pivot;
  cmd.zmp_saturated = (pivot - pivot_raw).norm() > 1e-12;
  // With the lean channel active the flywheel reaction bends the plain CoM
  // away from pendulum form, so the end-of-step state is propagated in the
  // augmented space where that term cancels.  With zero desired orientation
  // the augmented and plain references coincide, so the same reference EOS
  // serves both.
  const double theta_rate[2] = {est.flywheel_sagittal_rate, est.flywheel_lateral_rate};
  Eigen::Vector2d eos_pos = est.com_pos;
  Eigen::Vector2d eos_vel = est.com_vel;
  Eigen::Vector2d eos_pivot = pivot;
  if (flags_.inertia) {
    eos_pos = x_aug;
    eos_vel = est.com_vel +
              config_.flywheel.to_linear() * Eigen::Vector2d(theta_rate[0], theta_rate[1]);
    eos_pivot = zmp_aug;
  }
  const LipmState eos_x =
      eos_predict(eos_pos.x(), eos_vel.x(), eos_pivot.x(), ref.phase, f_nom, config_.lipm);
  const LipmState eos_y =
      eos_predict(eos_pos.y(), eos_vel.y(), eos_pivot.y(), ref.phase, f_nom, config_.lipm);
  cmd.eos_estimate = {eos_x.pos, eos_y.pos};

  if (flags_.feedback) {
    const double eos_est[2] = {eos_x.pos, eos_y.pos};
    for (int a = 0; a < 2; ++a) {
      const double rate =
          com_control(ref.com_pos[a], est.com_pos[a], ref.zmp[a], pivot[a], ref.com_vel[a],
                      est.com_vel[a], ref.eos_pos[a], eos_est[a], gains);
      integrators_.com[a] = leaky_integrate(integrators_.com[a], rate, alpha, dt);
    }
    com_set = ref.com_pos + integrators_.com;

    if (flags_.inertia) {
      double theta_cmd[2];
      for (int c = 0; c < 2; ++c) {
        const double rate =
            inertia_control(com_set[c], x_aug[c], ref.zmp[c], zmp_aug[c], gains);
        integrators_.augmented[c] = leaky_integrate(integrators_.augmented[c], rate, alpha, dt);
        theta_cmd[c] = flywheel_angle(integrators_.augmented[c], config_.flywheel);
      }
      cmd.flywheel_sagittal = theta_cmd[0];
      cmd.flywheel_lateral = theta_cmd[1];
      rot_set = complementary_rotation(channel_to_roll(theta_cmd[1]),
                                       channel_to_pitch(theta_cmd[0])) *
                rot_ref;
    } else {
      integrators_.augmented.setZero();
    }

    // stepping feedback acts in the heading frame of the current support
    const double heading = generator.plan().current().psi;
    const double ch = std::cos(heading);
    const double sh = std::sin(heading);
    const Eigen::Vector2d eos_ref_h(ch * ref.eos_pos.x() + sh * ref.eos_pos.y(),
                                    -sh * ref.eos_pos.x() + ch * ref.eos_pos.y());
    const Eigen::Vector2d eos_est_h(ch * cmd.eos_estimate.x() + sh * cmd.eos_estimate.y(),
                                    -sh * cmd.eos_estimate.x() + ch * cmd.eos_estimate.y());
    if (flags_.timing) {
      // lateral EOS error folds by the support sign: drifting out past the
      // support foot slows the exchange on either side, overshooting toward
      // the swing side speeds it up
      const double side = static_cast<double>(ref.support_sign);
      cmd.frequency =
          step_timing(side * eos_ref_h.y(), side * eos_est_h.y(), f_nom, gains.k_timing);
    }
    if (flags_.step_size) {
      double advance = step_size_adjust(generator.command().vx, f_nom, eos_ref_h.x(),
                                        eos_est_h.x(), gains.k_step);
      advance = std::clamp(advance, -config_.max_step_advance, config_.max_step_advance);
      generator.set_upcoming_step_advance(advance);
      cmd.step_advance = advance;
    }
  }
  generator.set_effective_frequency(cmd.frequency);

  cmd.com_set = com_set;
  cmd.com_vel = ref.com_vel;
  cmd.zmp_cmd = ref.zmp + (com_set - ref.com_pos);
  cmd.inertia_orientation = rot_set;

  const Eigen::Vector3d com3(com_set.x(), com_set.y(), ref.com_height);
  FootFrame left_rel = cmd.foot_left;
  FootFrame right_rel = cmd.foot_right;
  left_rel.position -= com3;
  right_rel.position -= com3;
  const Eigen::Vector3d moments = Eigen::Vector3d::Constant(config_.flywheel.inertia);
  const InertiaSpec spec = InertiaSpec::from_orientation(rot_set, moments);
  std::string pose_error;
  auto pose = generate_pose(com3, left_rel, right_rel, spec, config_.model, &pose_error,
                            flags_.straight_leg);
  if (pose) {
    cmd.pose = *pose;
    last_pose_ = *pose;
    has_last_pose_ = true;
  } else {
    cmd.pose_feasible = false;
    if (has_last_pose_) cmd.pose = last_pose_;
  }
  return cmd;
}

}  // namespace centro
