#pragma once

#include <Eigen/Dense>
#include <string>

#include "centro/estimation.hpp"
#include "centro/gait.hpp"
#include "centro/lipm.hpp"
#include "centro/reference.hpp"
#include "centro/support_polygon.hpp"

namespace centro {

struct ControlGains {
  double k_zmp = 9.9;      // 1/s, pivot error
  double k_com = 3.96;     // 1/s, position error
  double k_vel = 0.5;      // velocity error
  double k_eos = 1.98;     // end-of-step error
  // Augmented-channel gains run well below the base pair: the lean command
  // scales by mh/I, so integrated tracking residue turns into whole radians
  // of tilt long before the base integrator moves a centimeter. Kept low
  // enough that neither per-step alternating errors nor the steady tracking
  // lag of fast walking can park the lean near its stops; fast disturbances
  // still raise a usable hip response on top of the ankle channel.
  double k_zmp_aug = 0.1;
  double k_com_aug = 0.04;
  double k_timing = 26.0;  // Hz per m of lateral end-of-step error
  double k_step = 1.0;     // m per m of sagittal end-of-step error
  double alpha = 0.03;     // integrator decay per tick

  /// Empty when consistent; checks the leak range and the base-controller
  /// stability region k_zmp > omega >= k_com.
  std::string validate(double omega) const;
};

struct IntegratorState {
  Eigen::Vector2d com = Eigen::Vector2d::Zero();        // x_i per axis
  Eigen::Vector2d augmented = Eigen::Vector2d::Zero();  // sagittal, lateral channels
};

struct FlywheelParams {
  double inertia = 0.18;   // kg m^2, standing-pose transverse moment
  double mass = 7.0;       // kg
  double height = 0.40;    // m
  double max_angle = 0.35; // rad, command saturation

  double to_linear() const { return inertia / (mass * height); }
};

/// Sum of the four feedback terms of the extended position controller.
double com_control(double x_ref, double x, double zmp_ref, double zmp, double vel_ref, double vel,
                   double eos_ref, double eos, const ControlGains& gains);

/// One integrator tick: x_i[n] = rate*dt + (1-alpha)*x_i[n-1]. The returned
/// value is both the new state and the setpoint offset.
double leaky_integrate(double integrator, double rate, double alpha, double dt);

/// Closed-form state at the coming support exchange: remaining time
/// (1-phase)/frequency about the given pivot.
LipmState eos_predict(double pos, double vel, double pivot, double phase, double frequency,
                      const LipmParams& params);

/// Augmented coordinate folding a flywheel angle into the pendulum state.
double acom(double x, double flywheel_angle, const FlywheelParams& fw);

/// Two-term controller on the augmented state.
double inertia_control(double acom_ref, double acom_val, double azmp_ref, double azmp_val,
                       const ControlGains& gains);

/// Inverse of the acom offset, saturated to the commandable angle range.
double flywheel_angle(double integrator, const FlywheelParams& fw);

/// Complementary rotation from per-axis projected angles; the orientation
/// setpoint is R_c * R_ref.
Eigen::Matrix3d complementary_rotation(double roll, double pitch);

/// Timing-adjusted gait frequency, clamped to [0, 2*nominal].
double step_timing(double y_eos_ref, double y_eos, double frequency, double gain);

/// Re-planned sagittal advance of the upcoming foothold.
double step_size_adjust(double v_ref_x, double frequency, double x_eos_ref, double x_eos,
                        double gain);

/// Flywheel channels are expressed as projected angles: the sagittal channel
/// is the pitch, the lateral channel the negated roll (a positive lateral
/// angle leans the body toward +y).
inline double channel_to_roll(double lateral) { return -lateral; }
inline double channel_to_pitch(double sagittal) { return sagittal; }
inline double roll_to_channel(double roll) { return -roll; }
inline double pitch_to_channel(double pitch) { return pitch; }

/// Which controller stages run; mirrors the ablation rows.
enum class ControlMode {
  kOpenLoop,
  kStraightLeg,
  kClosedLoopPlain,
  kLeaky,
  kExtended,
  kInertia,
  kTiming,
  kFull,
  kNoInertia,
};

struct ModeFlags {
  bool straight_leg = true;
  bool feedback = true;
  bool leak = true;            // false: alpha forced to 0 (plain integration)
  bool extended_terms = true;  // velocity + end-of-step terms
  bool inertia = true;         // augmented channel + complementary rotation
  bool timing = true;
  bool step_size = true;
};

ModeFlags mode_flags(ControlMode mode);
const char* mode_name(ControlMode mode);
bool mode_from_name(const std::string& name, ControlMode& mode);

/// Everything the pose generator and plant need for one tick.
struct ControlCommand {
  Eigen::Vector2d com_set = Eigen::Vector2d::Zero();
  Eigen::Vector2d com_vel = Eigen::Vector2d::Zero();  // feedforward
  Eigen::Vector2d zmp_cmd = Eigen::Vector2d::Zero();
  double com_height = 0.40;
  Eigen::Matrix3d inertia_orientation = Eigen::Matrix3d::Identity();
  double flywheel_sagittal = 0.0;  // commanded channel angles
  double flywheel_lateral = 0.0;
  double frequency = 2.6;          // timing-adjusted
  double step_advance = 0.0;       // applied upcoming sagittal advance
  FootFrame foot_left;             // ground frame
  FootFrame foot_right;
  PoseSolution pose;
  bool pose_feasible = true;
  Eigen::Vector2d eos_estimate = Eigen::Vector2d::Zero();
  Eigen::Vector2d zmp_clamped = Eigen::Vector2d::Zero();
  bool zmp_saturated = false;
};

/// Estimates consumed by the controller each tick.
struct EstimateInputs {
  Eigen::Vector2d com_pos = Eigen::Vector2d::Zero();
  Eigen::Vector2d com_vel = Eigen::Vector2d::Zero();
  Eigen::Vector2d com_acc = Eigen::Vector2d::Zero();
  double com_height = 0.40;
  Eigen::Vector2d zmp = Eigen::Vector2d::Zero();
  Eigen::Matrix3d inertia_orientation = Eigen::Matrix3d::Identity();
  double flywheel_sagittal_rate = 0.0;  // channel angular rates
  double flywheel_lateral_rate = 0.0;
  double flywheel_sagittal_rate2 = 0.0;  // channel angular accelerations
  double flywheel_lateral_rate2 = 0.0;
  int support_sign = kRight;
  bool semi_double = false;
};

struct ControllerConfig {
  ControlGains gains;
  FlywheelParams flywheel;
  FootGeometry foot;
  LipmParams lipm;
  MassModel model;
  ControlMode mode = ControlMode::kFull;
  double max_step_advance = 0.22;  // |sagittal advance| clamp, m
};

/// Sequences the per-tick pipeline: end-of-step prediction, the extended
/// position controller with leaky integration, the augmented-state inertia
/// controller, step timing and step size feedback, then pose generation.
/// Owns the integrators and the pose fallback.
class Controller {
 public:
  explicit Controller(const ControllerConfig& config);

  ControlCommand tick(const ReferenceTick& ref, const EstimateInputs& est,
                      ReferenceGenerator& generator);

  const IntegratorState& integrators() const { return integrators_; }
  const ControllerConfig& config() const { return config_; }
  void reset();

 private:
  ControllerConfig config_;
  ModeFlags flags_;
  IntegratorState integrators_;
  PoseSolution last_pose_;
  bool has_last_pose_ = false;
};

}  // namespace centro
