#pragma once

#include <Eigen/Dense>

#include "centro/gait.hpp"
#include "centro/kinematics.hpp"
#include "centro/lipm.hpp"

namespace centro {

/// All reference signals for one control tick.
struct ReferenceTick {
  double phase = 0.0;
  int support_sign = kRight;
  bool support_exchanged = false;

  Eigen::Vector2d com_pos = Eigen::Vector2d::Zero();
  Eigen::Vector2d com_vel = Eigen::Vector2d::Zero();
  Eigen::Vector2d com_acc = Eigen::Vector2d::Zero();
  double com_height = 0.40;

  Eigen::Vector2d zmp = Eigen::Vector2d::Zero();      // pivot = current support
  Eigen::Vector2d eos_pos = Eigen::Vector2d::Zero();  // state at the coming exchange
  Eigen::Vector2d eos_vel = Eigen::Vector2d::Zero();

  FootFrame foot_left;   // ground frame, absolute
  FootFrame foot_right;
  InertiaReference inertia;
};

/// Walks the step queue and emits analytic pendulum references keyed to the
/// gait phase. Per step and axis the trajectory starts at the midpoint of the
/// previous and current footholds and ends at the midpoint of the current and
/// upcoming ones, with the current foothold as pivot; the boundary velocity
/// follows from the closed form, which makes the reference periodic under a
/// constant command and position-continuous across exchanges. Step timing
/// scales the phase rate only; the upcoming foothold can be re-placed
/// sagittally until its exchange.
class ReferenceGenerator {
 public:
  ReferenceGenerator(const LipmParams& params, const GaitState& gait, const StepPlan& plan);

  /// Double-support start: feet at +-width, phase 0, right support, command zero.
  static ReferenceGenerator standing(const LipmParams& params, double frequency, double dt,
                                     double step_width, double step_height);

  void set_command(const VelocityCommand& command) { plan_.command = command; }
  const VelocityCommand& command() const { return plan_.command; }

  /// Timing-adjusted phase rate, applied from the next tick on.
  void set_effective_frequency(double frequency);

  /// Replaces the sagittal track advance of the upcoming step and re-places
  /// it in the ground frame. The lateral offset and yaw stay as planned.
  void set_upcoming_step_advance(double advance);
  double upcoming_step_advance() const { return planned_step_.x; }

  ReferenceTick tick();

  /// Reference at the current phase, without advancing.
  ReferenceTick current() const { return emit(false); }

  const StepPlan& plan() const { return plan_; }
  const GaitState& gait() const { return gait_; }
  const LipmParams& params() const { return params_; }

 private:
  void reanchor();
  void reanchor(const Eigen::Vector2d& start);
  ReferenceTick emit(bool exchanged) const;

  LipmParams params_;
  GaitState gait_;
  StepPlan plan_;
  Step planned_step_;                // track-frame form of steps[2]
  Eigen::Vector2d track_origin_ = Eigen::Vector2d::Zero();
  double track_yaw_ = 0.0;
  Eigen::Vector2d anchor_pos_ = Eigen::Vector2d::Zero();  // pivot-relative at phase 0
  Eigen::Vector2d anchor_vel_ = Eigen::Vector2d::Zero();
  Eigen::Vector2d pivot_ = Eigen::Vector2d::Zero();
  Eigen::Vector2d eos_pos_ = Eigen::Vector2d::Zero();
  Eigen::Vector2d eos_vel_ = Eigen::Vector2d::Zero();
};

}  // namespace centro
