#pragma once

#include <Eigen/Dense>
#include <array>

#include "centro/kinematics.hpp"

namespace centro {

/// Gait clock. phase runs over [0,1) per step; the effective frequency is the
/// timing-adjusted rate actually applied, the nominal one is the planned gait
/// frequency.
struct GaitState {
  double phase = 0.0;
  int support_sign = kRight;
  double nominal_frequency = 2.6;
  double effective_frequency = 2.6;
  double dt = 0.01;
};

struct GaitAdvance {
  GaitState state;
  bool support_exchanged = false;
};

/// One clock tick: phase += f_eff * dt; wrapping past 1 flips the support
/// sign and reports the exchange.
GaitAdvance advance_gait(const GaitState& state);

/// One planned foothold. side is the leg that stands there. x/y in the ground
/// frame for queued steps; next_step returns track-frame values.
struct Step {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
  int side = kRight;
};

/// Velocity command (sagittal m/s, lateral m/s, turn rad/s).
struct VelocityCommand {
  double vx = 0.0;
  double vy = 0.0;
  double vpsi = 0.0;
};

/// Footstep queue: previous support, current support, upcoming step. The
/// swing foot travels from steps[0] to steps[2] while the stance leg holds
/// steps[1]. Three steps are all the plan ever keeps.
struct StepPlan {
  std::array<Step, 3> steps{};
  double step_width = 0.08;
  double step_height = 0.04;
  VelocityCommand command;

  const Step& previous() const { return steps[0]; }
  const Step& current() const { return steps[1]; }
  const Step& upcoming() const { return steps[2]; }
};

/// Foothold for the side `step_side`, in the track frame of the current
/// support: x advances by vx/f per step, yaw by vpsi/f, and the lateral
/// offset is side*width plus a 2*vy/f enlargement only when the step lands
/// on the side the lateral command points to; the opposite step trails at
/// the nominal width.
Step next_step(const VelocityCommand& command, double frequency, int step_side, double step_width);

/// Swing-foot pose at the given phase: linear interpolation from the
/// previous to the upcoming foothold, yaw along the shortest arc, height
/// following a half-sine of amplitude step_height.
FootFrame foot_trajectory(double phase, const StepPlan& plan);

/// Queue shift at support exchange. new_step comes from next_step and is
/// re-expressed in the ground frame relative to the realized current support
/// foothold, which keeps each foot's trajectory continuous across the
/// exchange even after step-size adjustments.
StepPlan shift_step_queue(const StepPlan& plan, const Step& new_step);

struct InertiaReference {
  Eigen::Vector3d tilt_axis = Eigen::Vector3d::UnitZ();
  double yaw = 0.0;
};

/// Neutral whole-body orientation: tilt axis pointing from the feet midpoint
/// toward the CoM (foot positions are CoM-relative), yaw interpolated from
/// the current to the upcoming foothold over the step phase. Feet midpoint
/// at the CoM degenerates to the vertical axis.
InertiaReference inertia_reference(const Eigen::Vector3d& foot_left, const Eigen::Vector3d& foot_right,
                                   double phase, const StepPlan& plan);

}  // namespace centro
