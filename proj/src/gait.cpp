#include "centro/gait.hpp"

#include <cmath>

#include "centro/rotation.hpp"

namespace centro {

GaitAdvance advance_gait(const GaitState& state) {
  GaitAdvance result;
  result.state = state;
  result.state.phase = state.phase + state.effective_frequency * state.dt;
  if (result.state.phase >= 1.0) {
    result.state.phase -= 1.0;
    result.state.support_sign = -state.support_sign;
    result.support_exchanged = true;
  }
  return result;
}

Step next_step(const VelocityCommand& command, double frequency, int step_side,
               double step_width) {
  Step step;
  step.side = step_side;
  step.x = command.vx / frequency;
  step.psi = command.vpsi / frequency;
  double widening = 0.0;
  if (command.vy > 0.0 && step_side == kRight) widening = 2.0 * command.vy / frequency;
  if (command.vy < 0.0 && step_side == kLeft) widening = 2.0 * command.vy / frequency;
  step.y = step_side * step_width + widening;
  return step;
}

FootFrame foot_trajectory(double phase, const StepPlan& plan) {
  const Step& from = plan.previous();
  const Step& to = plan.upcoming();
  FootFrame foot;
  foot.position.x() = (1.0 - phase) * from.x + phase * to.x;
  foot.position.y() = (1.0 - phase) * from.y + phase * to.y;
  foot.position.z() = plan.step_height * std::sin(phase * M_PI);
  foot.yaw = lerp_angle(from.psi, to.psi, phase);
  return foot;
}

StepPlan shift_step_queue(const StepPlan& plan, const Step& new_step) {
  StepPlan shifted = plan;
  shifted.steps[0] = plan.steps[1];
  shifted.steps[1] = plan.steps[2];

  // track frame of the realized support foothold: origin on the gait
  // centerline, half a step width inside of the foot
  const Step& support = shifted.steps[1];
  const double c = std::cos(support.psi);
  const double s = std::sin(support.psi);
  const double cx = support.x + s * support.side * plan.step_width;
  const double cy = support.y - c * support.side * plan.step_width;

  Step placed;
  placed.side = new_step.side;
  placed.x = cx + c * new_step.x - s * new_step.y;
  placed.y = cy + s * new_step.x + c * new_step.y;
  placed.psi = wrap_angle(support.psi + new_step.psi);
  shifted.steps[2] = placed;
  return shifted;
}

InertiaReference inertia_reference(const Eigen::Vector3d& foot_left,
                                   const Eigen::Vector3d& foot_right, double phase,
                                   const StepPlan& plan) {
  InertiaReference ref;
  const Eigen::Vector3d midpoint = 0.5 * (foot_left + foot_right);
  const double norm = midpoint.norm();
  if (norm > 1e-9) ref.tilt_axis = -midpoint / norm;
  if (ref.tilt_axis.z() < 0.0) ref.tilt_axis = -ref.tilt_axis;
  ref.yaw = lerp_angle(plan.current().psi, plan.upcoming().psi, phase);
  return ref;
}

}  // namespace centro
