#include "centro/reference.hpp"

#include <algorithm>
#include <cmath>

#include "centro/rotation.hpp"

namespace centro {
namespace {

Eigen::Vector2d step_xy(const Step& s) { return {s.x, s.y}; }

}  // namespace

ReferenceGenerator::ReferenceGenerator(const LipmParams& params, const GaitState& gait,
                                       const StepPlan& plan)
    : params_(params), gait_(gait), plan_(plan) {
  const Step& cur = plan_.current();
  const double c = std::cos(cur.psi);
  const double s = std::sin(cur.psi);
  track_yaw_ = cur.psi;
  track_origin_ = {cur.x + s * cur.side * plan_.step_width,
                   cur.y - c * cur.side * plan_.step_width};

  const Step& upc = plan_.upcoming();
  const double dx = upc.x - track_origin_.x();
  const double dy = upc.y - track_origin_.y();
  planned_step_.x = c * dx + s * dy;
  planned_step_.y = -s * dx + c * dy;
  planned_step_.psi = wrap_angle(upc.psi - cur.psi);
  planned_step_.side = upc.side;

  pivot_ = step_xy(cur);
  reanchor(0.5 * (step_xy(plan_.previous()) + step_xy(cur)));
}

ReferenceGenerator ReferenceGenerator::standing(const LipmParams& params, double frequency,
                                                double dt, double step_width,
                                                double step_height) {
  GaitState gait;
  gait.phase = 0.0;
  gait.support_sign = kRight;
  gait.nominal_frequency = frequency;
  gait.effective_frequency = frequency;
  gait.dt = dt;

  StepPlan plan;
  plan.step_width = step_width;
  plan.step_height = step_height;
  plan.steps[0] = {0.0, kLeft * step_width, 0.0, kLeft};
  plan.steps[1] = {0.0, kRight * step_width, 0.0, kRight};
  plan.steps[2] = plan.steps[0];  // first step is in place; replanned at the exchange
  return ReferenceGenerator(params, gait, plan);
}

void ReferenceGenerator::set_effective_frequency(double frequency) {
  gait_.effective_frequency = std::max(0.0, frequency);
}

void ReferenceGenerator::set_upcoming_step_advance(double advance) {
  planned_step_.x = advance;
  const double c = std::cos(track_yaw_);
  const double s = std::sin(track_yaw_);
  Step& upc = plan_.steps[2];
  upc.x = track_origin_.x() + c * planned_step_.x - s * planned_step_.y;
  upc.y = track_origin_.y() + s * planned_step_.x + c * planned_step_.y;

  // Re-aim the in-flight orbit at the shifted end-of-step target. Keeping
  // the stale aim would leave the exchange resume point inconsistent with
  // the foothold actually stepped to, and the next reanchor would convert
  // that gap into a reference velocity jump of roughly omega per meter of
  // foothold motion. Position stays continuous at the current phase; the
  // velocity absorbs the shift over the remaining step time. Close to the
  // exchange the remaining horizon cannot absorb anything, so the orbit is
  // left alone and only the landing target moves.
  if (gait_.phase > 0.85) return;
  const double w = params_.omega;
  const double T = 1.0 / gait_.nominal_frequency;
  const double t0 = gait_.phase * T;
  const double ch0 = std::cosh(w * t0);
  const double sh0 = std::sinh(w * t0);
  const double chr = std::cosh(w * (T - t0));
  const double shr = std::sinh(w * (T - t0));
  const Eigen::Vector2d target = 0.5 * (step_xy(plan_.current()) + step_xy(plan_.upcoming()));
  const Eigen::Vector2d rel = anchor_pos_ * ch0 + anchor_vel_ / w * sh0;
  const Eigen::Vector2d vel = w * (target - pivot_ - rel * chr) / shr;
  anchor_pos_ = rel * ch0 - vel / w * sh0;
  anchor_vel_ = vel * ch0 - rel * w * sh0;
  eos_pos_ = target;
  eos_vel_ = rel * w * shr + vel * chr;
}

void ReferenceGenerator::reanchor() {
  const double w = params_.omega;
  const double T = 1.0 / gait_.nominal_frequency;
  const double ch = std::cosh(w * T);
  const double sh = std::sinh(w * T);
  const Eigen::Vector2d target = 0.5 * (step_xy(plan_.current()) + step_xy(plan_.upcoming()));
  anchor_vel_ = w * (target - pivot_ - anchor_pos_ * ch) / sh;
  eos_pos_ = target;
  eos_vel_ = anchor_pos_ * w * sh + anchor_vel_ * ch;
}

void ReferenceGenerator::reanchor(const Eigen::Vector2d& start) {
  anchor_pos_ = start - pivot_;
  reanchor();
}

ReferenceTick ReferenceGenerator::tick() {
  const GaitAdvance advance = advance_gait(gait_);
  if (advance.support_exchanged) {
    const int step_side = gait_.support_sign;  // pre-exchange support takes the next step
    gait_ = advance.state;
    planned_step_ = next_step(plan_.command, gait_.nominal_frequency, step_side, plan_.step_width);
    plan_ = shift_step_queue(plan_, planned_step_);

    const Step& cur = plan_.current();
    const double c = std::cos(cur.psi);
    const double s = std::sin(cur.psi);
    track_yaw_ = cur.psi;
    track_origin_ = {cur.x + s * cur.side * plan_.step_width,
                     cur.y - c * cur.side * plan_.step_width};

    // the reference resumes from its own end-of-step state, so the CoM
    // reference is position-continuous even after step adjustments
    const Eigen::Vector2d resume = eos_pos_;
    pivot_ = step_xy(cur);
    reanchor(resume);
  } else {
    gait_ = advance.state;
  }
  return emit(advance.support_exchanged);
}

ReferenceTick ReferenceGenerator::emit(bool exchanged) const {
  const double w = params_.omega;
  const double t = gait_.phase / gait_.nominal_frequency;
  const double ch = std::cosh(w * t);
  const double sh = std::sinh(w * t);

  ReferenceTick out;
  out.phase = gait_.phase;
  out.support_sign = gait_.support_sign;
  out.support_exchanged = exchanged;

  const Eigen::Vector2d rel = anchor_pos_ * ch + anchor_vel_ / w * sh;
  out.com_pos = pivot_ + rel;
  out.com_vel = anchor_pos_ * w * sh + anchor_vel_ * ch;
  out.com_acc = w * w * rel;
  out.com_height = params_.com_height;
  out.zmp = pivot_;
  out.eos_pos = eos_pos_;
  out.eos_vel = eos_vel_;

  const Step& cur = plan_.current();
  FootFrame support_foot;
  support_foot.position = {cur.x, cur.y, 0.0};
  support_foot.yaw = cur.psi;
  const FootFrame swing_foot = foot_trajectory(gait_.phase, plan_);
  if (gait_.support_sign == kRight) {
    out.foot_right = support_foot;
    out.foot_left = swing_foot;
  } else {
    out.foot_left = support_foot;
    out.foot_right = swing_foot;
  }

  const Eigen::Vector3d com3(out.com_pos.x(), out.com_pos.y(), out.com_height);
  out.inertia = inertia_reference(out.foot_left.position - com3, out.foot_right.position - com3,
                                  gait_.phase, plan_);
  return out;
}

}  // namespace centro
