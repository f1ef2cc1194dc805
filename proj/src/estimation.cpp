#include "centro/estimation.hpp"

#include <cmath>

#include "centro/rotation.hpp"

namespace centro {
namespace {

Eigen::Matrix3d transition(double dt) {
  Eigen::Matrix3d F = Eigen::Matrix3d::Identity();
  F(0, 1) = dt;
  F(0, 2) = 0.5 * dt * dt;
  F(1, 2) = dt;
  return F;
}

// integral of the white-jerk noise over one step
Eigen::Matrix3d process_noise(double dt, double density) {
  const double d2 = dt * dt;
  const double d3 = d2 * dt;
  const double d4 = d3 * dt;
  const double d5 = d4 * dt;
  Eigen::Matrix3d Q;
  Q << d5 / 20.0, d4 / 8.0, d3 / 6.0,
       d4 / 8.0,  d3 / 3.0, d2 / 2.0,
       d3 / 6.0,  d2 / 2.0, dt;
  return density * Q;
}

struct Core {
  Eigen::Vector3d x;
  Eigen::Matrix3d P;
};

Core predict(const Eigen::Vector3d& x, const Eigen::Matrix3d& P, double dt, double density) {
  const Eigen::Matrix3d F = transition(dt);
  Core out;
  out.x = F * x;
  out.P = F * P * F.transpose() + process_noise(dt, density);
  return out;
}

// Joseph-form measurement update keeps the covariance symmetric PSD
template <int M>
void update(Core& core, const Eigen::Matrix<double, M, 3>& H,
            const Eigen::Matrix<double, M, 1>& z, const Eigen::Matrix<double, M, M>& R) {
  const Eigen::Matrix<double, M, M> S = H * core.P * H.transpose() + R;
  const Eigen::Matrix<double, 3, M> K = core.P * H.transpose() * S.inverse();
  core.x += K * (z - H * core.x);
  const Eigen::Matrix3d J = Eigen::Matrix3d::Identity() - K * H;
  core.P = J * core.P * J.transpose() + K * R * K.transpose();
  core.P = 0.5 * (core.P + core.P.transpose()).eval();
}

}  // namespace

AxisFilterState axis_filter_update(const AxisFilterState& state, double meas_position,
                                   double meas_accel, double dt) {
  AxisFilterState out = state;
  Core core = predict(state.state, state.covariance, dt, state.jerk_density);

  const bool has_pos = std::isfinite(meas_position);
  const bool has_acc = std::isfinite(meas_accel);
  if (has_pos && has_acc) {
    Eigen::Matrix<double, 2, 3> H = Eigen::Matrix<double, 2, 3>::Zero();
    H(0, 0) = 1.0;
    H(1, 2) = 1.0;
    Eigen::Vector2d z(meas_position, meas_accel);
    Eigen::Matrix2d R = Eigen::Matrix2d::Zero();
    R(0, 0) = state.position_noise * state.position_noise;
    R(1, 1) = state.accel_noise * state.accel_noise;
    update<2>(core, H, z, R);
  } else if (has_pos || has_acc) {
    Eigen::Matrix<double, 1, 3> H = Eigen::Matrix<double, 1, 3>::Zero();
    H(0, has_pos ? 0 : 2) = 1.0;
    const double sigma = has_pos ? state.position_noise : state.accel_noise;
    Eigen::Matrix<double, 1, 1> z, R;
    z(0, 0) = has_pos ? meas_position : meas_accel;
    R(0, 0) = sigma * sigma;
    update<1>(core, H, z, R);
  }

  out.state = core.x;
  out.covariance = core.P;
  return out;
}

AngularFilterState angular_filter_update(const AngularFilterState& state, double meas_angle,
                                         double dt) {
  AngularFilterState out = state;
  Core core = predict(state.state, state.covariance, dt, state.jerk_density);
  if (std::isfinite(meas_angle)) {
    Eigen::Matrix<double, 1, 3> H = Eigen::Matrix<double, 1, 3>::Zero();
    H(0, 0) = 1.0;
    Eigen::Matrix<double, 1, 1> z, R;
    // measurements arrive as wrapped angles; unwrap against the prediction
    z(0, 0) = core.x(0) + wrap_angle(meas_angle - wrap_angle(core.x(0)));
    R(0, 0) = state.angle_noise * state.angle_noise;
    update<1>(core, H, z, R);
  }
  out.state = core.x;
  out.covariance = core.P;
  return out;
}

Eigen::Vector3d unrotate_acceleration(const Eigen::Vector3d& trunk_accel,
                                      const Eigen::Matrix3d& trunk_rotation, double gravity) {
  return trunk_rotation * trunk_accel - Eigen::Vector3d(0.0, 0.0, gravity);
}

double zmp_estimate(double pos, double height, double accel, double gravity) {
  return pos - height / gravity * accel;
}

SupportSelection select_support(double height_left, double height_right, int current_sign,
                                double band) {
  SupportSelection out;
  out.support_sign = current_sign;
  const double diff = height_left - height_right;  // positive: right is lower
  if (diff > band)
    out.support_sign = kRight;
  else if (diff < -band)
    out.support_sign = kLeft;
  out.semi_double = std::abs(diff) <= band;
  return out;
}

GroundFrame ground_frame_from_support(const FootFrame& support_foot, int support_sign,
                                      double step_width) {
  GroundFrame frame;
  frame.yaw = support_foot.yaw;
  frame.support_sign = support_sign;
  const Eigen::Vector3d inward(0.0, -support_sign * 0.5 * step_width, 0.0);
  frame.origin = support_foot.position + yaw_rotation(support_foot.yaw) * inward;
  frame.origin.z() = 0.0;
  return frame;
}

OdometryState update_odometry(const OdometryState& odo, const Eigen::Vector2d& track_delta,
                              double yaw_delta) {
  OdometryState out = odo;
  const double c = std::cos(odo.yaw);
  const double s = std::sin(odo.yaw);
  out.position.x() += c * track_delta.x() - s * track_delta.y();
  out.position.y() += s * track_delta.x() + c * track_delta.y();
  out.yaw = wrap_angle(odo.yaw + yaw_delta);
  out.step_count = odo.step_count + 1;
  return out;
}

}  // namespace centro
