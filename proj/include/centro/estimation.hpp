#pragma once

#include <Eigen/Dense>

#include "centro/kinematics.hpp"

namespace centro {

/// Per-axis linear state filter over [value, rate, acceleration] with a
/// white-jerk process model. Fused updates couple a kinematic position
/// measurement with an inertial acceleration measurement.
struct AxisFilterState {
  Eigen::Vector3d state = Eigen::Vector3d::Zero();
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Identity() * 1e-2;
  double jerk_density = 50.0;    // process noise intensity
  double position_noise = 0.002; // measurement sigma, m
  double accel_noise = 0.15;     // measurement sigma, m/s^2
};

/// Predict + update. A non-finite measurement channel is left out of the
/// update; with both channels non-finite only the prediction runs.
AxisFilterState axis_filter_update(const AxisFilterState& state, double meas_position,
                                   double meas_accel, double dt);

/// Same triple-integrator filter driven by an angle measurement only.
struct AngularFilterState {
  Eigen::Vector3d state = Eigen::Vector3d::Zero();
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Identity() * 1e-2;
  double jerk_density = 400.0;
  double angle_noise = 0.01;  // rad
};

AngularFilterState angular_filter_update(const AngularFilterState& state, double meas_angle,
                                         double dt);

/// Rotates a trunk-frame accelerometer reading into the world frame and
/// removes gravity.
Eigen::Vector3d unrotate_acceleration(const Eigen::Vector3d& trunk_accel,
                                      const Eigen::Matrix3d& trunk_rotation, double gravity);

/// Per-axis pivot recovered from the estimated state: p = x - (z/g) * xacc.
/// Exact on constant-pivot pendulum trajectories.
double zmp_estimate(double pos, double height, double accel, double gravity);

struct SupportSelection {
  int support_sign = kRight;
  bool semi_double = false;
};

/// Lower foot wins, with a hysteresis band: the support only switches when
/// the other foot is lower by more than the band. Within the band both feet
/// are treated as contact (semi-double support).
SupportSelection select_support(double height_left, double height_right, int current_sign,
                                double band);

/// Ground frame anchored to the support foot, laterally offset to the gait
/// centerline by half the step width.
struct GroundFrame {
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  double yaw = 0.0;
  int support_sign = kRight;
};

GroundFrame ground_frame_from_support(const FootFrame& support_foot, int support_sign,
                                      double step_width);

struct OdometryState {
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  double yaw = 0.0;
  long step_count = 0;
};

/// Composes one realized step displacement (in the heading frame) into the
/// odometry pose. Called once per support exchange.
OdometryState update_odometry(const OdometryState& odo, const Eigen::Vector2d& track_delta,
                              double yaw_delta);

}  // namespace centro
