#include "centro/kinematics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "centro/rotation.hpp"

namespace centro {
namespace {

constexpr double kTieEps = 1e-9;       // ankle height tie: no single support leg
constexpr double kStepTol = 1e-8;      // fixed-point step tolerance
constexpr double kComTol = 1e-6;       // reconciliation failure threshold
constexpr int kMaxIterations = 20;

}  // namespace

std::string MassModel::validate() const {
  if (!(trunk_mass > 0.0) || !(arm_mass > 0.0) || !(leg_mass > 0.0))
    return "mass model: all masses must be positive";
  if (!(thigh_length > 0.0) || !(shank_length > 0.0))
    return "mass model: leg link lengths must be positive";
  if (!(leg_mass_ratio > 0.0) || !(leg_mass_ratio < 1.0))
    return "mass model: leg_mass_ratio must lie in (0, 1)";
  if (!(lower_centroid_drop > 0.0))
    return "mass model: lower_centroid_drop must be positive";
  if (std::abs(trunk_offset.x()) > 1e-12 || std::abs(trunk_offset.y()) > 1e-12)
    return "mass model: trunk mass must sit on the trunk axis (zero lateral offset)";
  if (!(trunk_offset.z() > 0.0))
    return "mass model: trunk mass must sit above the base";
  if (hip_halfwidth < 0.0 || shoulder_halfwidth < 0.0)
    return "mass model: halfwidths must be non-negative";
  if (arm_slide_range < 0.0)
    return "mass model: arm_slide_range must be non-negative";
  if (!trunk_offset.allFinite()) return "mass model: trunk_offset must be finite";
  return {};
}

InertiaSpec InertiaSpec::from_orientation(const Eigen::Matrix3d& R,
                                          const Eigen::Vector3d& moments) {
  InertiaSpec spec;
  spec.orientation = R;
  spec.principal_moments = moments;
  spec.tilt_axis = R.col(2);
  spec.yaw = yaw_about_tilt(R);
  return spec;
}

Eigen::Vector3d compute_com(const MassModel& model, const MassPositions& positions) {
  const double masses[5] = {model.trunk_mass, model.arm_mass, model.arm_mass,
                            model.leg_mass, model.leg_mass};
  Eigen::Vector3d weighted = Eigen::Vector3d::Zero();
  for (int i = 0; i < 5; ++i) weighted += masses[i] * positions[i];
  return weighted / model.total_mass();
}

InertiaResult composite_inertia(const MassModel& model, const MassPositions& positions) {
  const double masses[5] = {model.trunk_mass, model.arm_mass, model.arm_mass,
                            model.leg_mass, model.leg_mass};
  const Eigen::Vector3d com = compute_com(model, positions);

  InertiaResult result;
  for (int i = 0; i < 5; ++i) {
    const Eigen::Vector3d r = positions[i] - com;
    result.tensor += masses[i] * (r.squaredNorm() * Eigen::Matrix3d::Identity() -
                                  r * r.transpose());
  }

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver;
  solver.computeDirect(result.tensor);
  const Eigen::Vector3d evals = solver.eigenvalues();  // ascending
  const Eigen::Matrix3d evecs = solver.eigenvectors();

  // z column: eigenvector closest to the up direction, pointing up. The other
  // two ordered by descending moment; y rebuilt for right-handedness. This
  // fixed convention keeps the frame from flipping between adjacent poses.
  int zi = 0;
  double best = -1.0;
  for (int j = 0; j < 3; ++j) {
    const double a = std::abs(evecs.col(j).z());
    if (a > best) {
      best = a;
      zi = j;
    }
  }
  Eigen::Vector3d zaxis = evecs.col(zi);
  if (zaxis.z() < 0.0) zaxis = -zaxis;

  int rest[2];
  int n = 0;
  for (int j = 0; j < 3; ++j)
    if (j != zi) rest[n++] = j;
  if (evals(rest[0]) < evals(rest[1])) std::swap(rest[0], rest[1]);

  const Eigen::Vector3d xaxis = evecs.col(rest[0]);
  result.principal_axes.col(0) = xaxis;
  result.principal_axes.col(1) = zaxis.cross(xaxis);
  result.principal_axes.col(2) = zaxis;
  result.principal_moments = Eigen::Vector3d(evals(rest[0]), evals(rest[1]), evals(zi));

  const double scale = std::max(std::abs(evals(0)), std::abs(evals(2)));
  result.degenerate = evals(0) < 1e-12 + 1e-9 * scale;
  return result;
}

StraightLegResult straight_leg_adjust(const Eigen::Vector3d& base_candidate,
                                      const Eigen::Vector3d& support_ankle,
                                      const MassModel& model) {
  StraightLegResult result;
  result.base = base_candidate;
  const double full = model.leg_length();
  const Eigen::Vector3d leg = base_candidate - support_ankle;
  const double d = leg.norm();
  if (d >= full) return result;
  result.active = true;
  if (d < 1e-12) {
    result.base = support_ankle + Eigen::Vector3d(0.0, 0.0, full);
  } else {
    result.base = support_ankle + leg * (full / d);
  }
  return result;
}

std::optional<PoseSolution> generate_pose(const Eigen::Vector3d& com, const FootFrame& foot_left,
                                          const FootFrame& foot_right, const InertiaSpec& inertia_set,
                                          const MassModel& model, std::string* error,
                                          bool enable_straight_leg) {
  const auto fail = [&](const std::string& why) -> std::optional<PoseSolution> {
    if (error) *error = "UNREACHABLE: " + why;
    return std::nullopt;
  };

  const std::string model_error = model.validate();
  if (!model_error.empty()) return fail(model_error);

  Eigen::Vector3d tilt = inertia_set.tilt_axis;
  const double tilt_norm = tilt.norm();
  if (tilt_norm < 1e-9) return fail("tilt axis has zero norm");
  tilt /= tilt_norm;
  if (tilt.z() < 0.2) return fail("tilt axis too far from vertical");
  const double psi_set = inertia_set.yaw;

  const Eigen::Vector3d ankle_l = com + foot_left.position;
  const Eigen::Vector3d ankle_r = com + foot_right.position;
  const Eigen::Vector3d ankle_mid = 0.5 * (ankle_l + ankle_r);

  const double m_total = model.total_mass();
  const double m_lower = model.lower_mass();
  const double m_upper = model.upper_mass();
  const double kappa = model.leg_mass_ratio;
  const double trunk_z = model.trunk_offset.z();
  const double arm_neutral = model.shoulder_height - model.arm_drop;
  const double full_leg = model.leg_length();

  // support side: strictly lower ankle; a tie means double support and the
  // straight-leg constraint stays off so symmetry is preserved
  int support = 0;
  if (enable_straight_leg) {
    if (ankle_l.z() < ankle_r.z() - kTieEps)
      support = kLeft;
    else if (ankle_r.z() < ankle_l.z() - kTieEps)
      support = kRight;
  }

  const Eigen::Matrix3d pelvis_yaw = yaw_rotation(psi_set);
  // +y offset; each hip sits at side * hip_offset from the base
  const Eigen::Vector3d hip_offset = pelvis_yaw * Eigen::Vector3d(0.0, model.hip_halfwidth, 0.0);

  // initial base from the virtual single leg through the lower-group centroid
  Eigen::Vector3d base = (com - model.lower_centroid_drop * tilt - kappa * ankle_mid) / (1.0 - kappa);

  bool straight_active = false;
  double arm_z = arm_neutral;
  Eigen::Vector3d leg_mass_l = Eigen::Vector3d::Zero();
  Eigen::Vector3d leg_mass_r = Eigen::Vector3d::Zero();
  Eigen::Vector3d upper_dir = tilt;
  Eigen::Vector3d residual = Eigen::Vector3d::Zero();

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    if (support != 0) {
      const Eigen::Vector3d hip = base + double(support) * hip_offset;
      const Eigen::Vector3d ankle = support == kLeft ? ankle_l : ankle_r;
      const StraightLegResult adjust = straight_leg_adjust(hip, ankle, model);
      base += adjust.base - hip;
      straight_active = adjust.active;
    }

    const Eigen::Vector3d hip_l = base + double(kLeft) * hip_offset;
    const Eigen::Vector3d hip_r = base + double(kRight) * hip_offset;
    if ((hip_l - ankle_l).norm() > full_leg + kStepTol)
      return fail("left foot beyond leg reach");
    if ((hip_r - ankle_r).norm() > full_leg + kStepTol)
      return fail("right foot beyond leg reach");

    leg_mass_l = (1.0 - kappa) * hip_l + kappa * ankle_l;
    leg_mass_r = (1.0 - kappa) * hip_r + kappa * ankle_r;
    const Eigen::Vector3d lower = 0.5 * (leg_mass_l + leg_mass_r);

    // upper-group centroid that closes the CoM, then the nearest realizable one
    const Eigen::Vector3d upper_needed = (m_total * com - m_lower * lower) / m_upper;
    const Eigen::Vector3d offset = upper_needed - base;
    const double reach = offset.norm();
    if (reach < 1e-6) return fail("upper centroid collapses onto the base");
    upper_dir = offset / reach;
    if (upper_dir.z() < 0.0) return fail("upper centroid below the base");

    const double arm_z_needed = (reach * m_upper - model.trunk_mass * trunk_z) / (2.0 * model.arm_mass);
    arm_z = std::clamp(arm_z_needed, arm_neutral - model.arm_slide_range,
                       arm_neutral + model.arm_slide_range);
    const double reach_real = (model.trunk_mass * trunk_z + 2.0 * model.arm_mass * arm_z) / m_upper;

    residual = (m_upper / m_total) * upper_dir * (reach - reach_real);
    Eigen::Vector3d correction = residual;
    if (straight_active) correction.z() = 0.0;  // vertical yields to the leg constraint
    if (correction.norm() < kStepTol) break;
    base += correction * (m_total / ((1.0 - kappa) * m_lower + m_upper));
  }

  if (residual.head<2>().norm() > kComTol)
    return fail("arm travel cannot reconcile the requested CoM");
  if (!straight_active && std::abs(residual.z()) > kComTol)
    return fail("arm travel cannot reconcile the requested CoM height");

  // lower dumbbell yaw from the realized leg-mass pair (+1 side minus -1 side)
  const Eigen::Vector3d pair = leg_mass_r - leg_mass_l;
  const double pair_xy = pair.head<2>().norm();
  double psi_lower = psi_set;
  if (pair_xy > 1e-9) psi_lower = wrap_angle(std::atan2(pair.y(), pair.x()) - M_PI / 2.0);

  // upper dumbbell yaw cancels the lower pair's pull on the composite yaw;
  // saturates at +-45 deg from the set yaw where full cancellation is impossible
  const double w_lower = 2.0 * model.leg_mass * 0.25 * pair_xy * pair_xy;
  const double w_upper = 2.0 * model.arm_mass * model.shoulder_halfwidth * model.shoulder_halfwidth;
  double psi_upper = psi_set;
  if (w_upper > 1e-12) {
    const double target = std::clamp(-(w_lower / w_upper) * std::sin(2.0 * wrap_angle(psi_lower - psi_set)),
                                     -1.0, 1.0);
    psi_upper = wrap_angle(psi_set + std::clamp(0.5 * std::asin(target), -M_PI / 4.0, M_PI / 4.0));
  }

  const Eigen::Matrix3d trunk_rot = rotation_to_axis(upper_dir) * yaw_rotation(psi_upper);

  PoseSolution pose;
  pose.base_position = base;
  pose.trunk_rotation = trunk_rot;
  pose.mass_positions[kTrunk] = base + trunk_rot * Eigen::Vector3d(0.0, 0.0, trunk_z);
  pose.mass_positions[kArmLeft] =
      base + trunk_rot * Eigen::Vector3d(0.0, kLeft * model.shoulder_halfwidth, arm_z);
  pose.mass_positions[kArmRight] =
      base + trunk_rot * Eigen::Vector3d(0.0, kRight * model.shoulder_halfwidth, arm_z);
  pose.mass_positions[kLegLeft] = leg_mass_l;
  pose.mass_positions[kLegRight] = leg_mass_r;
  pose.psi_lower = psi_lower;
  pose.psi_upper = psi_upper;
  pose.straight_leg_active = straight_active;

  const Eigen::Vector3d hips[2] = {base + double(kLeft) * hip_offset, base + double(kRight) * hip_offset};
  const Eigen::Vector3d ankles[2] = {ankle_l, ankle_r};
  for (int leg = 0; leg < 2; ++leg) {
    const Eigen::Vector3d to_ankle = pelvis_yaw.transpose() * (ankles[leg] - hips[leg]);
    const double d = std::min(to_ankle.norm(), full_leg);
    pose.joint_angles[3 * leg + 0] = std::atan2(to_ankle.x(), -to_ankle.z());
    pose.joint_angles[3 * leg + 1] = std::atan2(-to_ankle.y(), -to_ankle.z());
    const double t = model.thigh_length;
    const double s = model.shank_length;
    const double cosine = std::clamp((t * t + s * s - d * d) / (2.0 * t * s), -1.0, 1.0);
    pose.joint_angles[3 * leg + 2] = M_PI - std::acos(cosine);
  }
  pose.joint_angles[6] = psi_lower;
  pose.joint_angles[7] = psi_upper;

  return pose;
}

}  // namespace centro
