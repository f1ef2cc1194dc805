#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>

namespace centro {

/// Leg side signs. The sign is also the lateral direction of that foot's
/// nominal track: the ι=+1 foot walks on the +y side of the gait centerline.
constexpr int kLeft = -1;
constexpr int kRight = +1;

/// Index of each point mass in a five-mass pose.
enum MassIndex { kTrunk = 0, kArmLeft = 1, kArmRight = 2, kLegLeft = 3, kLegRight = 4 };

using MassPositions = std::array<Eigen::Vector3d, 5>;

/// Five point masses and the attachment geometry tying them to the
/// kinematic chain. Defaults describe a 0.9 m, 7 kg humanoid with the
/// trunk carrying 55% of the weight, each leg 17% and each arm 5.5%.
struct MassModel {
  double trunk_mass = 3.85;
  double arm_mass = 0.385;  // each of two
  double leg_mass = 1.19;   // each of two

  Eigen::Vector3d trunk_offset{0.0, 0.0, 0.18};  // base -> trunk mass, trunk frame

  // triangle-approximation attachment parameters
  double shoulder_height = 0.28;    // base -> shoulder line, trunk frame z
  double shoulder_halfwidth = 0.13; // arm dumbbell half separation
  double arm_drop = 0.10;           // nominal arm mass drop below the shoulders
  double arm_slide_range = 0.10;    // +- slide available for CoM reconciliation
  double hip_halfwidth = 0.055;
  double leg_mass_ratio = 0.45;     // leg mass position along hip->ankle
  double lower_centroid_drop = 0.22;  // CoM -> leg-pair centroid along the tilt

  double thigh_length = 0.21;
  double shank_length = 0.21;

  double total_mass() const { return trunk_mass + 2.0 * arm_mass + 2.0 * leg_mass; }
  double upper_mass() const { return trunk_mass + 2.0 * arm_mass; }
  double lower_mass() const { return 2.0 * leg_mass; }
  double leg_length() const { return thigh_length + shank_length; }

  /// Empty string when the model is consistent, else a description of the
  /// violated invariant.
  std::string validate() const;
};

/// A foot frame: position plus yaw. Roll and pitch are held at zero so the
/// sole stays parallel to the ground.
struct FootFrame {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double yaw = 0.0;
};

/// Orientation and principal moments of the composite inertia. tilt_axis and
/// yaw are the decomposed form of `orientation` that the pose generator
/// consumes; from_orientation keeps them consistent.
struct InertiaSpec {
  Eigen::Matrix3d orientation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d principal_moments = Eigen::Vector3d::Zero();
  Eigen::Vector3d tilt_axis = Eigen::Vector3d::UnitZ();
  double yaw = 0.0;

  static InertiaSpec from_orientation(const Eigen::Matrix3d& R,
                                      const Eigen::Vector3d& moments);
};

Eigen::Vector3d compute_com(const MassModel& model, const MassPositions& positions);

struct InertiaResult {
  Eigen::Matrix3d tensor = Eigen::Matrix3d::Zero();          // about the CoM
  Eigen::Matrix3d principal_axes = Eigen::Matrix3d::Identity();
  Eigen::Vector3d principal_moments = Eigen::Vector3d::Zero();
  bool degenerate = false;  // a near-zero principal moment (collinear masses)
};

/// Point-mass inertia tensor about the CoM with its eigendecomposition.
/// Principal axes are ordered so the z column is the eigenvector closest to
/// the body up-axis (sign fixed upward); the remaining two are ordered by
/// descending moment with right-handedness enforced. This keeps the frame
/// from flipping between near-identical poses on consecutive ticks.
InertiaResult composite_inertia(const MassModel& model, const MassPositions& positions);

struct StraightLegResult {
  Eigen::Vector3d base = Eigen::Vector3d::Zero();
  bool active = false;
};

/// Straight-support-leg constraint. The candidate is the virtual-leg origin;
/// when it sits closer to the support ankle than the stretched leg length it
/// is shifted away along the leg axis by the deficit. Idempotent; never moves
/// a point that is already at or beyond full extension.
StraightLegResult straight_leg_adjust(const Eigen::Vector3d& base_candidate,
                                      const Eigen::Vector3d& support_ankle,
                                      const MassModel& model);

struct PoseSolution {
  Eigen::Vector3d base_position = Eigen::Vector3d::Zero();
  Eigen::Matrix3d trunk_rotation = Eigen::Matrix3d::Identity();
  MassPositions mass_positions{};
  double psi_lower = 0.0;  // leg dumbbell yaw
  double psi_upper = 0.0;  // arm dumbbell yaw
  std::array<double, 8> joint_angles{};  // hip pitch/roll, knee per leg, dumbbell yaws
  bool straight_leg_active = false;
};

/// Top-down five-mass pose generation. Places the leg and upper-body mass
/// groups as a dumbbell through the CoM along the requested tilt, solves the
/// base position from the virtual single leg, applies the straight-leg
/// constraint on the lower ankle's side, and reconciles the CoM by tilting
/// the trunk and sliding the arm masses. Horizontal CoM is met exactly;
/// the vertical component is recovered as far as the arm travel allows when
/// the straight-leg constraint pins the base height. Returns nullopt with
/// `error` filled when no base placement keeps both feet within reach.
/// Foot positions are relative to the requested CoM.
std::optional<PoseSolution> generate_pose(const Eigen::Vector3d& com, const FootFrame& foot_left,
                                          const FootFrame& foot_right, const InertiaSpec& inertia_set,
                                          const MassModel& model, std::string* error = nullptr,
                                          bool enable_straight_leg = true);

}  // namespace centro
