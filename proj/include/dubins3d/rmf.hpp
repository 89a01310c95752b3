#pragma once

#include <array>
#include <vector>

#include "dubins3d/geom.hpp"

namespace dubins3d {

/// Full vehicle state: position plus the rotation-minimizing frame.
/// Frame columns are the tangent (longitudinal), lateral and normal axes.
struct Configuration {
  Vec3 position = Vec3::Zero();
  Mat3 frame = Mat3::Identity();

  Vec3 tangent() const { return frame.col(0); }
  Vec3 lateral() const { return frame.col(1); }
  Vec3 normal() const { return frame.col(2); }
  Pose pose() const { return {frame, position}; }
  static Configuration from_pose(const Pose& p) { return {p.translation, p.rotation}; }
};

/// Minimum turning radii for the two controls, meters.
struct VehicleParams {
  double r_pitch = 0.0;
  double r_yaw = 0.0;

  double max_kappa_n() const { return 1.0 / r_pitch; }
  double max_kappa_g() const { return 1.0 / r_yaw; }
  void validate() const;  // throws std::invalid_argument
};

/// Yaw rate (kappa_g) and pitch rate (kappa_n) per unit arc length, 1/m.
struct CurvaturePair {
  double kappa_g = 0.0;
  double kappa_n = 0.0;
};

/// The nine constant-curvature motion primitives, from the bang-bang values
/// of the two controls.
enum class PrimitiveLabel {
  LeftInner,    // kappa_g = +1/r_yaw, kappa_n = +1/r_pitch
  RightInner,   // kappa_g = -1/r_yaw, kappa_n = +1/r_pitch
  LeftOuter,    // kappa_g = +1/r_yaw, kappa_n = -1/r_pitch
  RightOuter,   // kappa_g = -1/r_yaw, kappa_n = -1/r_pitch
  PitchUp,      // kappa_g = 0, kappa_n = +1/r_pitch
  PitchDown,    // kappa_g = 0, kappa_n = -1/r_pitch
  LeftFlat,     // kappa_g = +1/r_yaw, kappa_n = 0
  RightFlat,    // kappa_g = -1/r_yaw, kappa_n = 0
  Straight,     // both zero
};

struct MotionPrimitive {
  PrimitiveLabel label;
  CurvaturePair curvature;
};

MotionPrimitive motion_primitive(PrimitiveLabel label, const VehicleParams& params);
std::array<MotionPrimitive, 9> all_motion_primitives(const VehicleParams& params);

/// One of the four spheres tangent to the vehicle: inner/outer along the
/// +/-normal axis (radius r_pitch), left/right along the +/-lateral axis
/// (radius r_yaw).
enum class SphereSide { Inner, Outer, Left, Right };

int pitch_delta(SphereSide side);  // +1 inner, -1 outer, 0 otherwise
int yaw_delta(SphereSide side);    // +1 left, -1 right, 0 otherwise
bool is_pitch_side(SphereSide side);
double sphere_radius(SphereSide side, const VehicleParams& params);
const char* side_name(SphereSide side);

/// Builds a SphereSide from the raw pitch/yaw selector pair; throws
/// std::invalid_argument unless exactly one of the two is +/-1.
SphereSide sphere_side_from_deltas(int delta_pitch, int delta_yaw);

/// Sphere choice at the two boundary configurations.
struct SphereSelection {
  SphereSide at_start;
  SphereSide at_goal;
};

struct TrajectorySample {
  double s = 0.0;
  Configuration config;
  CurvaturePair curvature;
  int segment = 0;  // index of the constant-control run this sample belongs to
};

/// Arc-length ordered samples along a path; sample s values strictly increase.
struct Trajectory {
  std::vector<TrajectorySample> samples;

  double length() const { return samples.empty() ? 0.0 : samples.back().s; }
  bool empty() const { return samples.empty(); }

  /// Appends `tail` shifted so its first sample lands at the current end;
  /// drops the duplicated junction sample and renumbers segment ids.
  void extend(const Trajectory& tail);
};

/// Closed-form rigid transform of a constant-curvature segment, expressed in
/// the frame of the segment start. Left-multiplying the start pose by the
/// result propagates the configuration. Throws for negative arc length or
/// curvature beyond the vehicle bounds.
Pose segment_transform(const CurvaturePair& curv, double arc_length, const VehicleParams& params);

/// Center of the selected tangent sphere at a configuration.
Vec3 tangent_sphere_center(const Configuration& config, SphereSide side, const VehicleParams& params);

/// Samples a saturated segment over a full period and returns the maximum
/// deviation from the tangent sphere it must lie on. Requires |kappa_n| =
/// 1/r_pitch or |kappa_g| = 1/r_yaw; throws otherwise. If both are saturated
/// the worse of the two sphere fits is returned.
double verify_sphere_membership(const CurvaturePair& curv, const VehicleParams& params, int n_samples);

/// Turning radius of a constant-curvature segment: 1/sqrt(kappa_g^2 + kappa_n^2).
double segment_turn_radius(const CurvaturePair& curv);

/// Dense samples of a constant-curvature segment at the given arc-length
/// step; the last sample lands exactly at arc_length. Throws for step <= 0.
Trajectory sample_segment(const Configuration& start, const CurvaturePair& curv, double arc_length,
                          double step, const VehicleParams& params);

/// Default sampling step: min(r_pitch, r_yaw) / 50.
double default_step(const VehicleParams& params);

}  // namespace dubins3d
