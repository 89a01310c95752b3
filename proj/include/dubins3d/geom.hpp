#pragma once

#include <Eigen/Dense>
#include <numbers>

namespace dubins3d {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Tolerance for frame orthonormality checks.
inline constexpr double kFrameTol = 1e-9;

/// ZYX yaw/pitch/roll, radians. Positive pitch tilts the nose up, i.e. the
/// pitch rotation is taken about the -y body axis.
struct EulerZYX {
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;
};

/// Rigid transform x -> rotation * x + translation, bottom row implied.
struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Pose operator*(const Pose& rhs) const {
    return {rotation * rhs.rotation, rotation * rhs.translation + translation};
  }
  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Pose inverse() const {
    Mat3 rt = rotation.transpose();
    return {rt, -(rt * translation)};
  }
};

/// Wraps an angle to (-pi, pi]; the boundary resolves to +pi.
double wrap_pi(double angle);

/// Wraps an angle to [0, 2*pi).
double wrap_two_pi(double angle);

Mat3 rot_x(double angle);
Mat3 rot_y(double angle);
Mat3 rot_z(double angle);

/// Body frame R = Rz(yaw) * Ry(-pitch) * Rx(roll). Columns are the
/// longitudinal, lateral and normal axes of the vehicle.
Mat3 euler_to_frame(const EulerZYX& angles);

/// Inverse of euler_to_frame, intended for diagnostics only. The result is
/// unspecified at |pitch| = pi/2.
EulerZYX frame_to_euler(const Mat3& frame);

/// Rodrigues rotation about a unit axis. Throws std::invalid_argument if the
/// axis is not unit length within 1e-9.
Mat3 axis_angle_exp(const Vec3& axis, double angle);

/// Unit vector perpendicular to the unit vector v, seeded from the global X
/// axis; switches to the global Y axis when |v . X| > 0.9.
Vec3 orthonormal_complement(const Vec3& v);

/// Unit vector perpendicular to unit v, seeded from the columns of `frame`
/// (first column with |col . v| <= 0.9). Rotating v and frame together
/// rotates the result the same way, which keeps grid parameterizations
/// rigid-motion equivariant.
Vec3 perpendicular_from_frame(const Vec3& v, const Mat3& frame);

/// Frobenius norm of R^T R - I.
double orthonormality_error(const Mat3& r);

bool is_rotation(const Mat3& r, double tol = kFrameTol);

/// Nearest rotation matrix in the Frobenius sense (polar factor).
Mat3 project_to_rotation(const Mat3& m);

}  // namespace dubins3d
