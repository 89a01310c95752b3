#include "dubins3d/geom.hpp"

#include <cmath>
#include <stdexcept>

namespace dubins3d {

double wrap_pi(double angle) {
  double w = std::fmod(angle + kPi, kTwoPi);
  if (w <= 0.0) w += kTwoPi;
  return w - kPi;
}

double wrap_two_pi(double angle) {
  double w = std::fmod(angle, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

Mat3 rot_x(double a) {
  double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << 1, 0, 0,
       0, c, -s,
       0, s, c;
  return m;
}

Mat3 rot_y(double a) {
  double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << c, 0, s,
       0, 1, 0,
       -s, 0, c;
  return m;
}

Mat3 rot_z(double a) {
  double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return m;
}

Mat3 euler_to_frame(const EulerZYX& angles) {
  return rot_z(angles.yaw) * rot_y(-angles.pitch) * rot_x(angles.roll);
}

EulerZYX frame_to_euler(const Mat3& frame) {
  Vec3 t = frame.col(0);
  double tz = std::clamp(t.z(), -1.0, 1.0);
  EulerZYX e;
  e.pitch = std::asin(tz);
  e.yaw = std::atan2(t.y(), t.x());
  e.roll = std::atan2(frame(2, 1), frame(2, 2));
  return e;
}

Mat3 axis_angle_exp(const Vec3& axis, double angle) {
  if (std::abs(axis.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("axis_angle_exp: axis must be unit length");
  Mat3 k;
  k << 0, -axis.z(), axis.y(),
       axis.z(), 0, -axis.x(),
       -axis.y(), axis.x(), 0;
  return Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * (k * k);
}

Vec3 orthonormal_complement(const Vec3& v) {
  Vec3 seed = Vec3::UnitX();
  if (std::abs(v.dot(seed)) > 0.9) seed = Vec3::UnitY();
  Vec3 w = seed - v.dot(seed) * v;
  return w.normalized();
}

Vec3 perpendicular_from_frame(const Vec3& v, const Mat3& frame) {
  for (int i = 0; i < 3; ++i) {
    Vec3 seed = frame.col(i);
    if (std::abs(v.dot(seed)) <= 0.9) {
      Vec3 w = seed - v.dot(seed) * v;
      return w.normalized();
    }
  }
  // An orthonormal frame cannot have all three columns within 26 degrees of v.
  return orthonormal_complement(v);
}

double orthonormality_error(const Mat3& r) {
  return (r.transpose() * r - Mat3::Identity()).norm();
}

bool is_rotation(const Mat3& r, double tol) {
  return orthonormality_error(r) <= tol && std::abs(r.determinant() - 1.0) <= tol;
}

Mat3 project_to_rotation(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) {
    Mat3 flip = Mat3::Identity();
    flip(2, 2) = -1.0;
    r = svd.matrixU() * flip * svd.matrixV().transpose();
  }
  return r;
}

}  // namespace dubins3d
