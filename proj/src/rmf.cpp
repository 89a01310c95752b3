#include "dubins3d/rmf.hpp"

#include <cmath>
#include <stdexcept>

namespace dubins3d {

namespace {
constexpr double kCurvSlack = 1e-12;   // slack on the curvature bounds
constexpr double kStraightK = 1e-10;   // below this, treat as a straight segment
}  // namespace

void VehicleParams::validate() const {
  if (!(r_pitch > 0.0) || !std::isfinite(r_pitch) || !(r_yaw > 0.0) || !std::isfinite(r_yaw))
    throw std::invalid_argument("VehicleParams: radii must be positive and finite");
}

MotionPrimitive motion_primitive(PrimitiveLabel label, const VehicleParams& params) {
  double g = params.max_kappa_g();
  double n = params.max_kappa_n();
  switch (label) {
    case PrimitiveLabel::LeftInner: return {label, {g, n}};
    case PrimitiveLabel::RightInner: return {label, {-g, n}};
    case PrimitiveLabel::LeftOuter: return {label, {g, -n}};
    case PrimitiveLabel::RightOuter: return {label, {-g, -n}};
    case PrimitiveLabel::PitchUp: return {label, {0.0, n}};
    case PrimitiveLabel::PitchDown: return {label, {0.0, -n}};
    case PrimitiveLabel::LeftFlat: return {label, {g, 0.0}};
    case PrimitiveLabel::RightFlat: return {label, {-g, 0.0}};
    case PrimitiveLabel::Straight: return {label, {0.0, 0.0}};
  }
  throw std::invalid_argument("motion_primitive: unknown label");
}

std::array<MotionPrimitive, 9> all_motion_primitives(const VehicleParams& params) {
  using L = PrimitiveLabel;
  return {motion_primitive(L::LeftInner, params),  motion_primitive(L::RightInner, params),
          motion_primitive(L::LeftOuter, params),  motion_primitive(L::RightOuter, params),
          motion_primitive(L::PitchUp, params),    motion_primitive(L::PitchDown, params),
          motion_primitive(L::LeftFlat, params),   motion_primitive(L::RightFlat, params),
          motion_primitive(L::Straight, params)};
}

int pitch_delta(SphereSide side) {
  switch (side) {
    case SphereSide::Inner: return 1;
    case SphereSide::Outer: return -1;
    default: return 0;
  }
}

int yaw_delta(SphereSide side) {
  switch (side) {
    case SphereSide::Left: return 1;
    case SphereSide::Right: return -1;
    default: return 0;
  }
}

bool is_pitch_side(SphereSide side) {
  return side == SphereSide::Inner || side == SphereSide::Outer;
}

double sphere_radius(SphereSide side, const VehicleParams& params) {
  return is_pitch_side(side) ? params.r_pitch : params.r_yaw;
}

const char* side_name(SphereSide side) {
  switch (side) {
    case SphereSide::Inner: return "inner";
    case SphereSide::Outer: return "outer";
    case SphereSide::Left: return "left";
    case SphereSide::Right: return "right";
  }
  return "?";
}

SphereSide sphere_side_from_deltas(int delta_pitch, int delta_yaw) {
  if (delta_pitch == 1 && delta_yaw == 0) return SphereSide::Inner;
  if (delta_pitch == -1 && delta_yaw == 0) return SphereSide::Outer;
  if (delta_pitch == 0 && delta_yaw == 1) return SphereSide::Left;
  if (delta_pitch == 0 && delta_yaw == -1) return SphereSide::Right;
  throw std::invalid_argument("sphere selection: exactly one of the pitch/yaw selectors must be +/-1");
}

void Trajectory::extend(const Trajectory& tail) {
  if (tail.samples.empty()) return;
  if (samples.empty()) {
    samples = tail.samples;
    return;
  }
  double s0 = samples.back().s;
  int seg0 = samples.back().segment + 1;
  bool first = true;
  for (const TrajectorySample& t : tail.samples) {
    if (first) {
      first = false;
      if (t.s < 1e-12) continue;  // duplicated junction sample
    }
    TrajectorySample shifted = t;
    shifted.s += s0;
    shifted.segment += seg0;
    samples.push_back(shifted);
  }
}

Pose segment_transform(const CurvaturePair& curv, double arc_length, const VehicleParams& params) {
  if (arc_length < 0.0) throw std::invalid_argument("segment_transform: negative arc length");
  params.validate();
  if (std::abs(curv.kappa_g) > params.max_kappa_g() + kCurvSlack ||
      std::abs(curv.kappa_n) > params.max_kappa_n() + kCurvSlack)
    throw std::invalid_argument("segment_transform: curvature exceeds vehicle bounds");

  double k2 = curv.kappa_g * curv.kappa_g + curv.kappa_n * curv.kappa_n;
  double k = std::sqrt(k2);
  if (k < kStraightK) return {Mat3::Identity(), Vec3(arc_length, 0.0, 0.0)};

  double phi = arc_length * k;
  Vec3 axis(0.0, -curv.kappa_n / k, curv.kappa_g / k);
  Mat3 rot = axis_angle_exp(axis, phi);
  Vec3 trans(std::sin(phi) / k,
             curv.kappa_g * (1.0 - std::cos(phi)) / k2,
             curv.kappa_n * (1.0 - std::cos(phi)) / k2);
  return {rot, trans};
}

Vec3 tangent_sphere_center(const Configuration& config, SphereSide side, const VehicleParams& params) {
  params.validate();
  return config.position + pitch_delta(side) * params.r_pitch * config.normal() +
         yaw_delta(side) * params.r_yaw * config.lateral();
}

double segment_turn_radius(const CurvaturePair& curv) {
  return 1.0 / std::hypot(curv.kappa_g, curv.kappa_n);
}

double verify_sphere_membership(const CurvaturePair& curv, const VehicleParams& params, int n_samples) {
  params.validate();
  if (n_samples < 2) throw std::invalid_argument("verify_sphere_membership: need at least 2 samples");
  bool pitch_saturated = std::abs(std::abs(curv.kappa_n) - params.max_kappa_n()) <= 1e-9 * params.max_kappa_n();
  bool yaw_saturated = std::abs(std::abs(curv.kappa_g) - params.max_kappa_g()) <= 1e-9 * params.max_kappa_g();
  if (!pitch_saturated && !yaw_saturated)
    throw std::invalid_argument("verify_sphere_membership: neither curvature is saturated");

  double k = std::hypot(curv.kappa_g, curv.kappa_n);
  double max_dev = 0.0;
  auto check_sphere = [&](const Vec3& center, double radius) {
    for (int i = 0; i <= n_samples; ++i) {
      double phi = kTwoPi * i / n_samples;
      Pose h = segment_transform(curv, phi / k, params);
      double dev = std::abs((h.translation - center).norm() - radius);
      max_dev = std::max(max_dev, dev);
    }
  };
  if (pitch_saturated) {
    double sign = curv.kappa_n > 0.0 ? 1.0 : -1.0;
    check_sphere(Vec3(0.0, 0.0, sign * params.r_pitch), params.r_pitch);
  }
  if (yaw_saturated) {
    double sign = curv.kappa_g > 0.0 ? 1.0 : -1.0;
    check_sphere(Vec3(0.0, sign * params.r_yaw, 0.0), params.r_yaw);
  }
  return max_dev;
}

Trajectory sample_segment(const Configuration& start, const CurvaturePair& curv, double arc_length,
                          double step, const VehicleParams& params) {
  if (step <= 0.0) throw std::invalid_argument("sample_segment: step must be positive");
  if (arc_length < 0.0) throw std::invalid_argument("sample_segment: negative arc length");

  Trajectory traj;
  Pose start_pose = start.pose();
  auto push = [&](double s) {
    Pose h = segment_transform(curv, s, params);
    TrajectorySample sample;
    sample.s = s;
    sample.config = Configuration::from_pose(start_pose * h);
    sample.curvature = curv;
    sample.segment = 0;
    traj.samples.push_back(sample);
  };

  push(0.0);
  for (double s = step; s < arc_length - 1e-12; s += step) push(s);
  if (arc_length > 0.0) push(arc_length);
  return traj;
}

double default_step(const VehicleParams& params) {
  return std::min(params.r_pitch, params.r_yaw) / 50.0;
}

}  // namespace dubins3d
