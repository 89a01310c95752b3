#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dubins3d/geom.hpp"

using namespace dubins3d;

namespace {

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v(n(rng), n(rng), n(rng));
  while (v.norm() < 1e-6) v = Vec3(n(rng), n(rng), n(rng));
  return v.normalized();
}

}  // namespace

TEST_CASE("euler_to_frame basics") {
  CHECK((euler_to_frame({0, 0, 0}) - Mat3::Identity()).norm() == doctest::Approx(0.0).epsilon(1e-12));

  Mat3 quarter = euler_to_frame({kPi / 2.0, 0, 0});
  CHECK((quarter.col(0) - Vec3(0, 1, 0)).norm() < 1e-12);
  CHECK((quarter.col(1) - Vec3(-1, 0, 0)).norm() < 1e-12);
  CHECK((quarter.col(2) - Vec3(0, 0, 1)).norm() < 1e-12);
}

TEST_CASE("euler_to_frame matches elementary-rotation composition") {
  double yaw = 30.0 * kPi / 180.0, pitch = 10.0 * kPi / 180.0, roll = 15.0 * kPi / 180.0;
  Mat3 frame = euler_to_frame({yaw, pitch, roll});

  // independent composition from scratch
  auto rz = [](double a) {
    Mat3 m;
    m << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
    return m;
  };
  auto ry = [](double a) {
    Mat3 m;
    m << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a);
    return m;
  };
  auto rx = [](double a) {
    Mat3 m;
    m << 1, 0, 0, 0, std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a);
    return m;
  };
  Mat3 expected = rz(yaw) * ry(-pitch) * rx(roll);
  CHECK((frame - expected).norm() < 1e-12);
  // positive pitch tips the nose up
  CHECK(frame.col(0).z() == doctest::Approx(std::sin(pitch)).epsilon(1e-12));
}

TEST_CASE("euler round trip away from gimbal lock") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> yaw(-kPi, kPi), pitch(-1.4, 1.4), roll(-kPi, kPi);
  for (int i = 0; i < 200; ++i) {
    EulerZYX e{yaw(rng), pitch(rng), roll(rng)};
    Mat3 frame = euler_to_frame(e);
    EulerZYX back = frame_to_euler(frame);
    CHECK((euler_to_frame(back) - frame).norm() < 1e-9);
  }
}

TEST_CASE("axis_angle_exp") {
  Mat3 r = axis_angle_exp(Vec3::UnitZ(), kPi / 2.0);
  CHECK((r * Vec3(1, 0, 0) - Vec3(0, 1, 0)).norm() < 1e-12);

  CHECK((axis_angle_exp(Vec3(0.6, 0.8, 0.0), 0.0) - Mat3::Identity()).norm() < 1e-15);

  // 2*pi/3 about (1,1,1)/sqrt(3) permutes the coordinate axes cyclically
  Mat3 p = axis_angle_exp(Vec3(1, 1, 1).normalized(), 2.0 * kPi / 3.0);
  Mat3 expected;
  expected << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  CHECK((p - expected).norm() < 1e-12);

  CHECK_THROWS_AS(axis_angle_exp(Vec3(1, 1, 0), 0.3), std::invalid_argument);
}

TEST_CASE("axis_angle_exp same-axis composition adds angles") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(-6.0, 6.0);
  for (int i = 0; i < 100; ++i) {
    Vec3 axis = random_unit(rng);
    double a = ang(rng), b = ang(rng);
    Mat3 lhs = axis_angle_exp(axis, a) * axis_angle_exp(axis, b);
    Mat3 rhs = axis_angle_exp(axis, a + b);
    CHECK((lhs - rhs).norm() < 1e-9);
    CHECK(is_rotation(lhs));
  }
}

TEST_CASE("orthonormal_complement") {
  CHECK((orthonormal_complement(Vec3(0, 0, 1)) - Vec3(1, 0, 0)).norm() < 1e-12);
  CHECK((orthonormal_complement(Vec3(1, 0, 0)) - Vec3(0, 1, 0)).norm() < 1e-12);

  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    Vec3 v = random_unit(rng);
    Vec3 w = orthonormal_complement(v);
    CHECK(std::abs(w.dot(v)) < 1e-12);
    CHECK(std::abs(w.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("perpendicular_from_frame rotates with the frame") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    Vec3 v = random_unit(rng);
    Mat3 frame = euler_to_frame({0.4, -0.2, 0.9});
    Vec3 w = perpendicular_from_frame(v, frame);
    CHECK(std::abs(w.dot(v)) < 1e-12);
    CHECK(std::abs(w.norm() - 1.0) < 1e-12);

    Mat3 rot = axis_angle_exp(random_unit(rng), 1.1);
    Vec3 w_rot = perpendicular_from_frame(rot * v, rot * frame);
    CHECK((w_rot - rot * w).norm() < 1e-9);
  }
}

TEST_CASE("wrap conventions") {
  CHECK(wrap_pi(kPi) == doctest::Approx(kPi));
  CHECK(wrap_pi(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_pi(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_two_pi(-0.1) == doctest::Approx(kTwoPi - 0.1));
}

TEST_CASE("project_to_rotation recovers a noisy frame") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> noise(-1e-6, 1e-6);
  Mat3 r = euler_to_frame({1.0, 0.5, -0.3});
  Mat3 noisy = r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) noisy(i, j) += noise(rng);
  Mat3 fixed = project_to_rotation(noisy);
  CHECK(is_rotation(fixed, 1e-12));
  CHECK((fixed - r).norm() < 1e-5);
}
