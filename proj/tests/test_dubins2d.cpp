#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dubins3d/dubins2d.hpp"
#include "oracles.hpp"

using namespace dubins3d;

namespace {

PlanarConfig random_config(std::mt19937_64& rng, double span) {
  std::uniform_real_distribution<double> pos(-span, span), ang(-kPi, kPi);
  return {pos(rng), pos(rng), ang(rng)};
}

}  // namespace

TEST_CASE("straight line instance") {
  PlanarDubinsPath path = solve_planar_dubins({0, 0, 0}, {10, 0, 0}, 1.0);
  CHECK(path.word == PlanarWord::LSL);
  CHECK(path.segment_lengths[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(path.segment_lengths[1] == doctest::Approx(10.0));
  CHECK(path.segment_lengths[2] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(path.total_length == doctest::Approx(10.0));
}

TEST_CASE("half circle instance") {
  PlanarDubinsPath path = solve_planar_dubins({0, 0, 0}, {0, 2.0, kPi}, 1.0);
  CHECK(path.total_length == doctest::Approx(kPi));
}

TEST_CASE("identical configurations give a zero path") {
  PlanarDubinsPath path = solve_planar_dubins({3, -2, 0.7}, {3, -2, 0.7}, 2.0);
  CHECK(path.total_length == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("solver matches the scanning oracle") {
  std::mt19937_64 rng(211);
  std::uniform_real_distribution<double> radius(0.5, 5.0);
  for (int i = 0; i < 40; ++i) {
    PlanarConfig start = random_config(rng, 10.0);
    PlanarConfig goal = random_config(rng, 10.0);
    double r = radius(rng);
    PlanarDubinsPath path = solve_planar_dubins(start, goal, r);
    double oracle = oracles::planar_dubins_oracle(start, goal, r);
    CHECK(path.total_length == doctest::Approx(oracle).epsilon(1e-4));
  }
}

TEST_CASE("forward simulation reaches the goal") {
  std::mt19937_64 rng(223);
  for (int i = 0; i < 300; ++i) {
    PlanarConfig start = random_config(rng, 20.0);
    PlanarConfig goal = random_config(rng, 20.0);
    PlanarDubinsPath path = solve_planar_dubins(start, goal, 2.0);
    PlanarConfig end = planar_path_endpoint(path, start);
    CHECK(std::hypot(end.u - goal.u, end.v - goal.v) < 1e-8);
    CHECK(std::abs(wrap_pi(end.psi - goal.psi)) < 1e-8);
    CHECK(path.total_length >= std::hypot(goal.u - start.u, goal.v - start.v) - 1e-9);
  }
}

TEST_CASE("reversal symmetry") {
  std::mt19937_64 rng(227);
  for (int i = 0; i < 100; ++i) {
    PlanarConfig start = random_config(rng, 15.0);
    PlanarConfig goal = random_config(rng, 15.0);
    double forward = solve_planar_dubins(start, goal, 1.5).total_length;
    PlanarConfig rs{goal.u, goal.v, wrap_pi(goal.psi + kPi)};
    PlanarConfig rg{start.u, start.v, wrap_pi(start.psi + kPi)};
    double backward = solve_planar_dubins(rs, rg, 1.5).total_length;
    CHECK(forward == doctest::Approx(backward).epsilon(1e-9));
  }
}

TEST_CASE("mirror symmetry swaps L and R") {
  std::mt19937_64 rng(229);
  for (int i = 0; i < 100; ++i) {
    PlanarConfig start = random_config(rng, 15.0);
    PlanarConfig goal = random_config(rng, 15.0);
    PlanarDubinsPath path = solve_planar_dubins(start, goal, 1.5);
    PlanarConfig ms{start.u, -start.v, wrap_pi(-start.psi)};
    PlanarConfig mg{goal.u, -goal.v, wrap_pi(-goal.psi)};
    PlanarDubinsPath mirrored = solve_planar_dubins(ms, mg, 1.5);
    CHECK(path.total_length == doctest::Approx(mirrored.total_length).epsilon(1e-9));
  }
}

TEST_CASE("sampling a pure arc") {
  PlanarDubinsPath path{PlanarWord::LSL, {kPi, 0.0, 0.0}, 1.0, kPi};
  auto samples = sample_planar_path(path, {0, 0, 0}, kPi / 3.0);
  REQUIRE(samples.size() == 4);
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(wrap_pi(samples[i].config.psi - i * kPi / 3.0)) < 1e-9);
}

TEST_CASE("sampling endpoints and errors") {
  PlanarDubinsPath zero = solve_planar_dubins({1, 1, 0.5}, {1, 1, 0.5}, 1.0);
  CHECK(sample_planar_path(zero, {1, 1, 0.5}, 0.1).size() == 1);
  CHECK_THROWS_AS(sample_planar_path(zero, {1, 1, 0.5}, 0.0), std::invalid_argument);

  std::mt19937_64 rng(233);
  for (int i = 0; i < 50; ++i) {
    PlanarConfig start = random_config(rng, 10.0);
    PlanarConfig goal = random_config(rng, 10.0);
    PlanarDubinsPath path = solve_planar_dubins(start, goal, 1.0);
    auto samples = sample_planar_path(path, start, 0.37);
    PlanarConfig end = planar_path_endpoint(path, start);
    CHECK(samples.back().s == doctest::Approx(path.total_length));
    CHECK(std::hypot(samples.back().config.u - end.u, samples.back().config.v - end.v) < 1e-9);
    for (size_t j = 1; j < samples.size(); ++j) CHECK(samples[j].s > samples[j - 1].s);
    for (const auto& s : samples) {
      bool valid = std::abs(s.curvature) < 1e-12 || std::abs(std::abs(s.curvature) - 1.0) < 1e-12;
      CHECK(valid);
    }
  }
}
