#pragma once

#include <array>
#include <vector>

#include "dubins3d/geom.hpp"

namespace dubins3d {

/// In-plane configuration. psi is the heading from the +u axis, in (-pi, pi].
struct PlanarConfig {
  double u = 0.0;
  double v = 0.0;
  double psi = 0.0;
};

enum class PlanarWord { LSL, LSR, RSL, RSR, LRL, RLR };
const char* planar_word_name(PlanarWord w);

/// Shortest-path result; degenerate paths are words with zero-length segments.
struct PlanarDubinsPath {
  PlanarWord word = PlanarWord::LSL;
  std::array<double, 3> segment_lengths{};  // meters, each >= 0
  double radius = 0.0;
  double total_length = 0.0;
};

/// Minimum-length planar Dubins path over the six candidate words. Ties
/// resolve in word order LSL < LSR < RSL < RSR < LRL < RLR. Always succeeds.
PlanarDubinsPath solve_planar_dubins(const PlanarConfig& start, const PlanarConfig& goal, double radius);

struct PlanarSample {
  double s = 0.0;
  PlanarConfig config;
  double curvature = 0.0;  // -1/r, 0 or +1/r
  int segment = 0;
};

/// Arc-length ordered samples including both endpoints. Throws for step <= 0.
std::vector<PlanarSample> sample_planar_path(const PlanarDubinsPath& path, const PlanarConfig& start,
                                             double step);

/// Endpoint reached by forward-simulating the path segments from `start`.
PlanarConfig planar_path_endpoint(const PlanarDubinsPath& path, const PlanarConfig& start);

}  // namespace dubins3d
