#pragma once

#include <functional>
#include <optional>

#include "dubins3d/dubins2d.hpp"
#include "dubins3d/rmf.hpp"
#include "dubins3d/sphere_dubins.hpp"

namespace oracles {

using dubins3d::Configuration;
using dubins3d::CurvaturePair;
using dubins3d::PlanarConfig;
using dubins3d::SphericalConfig;
using dubins3d::SphericalPathParams;
using dubins3d::Vec3;

/// 4th-order Runge-Kutta integration of the frame kinematics over one
/// constant-curvature segment.
Configuration rk4_segment(const Configuration& start, const CurvaturePair& curv, double arc_length,
                          int steps);

/// Planar Dubins length by dense scanning over the switch structure plus
/// local refinement; independent of the tangent-circle constructions.
double planar_dubins_oracle(const PlanarConfig& start, const PlanarConfig& goal, double radius);

/// On-sphere shortest length by dense grids over the candidate-family arc
/// angles with derivative-free feasibility refinement and length descent.
std::optional<double> spherical_grid_oracle(const SphericalConfig& start, const SphericalConfig& goal,
                                            const SphericalPathParams& params);

/// Richardson-extrapolated chord-sum length of the curve s -> position(s),
/// s in [0, total], with base_n chords at the coarsest level.
double richardson_arc_length(const std::function<Vec3(double)>& position, double total, int base_n);

}  // namespace oracles
