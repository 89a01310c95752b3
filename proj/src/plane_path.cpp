#include "dubins3d/plane_path.hpp"

#include <cmath>
#include <stdexcept>

#include "surface_detail.hpp"

namespace dubins3d {

std::optional<CrossTangentGeometry> make_cross_tangent_geometry(const Vec3& r_i, const Vec3& r_f,
                                                                double radius, const Mat3& seed_frame) {
  double d = (r_f - r_i).norm();
  if (d < 2.0 * radius - 1e-9) return std::nullopt;
  CrossTangentGeometry geom;
  geom.r_i = r_i;
  geom.r_f = r_f;
  geom.radius = radius;
  Vec3 k = (r_f - r_i) / d;
  geom.alpha = std::acos(std::clamp(2.0 * radius / d, -1.0, 1.0));
  geom.locus_center_initial = r_i + radius * std::cos(geom.alpha) * k;
  geom.locus_center_final = r_f - radius * std::cos(geom.alpha) * k;
  geom.x_axis = perpendicular_from_frame(k, seed_frame);
  geom.y_axis = k.cross(geom.x_axis);
  return geom;
}

PlaneBoundaryConfigs cross_tangent_configs(const CrossTangentGeometry& geom, double theta,
                                           double phi_ic, double phi_oc) {
  Vec3 w = std::cos(theta) * geom.x_axis + std::sin(theta) * geom.y_axis;
  double rs = geom.radius * std::sin(geom.alpha);

  PlaneBoundaryConfigs out;
  out.x_ic = geom.locus_center_initial + rs * w;
  out.x_oc = geom.locus_center_final - rs * w;
  out.surface_normal = (out.x_ic - geom.r_i) / geom.radius;

  Vec3 chord = out.x_oc - out.x_ic;
  double chord_len = chord.norm();
  // at exact sphere tangency the entry and exit coincide; any in-plane
  // direction works as the heading reference
  out.plane_tangent = chord_len > 1e-9 ? Vec3(chord / chord_len) : w;
  out.plane_binormal = out.surface_normal.cross(out.plane_tangent);
  out.t_ic = std::cos(phi_ic) * out.plane_tangent + std::sin(phi_ic) * out.plane_binormal;
  out.t_oc = std::cos(phi_oc) * out.plane_tangent + std::sin(phi_oc) * out.plane_binormal;
  return out;
}

ClassOutcome best_plane_path(const Configuration& start, const Configuration& goal,
                             SphereSide start_side, const VehicleParams& params,
                             const SurfaceGridOptions& options) {
  params.validate();
  if (options.theta_disc < 2 || options.phi_disc < 2)
    throw std::invalid_argument("best_plane_path: need at least 2 grid points per angle");
  if (options.step <= 0.0) throw std::invalid_argument("best_plane_path: step must be positive");

  SphereSide goal_side = opposite_side(start_side);
  std::string label = std::string("pl_") + side_name(start_side) + "_" + side_name(goal_side);
  SphericalPathParams sp = sphere_params_for(start_side, params);
  if (!spherical_radius_supported(sp)) return {std::nullopt, "unsupported-sphere-turn-radius"};

  Vec3 r_i = tangent_sphere_center(start, start_side, params);
  Vec3 r_f = tangent_sphere_center(goal, goal_side, params);
  auto geom = make_cross_tangent_geometry(r_i, r_f, sp.sphere_radius, start.frame);
  if (!geom) return {std::nullopt, "spheres-overlap"};

  double r_plane = is_pitch_side(start_side) ? params.r_yaw : params.r_pitch;
  SphericalConfig start_sp = on_sphere_config(start, r_i);
  SphericalConfig goal_sp = on_sphere_config(goal, r_f);

  const int n = options.theta_disc;
  const int m = options.phi_disc;
  std::vector<double> thetas = detail::periodic_grid(n, kTwoPi);
  std::vector<double> phis = detail::linspace(-kPi / 2.0, kPi / 2.0, m);

  auto entry_length = [&](double theta, double phi) {
    PlaneBoundaryConfigs bc = cross_tangent_configs(*geom, theta, phi, 0.0);
    auto path = solve_spherical_dubins(start_sp, {bc.x_ic - r_i, bc.t_ic}, sp);
    return path ? path->length : detail::kInf;
  };
  auto exit_length = [&](double theta, double phi) {
    PlaneBoundaryConfigs bc = cross_tangent_configs(*geom, theta, 0.0, phi);
    auto path = solve_spherical_dubins({bc.x_oc - r_f, bc.t_oc}, goal_sp, sp);
    return path ? path->length : detail::kInf;
  };
  auto plane_length = [&](double theta, double phi_ic, double phi_oc) {
    PlaneBoundaryConfigs bc = cross_tangent_configs(*geom, theta, phi_ic, phi_oc);
    double span = (bc.x_oc - bc.x_ic).norm();
    return solve_planar_dubins({0.0, 0.0, phi_ic}, {span, 0.0, phi_oc}, r_plane).total_length;
  };

  std::vector<double> entry(n * m), exit_tab(n * m), plane(n * m * m);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < m; ++k) {
      entry[j * m + k] = entry_length(thetas[j], phis[k]);
      exit_tab[j * m + k] = exit_length(thetas[j], phis[k]);
    }
  for (int j = 0; j < n; ++j)
    for (int k1 = 0; k1 < m; ++k1)
      for (int k2 = 0; k2 < m; ++k2)
        plane[(j * m + k1) * m + k2] = plane_length(thetas[j], phis[k1], phis[k2]);

  double best = detail::kInf;
  int bj = -1, bk_ic = -1, bk_oc = -1;
  for (int j = 0; j < n; ++j)
    for (int k_ic = 0; k_ic < m; ++k_ic) {
      double head = entry[j * m + k_ic];
      if (!(head < detail::kInf)) continue;
      for (int k_oc = 0; k_oc < m; ++k_oc) {
        double total = head + plane[(j * m + k_ic) * m + k_oc] + exit_tab[j * m + k_oc];
        if (total < best) {
          best = total;
          bj = j;
          bk_ic = k_ic;
          bk_oc = k_oc;
        }
      }
    }
  if (bj < 0) return {std::nullopt, "no-feasible-grid-point"};

  double theta = thetas[bj], phi_ic = phis[bk_ic], phi_oc = phis[bk_oc];

  if (options.refine) {
    auto total_at = [&](double th, double p1, double p2) {
      return entry_length(th, p1) + plane_length(th, p1, p2) + exit_length(th, p2);
    };
    double dt = kTwoPi / n;
    double dp = kPi / (m - 1);
    theta = detail::golden_section([&](double x) { return total_at(x, phi_ic, phi_oc); },
                                   theta - dt, theta + dt);
    phi_ic = detail::golden_section([&](double x) { return total_at(theta, x, phi_oc); },
                                    std::max(-kPi / 2.0, phi_ic - dp), std::min(kPi / 2.0, phi_ic + dp));
    phi_oc = detail::golden_section([&](double x) { return total_at(theta, phi_ic, x); },
                                    std::max(-kPi / 2.0, phi_oc - dp), std::min(kPi / 2.0, phi_oc + dp));
    theta = wrap_two_pi(theta);
  }

  PlaneBoundaryConfigs bc = cross_tangent_configs(*geom, theta, phi_ic, phi_oc);
  auto entry_path = solve_spherical_dubins(start_sp, {bc.x_ic - r_i, bc.t_ic}, sp);
  auto exit_path = solve_spherical_dubins({bc.x_oc - r_f, bc.t_oc}, goal_sp, sp);
  if (!entry_path || !exit_path) return {std::nullopt, "no-feasible-grid-point"};

  double span = (bc.x_oc - bc.x_ic).norm();
  PlanarDubinsPath planar = solve_planar_dubins({0.0, 0.0, phi_ic}, {span, 0.0, phi_oc}, r_plane);

  // lift the plane portion: constant surface normal, frame axes from the
  // sphere pairing at the start
  int dp_delta = pitch_delta(start_side);
  int dy_delta = yaw_delta(start_side);
  Trajectory plane_traj;
  for (const PlanarSample& ps : sample_planar_path(planar, {0.0, 0.0, phi_ic}, options.step)) {
    TrajectorySample sample;
    sample.s = ps.s;
    sample.segment = ps.segment;
    sample.config.position = bc.x_ic + ps.config.u * bc.plane_tangent + ps.config.v * bc.plane_binormal;
    Vec3 t = std::cos(ps.config.psi) * bc.plane_tangent + std::sin(ps.config.psi) * bc.plane_binormal;
    Mat3 body;
    if (dp_delta != 0) {
      Vec3 u = -dp_delta * bc.surface_normal;
      body.col(0) = t;
      body.col(1) = u.cross(t);
      body.col(2) = u;
      sample.curvature = {-dp_delta * ps.curvature, 0.0};
    } else {
      Vec3 y = -dy_delta * bc.surface_normal;
      body.col(0) = t;
      body.col(1) = y;
      body.col(2) = t.cross(y);
      sample.curvature = {0.0, dy_delta * ps.curvature};
    }
    sample.config.frame = body;
    plane_traj.samples.push_back(sample);
  }

  Trajectory traj = lift_spherical_path(*entry_path, r_i, start_side, options.step, params);
  traj.extend(plane_traj);
  traj.extend(lift_spherical_path(*exit_path, r_f, goal_side, options.step, params));

  CandidatePath result;
  result.class_label = label;
  result.parameters = {{"theta", theta}, {"phi_ic", phi_ic}, {"phi_oc", phi_oc}};
  result.total_length = entry_path->length + planar.total_length + exit_path->length;
  result.trajectory = std::move(traj);
  return {result, ""};
}

}  // namespace dubins3d
