#include "dubins3d/sphere_envelope_path.hpp"

#include <cmath>
#include <stdexcept>

#include "surface_detail.hpp"

namespace dubins3d {

std::optional<IntermediarySphereGeometry> make_intermediary_sphere_geometry(const Vec3& r_i,
                                                                            const Vec3& r_f,
                                                                            double radius,
                                                                            const Mat3& seed_frame) {
  double d = (r_f - r_i).norm();
  if (d > 4.0 * radius + 1e-9) return std::nullopt;
  IntermediarySphereGeometry geom;
  geom.r_i = r_i;
  geom.r_f = r_f;
  geom.radius = radius;
  geom.alpha = std::acos(std::clamp(d / (4.0 * radius), 0.0, 1.0));
  // coincident centers leave the locus plane free; orient it from the start tangent
  geom.axis = d > 1e-12 ? Vec3((r_f - r_i) / d) : Vec3(seed_frame.col(0));
  geom.locus_center = 0.5 * (r_i + r_f);
  geom.locus_radius = 2.0 * radius * std::sin(geom.alpha);
  geom.x_axis = perpendicular_from_frame(geom.axis, seed_frame);
  geom.y_axis = geom.axis.cross(geom.x_axis);
  return geom;
}

EnvelopeBoundaryConfigs intermediary_sphere_configs(const IntermediarySphereGeometry& geom,
                                                    double theta, double phi_ic, double phi_oc) {
  Vec3 w = std::cos(theta) * geom.x_axis + std::sin(theta) * geom.y_axis;
  EnvelopeBoundaryConfigs out;
  out.center = geom.locus_center + geom.locus_radius * w;
  out.x_ic = 0.5 * (geom.r_i + out.center);
  out.x_oc = 0.5 * (geom.r_f + out.center);

  double ca = std::cos(geom.alpha), sa = std::sin(geom.alpha);
  // tangent-plane reference directions at the tangency points; closed form of
  // the Gram-Schmidt construction, regular for every alpha in [0, pi/2]
  Vec3 x_ic = sa * geom.axis - ca * w;
  Vec3 x_oc = -sa * geom.axis - ca * w;
  out.t_ic = std::cos(phi_ic) * x_ic +
             std::sin(phi_ic) * ((out.x_ic - geom.r_i).cross(x_ic) / geom.radius);
  out.t_oc = std::cos(phi_oc) * x_oc +
             std::sin(phi_oc) * ((out.x_oc - geom.r_f).cross(x_oc) / geom.radius);
  return out;
}

ClassOutcome best_sphere_envelope_path(const Configuration& start, const Configuration& goal,
                                       SphereSide side, const VehicleParams& params,
                                       const SurfaceGridOptions& options) {
  params.validate();
  if (options.theta_disc < 2 || options.phi_disc < 2)
    throw std::invalid_argument("best_sphere_envelope_path: need at least 2 grid points per angle");
  if (options.step <= 0.0)
    throw std::invalid_argument("best_sphere_envelope_path: step must be positive");

  std::string label = std::string("sphere_") + side_name(side);
  SphereSide mid_side = opposite_side(side);
  SphericalPathParams sp = sphere_params_for(side, params);
  if (!spherical_radius_supported(sp)) return {std::nullopt, "unsupported-sphere-turn-radius"};

  Vec3 r_i = tangent_sphere_center(start, side, params);
  Vec3 r_f = tangent_sphere_center(goal, side, params);
  auto geom = make_intermediary_sphere_geometry(r_i, r_f, sp.sphere_radius, start.frame);
  if (!geom) return {std::nullopt, "spheres-too-far"};

  SphericalConfig start_sp = on_sphere_config(start, r_i);
  SphericalConfig goal_sp = on_sphere_config(goal, r_f);

  const int n = options.theta_disc;
  const int m = options.phi_disc;
  std::vector<double> thetas = detail::periodic_grid(n, kTwoPi);
  std::vector<double> phis = detail::periodic_grid(m, kTwoPi);

  auto entry_length = [&](double theta, double phi) {
    EnvelopeBoundaryConfigs bc = intermediary_sphere_configs(*geom, theta, phi, 0.0);
    auto path = solve_spherical_dubins(start_sp, {bc.x_ic - r_i, bc.t_ic}, sp);
    return path ? path->length : detail::kInf;
  };
  auto exit_length = [&](double theta, double phi) {
    EnvelopeBoundaryConfigs bc = intermediary_sphere_configs(*geom, theta, 0.0, phi);
    auto path = solve_spherical_dubins({bc.x_oc - r_f, bc.t_oc}, goal_sp, sp);
    return path ? path->length : detail::kInf;
  };
  auto mid_length = [&](double theta, double phi_ic, double phi_oc) {
    EnvelopeBoundaryConfigs bc = intermediary_sphere_configs(*geom, theta, phi_ic, phi_oc);
    auto path =
        solve_spherical_dubins({bc.x_ic - bc.center, bc.t_ic}, {bc.x_oc - bc.center, bc.t_oc}, sp);
    return path ? path->length : detail::kInf;
  };

  std::vector<double> entry(n * m), exit_tab(n * m), mid(n * m * m);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < m; ++k) {
      entry[j * m + k] = entry_length(thetas[j], phis[k]);
      exit_tab[j * m + k] = exit_length(thetas[j], phis[k]);
    }
  for (int j = 0; j < n; ++j)
    for (int k1 = 0; k1 < m; ++k1)
      for (int k2 = 0; k2 < m; ++k2)
        mid[(j * m + k1) * m + k2] = mid_length(thetas[j], phis[k1], phis[k2]);

  double best = detail::kInf;
  int bj = -1, bk_ic = -1, bk_oc = -1;
  for (int j = 0; j < n; ++j)
    for (int k_ic = 0; k_ic < m; ++k_ic) {
      double head = entry[j * m + k_ic];
      if (!(head < detail::kInf)) continue;
      for (int k_oc = 0; k_oc < m; ++k_oc) {
        double total = head + mid[(j * m + k_ic) * m + k_oc] + exit_tab[j * m + k_oc];
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
      return entry_length(th, p1) + mid_length(th, p1, p2) + exit_length(th, p2);
    };
    double dt = kTwoPi / n;
    double dp = kTwoPi / m;
    theta = detail::golden_section([&](double x) { return total_at(x, phi_ic, phi_oc); },
                                   theta - dt, theta + dt);
    phi_ic = detail::golden_section([&](double x) { return total_at(theta, x, phi_oc); },
                                    phi_ic - dp, phi_ic + dp);
    phi_oc = detail::golden_section([&](double x) { return total_at(theta, phi_ic, x); },
                                    phi_oc - dp, phi_oc + dp);
    theta = wrap_two_pi(theta);
    phi_ic = wrap_two_pi(phi_ic);
    phi_oc = wrap_two_pi(phi_oc);
  }

  EnvelopeBoundaryConfigs bc = intermediary_sphere_configs(*geom, theta, phi_ic, phi_oc);
  auto entry_path = solve_spherical_dubins(start_sp, {bc.x_ic - r_i, bc.t_ic}, sp);
  auto mid_path =
      solve_spherical_dubins({bc.x_ic - bc.center, bc.t_ic}, {bc.x_oc - bc.center, bc.t_oc}, sp);
  auto exit_path = solve_spherical_dubins({bc.x_oc - r_f, bc.t_oc}, goal_sp, sp);
  if (!entry_path || !mid_path || !exit_path) return {std::nullopt, "no-feasible-grid-point"};

  Trajectory traj = lift_spherical_path(*entry_path, r_i, side, options.step, params);
  traj.extend(lift_spherical_path(*mid_path, bc.center, mid_side, options.step, params));
  traj.extend(lift_spherical_path(*exit_path, r_f, side, options.step, params));

  CandidatePath result;
  result.class_label = label;
  result.parameters = {{"theta", theta}, {"phi_ic", phi_ic}, {"phi_oc", phi_oc}};
  result.total_length = entry_path->length + mid_path->length + exit_path->length;
  result.trajectory = std::move(traj);
  return {result, ""};
}

}  // namespace dubins3d
