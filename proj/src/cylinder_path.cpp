#include "dubins3d/cylinder_path.hpp"

#include <cmath>
#include <stdexcept>

#include "surface_detail.hpp"

namespace dubins3d {

namespace {

double planar_turn_radius(SphereSide side, const VehicleParams& params) {
  // geodesic-curvature bound on the cylinder: the bound of the other control
  return is_pitch_side(side) ? params.r_yaw : params.r_pitch;
}

}  // namespace

SphereSide opposite_side(SphereSide side) {
  switch (side) {
    case SphereSide::Inner: return SphereSide::Outer;
    case SphereSide::Outer: return SphereSide::Inner;
    case SphereSide::Left: return SphereSide::Right;
    case SphereSide::Right: return SphereSide::Left;
  }
  return SphereSide::Inner;
}

CylinderGeometry make_cylinder_geometry(const Vec3& r_i, const Vec3& r_f, double radius,
                                        const Mat3& seed_frame) {
  double h = (r_f - r_i).norm();
  if (h < 1e-9) throw std::invalid_argument("cylinder geometry: sphere centers coincide");
  CylinderGeometry geom;
  geom.base_center = r_i;
  geom.axis = (r_f - r_i) / h;
  geom.height = h;
  geom.radius = radius;
  Vec3 x = perpendicular_from_frame(geom.axis, seed_frame);
  geom.body_frame.col(0) = x;
  geom.body_frame.col(1) = geom.axis.cross(x);
  geom.body_frame.col(2) = geom.axis;
  return geom;
}

CylinderBoundaryConfigs cylinder_boundary_configs(const CylinderGeometry& geom,
                                                  const CylinderBoundary& b) {
  auto point = [&](double theta, double height) {
    Vec3 local(geom.radius * std::cos(theta), geom.radius * std::sin(theta), height);
    return geom.body_frame * local + geom.base_center;
  };
  auto tangent = [&](double theta, double phi) {
    Vec3 local(-std::sin(theta) * std::cos(phi), std::cos(theta) * std::cos(phi), std::sin(phi));
    return geom.body_frame * local;
  };
  return {point(b.theta_ic, 0.0), tangent(b.theta_ic, b.phi_ic),
          point(b.theta_oc, geom.height), tangent(b.theta_oc, b.phi_oc)};
}

std::array<PlanarConfig, 2> unwrap_goal(const CylinderBoundary& b, const CylinderGeometry& geom) {
  double dtheta = wrap_pi(b.theta_oc - b.theta_ic);
  double theta1 = dtheta >= 0.0 ? dtheta : dtheta + kTwoPi;
  double theta2 = dtheta > 0.0 ? dtheta - kTwoPi : dtheta;
  return {PlanarConfig{geom.radius * theta1, geom.height, b.phi_oc},
          PlanarConfig{geom.radius * theta2, geom.height, b.phi_oc}};
}

Trajectory wrap_path(const std::vector<PlanarSample>& planar, const CylinderGeometry& geom,
                     const CylinderBoundary& b, SphereSide side, const VehicleParams& params) {
  if (planar.empty()) throw std::invalid_argument("wrap_path: empty planar path");
  if (std::abs(planar.front().config.u) > 1e-9 || std::abs(planar.front().config.v) > 1e-9)
    throw std::invalid_argument("wrap_path: planar path must start at the origin");
  params.validate();

  int dp = pitch_delta(side);
  int dy = yaw_delta(side);
  double radius = geom.radius;

  Trajectory traj;
  traj.samples.reserve(planar.size());
  for (const PlanarSample& ps : planar) {
    double theta = b.theta_ic + ps.config.u / radius;
    double psi = ps.config.psi;
    double ct = std::cos(theta), st = std::sin(theta);
    double cp = std::cos(psi), sp = std::sin(psi);

    Vec3 x_local(radius * ct, radius * st, ps.config.v);
    Vec3 t_local(-st * cp, ct * cp, sp);
    Vec3 radial(ct, st, 0.0);

    TrajectorySample sample;
    sample.s = ps.s;
    sample.segment = ps.segment;
    Mat3 body;
    if (dp != 0) {
      Vec3 u = -dp * radial;
      body.col(0) = t_local;
      body.col(1) = u.cross(t_local);
      body.col(2) = u;
      sample.curvature = {-dp * ps.curvature, dp * cp * cp / radius};
    } else {
      Vec3 y = -dy * radial;
      body.col(0) = t_local;
      body.col(1) = y;
      body.col(2) = t_local.cross(y);
      sample.curvature = {dy * cp * cp / radius, dy * ps.curvature};
    }
    sample.config.position = geom.body_frame * x_local + geom.base_center;
    sample.config.frame = geom.body_frame * body;
    traj.samples.push_back(sample);
  }
  return traj;
}

ClassOutcome best_cylinder_path(const Configuration& start, const Configuration& goal,
                                SphereSide side, const VehicleParams& params,
                                const SurfaceGridOptions& options) {
  params.validate();
  if (options.theta_disc < 2 || options.phi_disc < 2)
    throw std::invalid_argument("best_cylinder_path: need at least 2 grid points per angle");
  if (options.step <= 0.0) throw std::invalid_argument("best_cylinder_path: step must be positive");

  std::string label = std::string("cyc_") + side_name(side);
  SphericalPathParams sp = sphere_params_for(side, params);
  if (!spherical_radius_supported(sp)) return {std::nullopt, "unsupported-sphere-turn-radius"};

  Vec3 r_i = tangent_sphere_center(start, side, params);
  Vec3 r_f = tangent_sphere_center(goal, side, params);
  if ((r_f - r_i).norm() < 1e-9) {
    if (detail::configurations_coincide(start, goal))
      return {detail::trivial_path(label, start), ""};
    return {std::nullopt, "coincident-sphere-centers"};
  }

  CylinderGeometry geom = make_cylinder_geometry(r_i, r_f, sp.sphere_radius, start.frame);
  double r_plane = planar_turn_radius(side, params);
  SphericalConfig start_sp = on_sphere_config(start, r_i);
  SphericalConfig goal_sp = on_sphere_config(goal, r_f);

  const int n = options.theta_disc;
  const int m = options.phi_disc;
  std::vector<double> thetas = detail::periodic_grid(n, kTwoPi);
  std::vector<double> phis = detail::linspace(0.0, kPi, m);

  auto entry_length = [&](double theta, double phi) {
    CylinderBoundaryConfigs bc = cylinder_boundary_configs(geom, {theta, phi, 0.0, 0.0});
    auto path = solve_spherical_dubins(start_sp, {bc.x_ic - r_i, bc.t_ic}, sp);
    return path ? path->length : detail::kInf;
  };
  auto exit_length = [&](double theta, double phi) {
    CylinderBoundaryConfigs bc = cylinder_boundary_configs(geom, {0.0, 0.0, theta, phi});
    auto path = solve_spherical_dubins({bc.x_oc - r_f, bc.t_oc}, goal_sp, sp);
    return path ? path->length : detail::kInf;
  };
  auto cylinder_length = [&](double theta_ic, double phi_ic, double theta_oc, double phi_oc) {
    std::array<PlanarConfig, 2> images =
        unwrap_goal({theta_ic, phi_ic, theta_oc, phi_oc}, geom);
    PlanarConfig origin{0.0, 0.0, phi_ic};
    double best = detail::kInf;
    for (const PlanarConfig& img : images)
      best = std::min(best, solve_planar_dubins(origin, img, r_plane).total_length);
    return best;
  };

  std::vector<double> entry(n * m), exit_tab(n * m), cyl(n * m * m);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < m; ++k) {
      entry[j * m + k] = entry_length(thetas[j], phis[k]);
      exit_tab[j * m + k] = exit_length(thetas[j], phis[k]);
    }
  for (int dj = 0; dj < n; ++dj)
    for (int k1 = 0; k1 < m; ++k1)
      for (int k2 = 0; k2 < m; ++k2)
        cyl[(dj * m + k1) * m + k2] = cylinder_length(0.0, phis[k1], thetas[dj], phis[k2]);

  double best = detail::kInf;
  int bj_ic = -1, bk_ic = -1, bj_oc = -1, bk_oc = -1;
  for (int j_ic = 0; j_ic < n; ++j_ic)
    for (int k_ic = 0; k_ic < m; ++k_ic) {
      double head = entry[j_ic * m + k_ic];
      if (!(head < detail::kInf)) continue;
      for (int j_oc = 0; j_oc < n; ++j_oc) {
        int dj = (j_oc - j_ic + n) % n;
        for (int k_oc = 0; k_oc < m; ++k_oc) {
          double total = head + cyl[(dj * m + k_ic) * m + k_oc] + exit_tab[j_oc * m + k_oc];
          if (total < best) {
            best = total;
            bj_ic = j_ic;
            bk_ic = k_ic;
            bj_oc = j_oc;
            bk_oc = k_oc;
          }
        }
      }
    }
  if (bj_ic < 0) return {std::nullopt, "no-feasible-grid-point"};

  CylinderBoundary winner{thetas[bj_ic], phis[bk_ic], thetas[bj_oc], phis[bk_oc]};

  if (options.refine) {
    auto total_at = [&](const CylinderBoundary& cb) {
      return entry_length(cb.theta_ic, cb.phi_ic) +
             cylinder_length(cb.theta_ic, cb.phi_ic, cb.theta_oc, cb.phi_oc) +
             exit_length(cb.theta_oc, cb.phi_oc);
    };
    double dt = kTwoPi / n;
    double dp = kPi / (m - 1);
    winner.theta_ic = detail::golden_section(
        [&](double x) { CylinderBoundary cb = winner; cb.theta_ic = x; return total_at(cb); },
        winner.theta_ic - dt, winner.theta_ic + dt);
    winner.phi_ic = detail::golden_section(
        [&](double x) { CylinderBoundary cb = winner; cb.phi_ic = x; return total_at(cb); },
        std::max(0.0, winner.phi_ic - dp), std::min(kPi, winner.phi_ic + dp));
    winner.theta_oc = detail::golden_section(
        [&](double x) { CylinderBoundary cb = winner; cb.theta_oc = x; return total_at(cb); },
        winner.theta_oc - dt, winner.theta_oc + dt);
    winner.phi_oc = detail::golden_section(
        [&](double x) { CylinderBoundary cb = winner; cb.phi_oc = x; return total_at(cb); },
        std::max(0.0, winner.phi_oc - dp), std::min(kPi, winner.phi_oc + dp));
    winner.theta_ic = wrap_two_pi(winner.theta_ic);
    winner.theta_oc = wrap_two_pi(winner.theta_oc);
  }

  // reconstruct the winning candidate
  CylinderBoundaryConfigs bc = cylinder_boundary_configs(geom, winner);
  auto entry_path = solve_spherical_dubins(start_sp, {bc.x_ic - r_i, bc.t_ic}, sp);
  auto exit_path = solve_spherical_dubins({bc.x_oc - r_f, bc.t_oc}, goal_sp, sp);
  if (!entry_path || !exit_path) return {std::nullopt, "no-feasible-grid-point"};

  std::array<PlanarConfig, 2> images = unwrap_goal(winner, geom);
  PlanarConfig origin{0.0, 0.0, winner.phi_ic};
  PlanarDubinsPath planar_a = solve_planar_dubins(origin, images[0], r_plane);
  PlanarDubinsPath planar_b = solve_planar_dubins(origin, images[1], r_plane);
  const PlanarDubinsPath& planar =
      planar_b.total_length < planar_a.total_length ? planar_b : planar_a;

  Trajectory traj = lift_spherical_path(*entry_path, r_i, side, options.step, params);
  traj.extend(wrap_path(sample_planar_path(planar, origin, options.step), geom, winner, side, params));
  traj.extend(lift_spherical_path(*exit_path, r_f, side, options.step, params));

  CandidatePath result;
  result.class_label = label;
  result.parameters = {{"theta_ic", winner.theta_ic},
                       {"phi_ic", winner.phi_ic},
                       {"theta_oc", winner.theta_oc},
                       {"phi_oc", winner.phi_oc}};
  result.total_length = entry_path->length + planar.total_length + exit_path->length;
  result.trajectory = std::move(traj);
  return {result, ""};
}

}  // namespace dubins3d
