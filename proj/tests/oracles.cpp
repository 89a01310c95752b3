#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace oracles {

using dubins3d::kPi;
using dubins3d::kTwoPi;
using dubins3d::Mat3;
using dubins3d::wrap_pi;
using dubins3d::wrap_two_pi;

Configuration rk4_segment(const Configuration& start, const CurvaturePair& curv, double arc_length,
                          int steps) {
  using State = Eigen::Matrix<double, 12, 1>;
  auto pack = [](const Configuration& c) {
    State s;
    s.segment<3>(0) = c.position;
    s.segment<3>(3) = c.tangent();
    s.segment<3>(6) = c.lateral();
    s.segment<3>(9) = c.normal();
    return s;
  };
  auto deriv = [&](const State& s) {
    State d;
    Vec3 t = s.segment<3>(3), y = s.segment<3>(6), u = s.segment<3>(9);
    d.segment<3>(0) = t;
    d.segment<3>(3) = curv.kappa_g * y + curv.kappa_n * u;
    d.segment<3>(6) = -curv.kappa_g * t;
    d.segment<3>(9) = -curv.kappa_n * t;
    return d;
  };

  State s = pack(start);
  double h = arc_length / steps;
  for (int i = 0; i < steps; ++i) {
    State k1 = deriv(s);
    State k2 = deriv(s + 0.5 * h * k1);
    State k3 = deriv(s + 0.5 * h * k2);
    State k4 = deriv(s + h * k3);
    s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  Configuration out;
  out.position = s.segment<3>(0);
  out.frame.col(0) = s.segment<3>(3);
  out.frame.col(1) = s.segment<3>(6);
  out.frame.col(2) = s.segment<3>(9);
  return out;
}

namespace {

struct Planar2 {
  double x = 0.0, y = 0.0, psi = 0.0;
};

Planar2 advance(const Planar2& c, double curv, double len) {
  Planar2 out = c;
  if (std::abs(curv) < 1e-15) {
    out.x += len * std::cos(c.psi);
    out.y += len * std::sin(c.psi);
  } else {
    double psi1 = c.psi + curv * len;
    out.x += (std::sin(psi1) - std::sin(c.psi)) / curv;
    out.y += (std::cos(c.psi) - std::cos(psi1)) / curv;
    out.psi = psi1;
  }
  return out;
}

}  // namespace

double planar_dubins_oracle(const PlanarConfig& start, const PlanarConfig& goal, double radius) {
  // normalized: radius 1, start at origin heading alpha, goal at (d, 0)
  double dx = goal.u - start.u, dy = goal.v - start.v;
  double dist = std::hypot(dx, dy);
  double phi = dist < 1e-14 ? 0.0 : std::atan2(dy, dx);
  double d = dist / radius;
  double alpha = wrap_pi(start.psi - phi);
  double beta = wrap_pi(goal.psi - phi);
  if (d < 1e-14 && std::abs(wrap_pi(goal.psi - start.psi)) < 1e-14) return 0.0;

  double best = std::numeric_limits<double>::infinity();

  // C S C: scan the first arc angle; the last arc angle follows from the
  // heading, the straight segment must line up
  for (double s1 : {1.0, -1.0})
    for (double s3 : {1.0, -1.0}) {
      auto residual = [&](double t, double* along, double* q_out) {
        double psi1 = alpha + s1 * t;
        double q = wrap_two_pi(s3 * (beta - psi1));
        Planar2 after1 = advance({0.0, 0.0, alpha}, s1, t);
        Planar2 d3 = advance({0.0, 0.0, psi1}, s3, q);
        double p3x = d - d3.x, p3y = -d3.y;
        double rx = p3x - after1.x, ry = p3y - after1.y;
        if (along) *along = rx * std::cos(psi1) + ry * std::sin(psi1);
        if (q_out) *q_out = q;
        return -rx * std::sin(psi1) + ry * std::cos(psi1);  // cross-track
      };
      auto consider = [&](double t) {
        double along, q;
        double cross = residual(t, &along, &q);
        if (std::abs(cross) > 1e-8 * (1.0 + d) || along < -1e-8) return;
        double len = t + std::max(along, 0.0) + q;
        best = std::min(best, len);
      };

      const int kScan = 4096;
      double prev_t = 0.0, prev_r = residual(0.0, nullptr, nullptr);
      consider(0.0);
      for (int i = 1; i <= kScan; ++i) {
        double t = kTwoPi * i / kScan;
        double r = residual(t, nullptr, nullptr);
        if ((prev_r < 0.0) != (r < 0.0)) {
          double lo = prev_t, hi = t, rlo = prev_r;
          for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            double rm = residual(mid, nullptr, nullptr);
            if ((rlo < 0.0) == (rm < 0.0)) {
              lo = mid;
              rlo = rm;
            } else {
              hi = mid;
            }
          }
          consider(0.5 * (lo + hi));
        }
        // tangency: local |residual| minimum without a sign change
        if (std::abs(r) < 1e-3) {
          double lo = std::max(prev_t - kTwoPi / kScan, 0.0), hi = std::min(t + kTwoPi / kScan, kTwoPi);
          for (int it = 0; it < 90; ++it) {
            double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (std::abs(residual(m1, nullptr, nullptr)) < std::abs(residual(m2, nullptr, nullptr)))
              hi = m2;
            else
              lo = m1;
          }
          consider(0.5 * (lo + hi));
        }
        prev_t = t;
        prev_r = r;
      }
    }

  // C C C: 2D grid over the first two arcs, last arc from the heading, then
  // pattern-search the endpoint residual to zero
  for (double s1 : {1.0, -1.0}) {
    auto eval = [&](double t, double m, double* len_out) {
      double psi2 = alpha + s1 * t - s1 * m;
      double q = wrap_two_pi(s1 * (beta - psi2));
      Planar2 c = advance({0.0, 0.0, alpha}, s1, t);
      c = advance(c, -s1, m);
      c = advance(c, s1, q);
      if (len_out) *len_out = t + m + q;
      return std::hypot(c.x - d, c.y);
    };

    const int kGrid = 180;
    std::vector<std::array<double, 3>> seeds;  // residual, t, m
    for (int i = 0; i < kGrid; ++i)
      for (int j = 0; j < kGrid; ++j) {
        double t = kTwoPi * i / kGrid, m = kTwoPi * j / kGrid;
        double r = eval(t, m, nullptr);
        if (r < 0.35) seeds.push_back({r, t, m});
      }
    std::sort(seeds.begin(), seeds.end());
    if (seeds.size() > 160) seeds.resize(160);

    for (const auto& seed : seeds) {
      double t = seed[1], m = seed[2];
      double r = eval(t, m, nullptr);
      double step = kTwoPi / kGrid;
      while (step > 1e-13 && r > 1e-11) {
        bool moved = false;
        for (const auto& [dt, dm] : std::initializer_list<std::pair<double, double>>{
                 {step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}}) {
          double tt = std::clamp(t + dt, 0.0, kTwoPi);
          double tm = std::clamp(m + dm, 0.0, kTwoPi);
          double rt = eval(tt, tm, nullptr);
          if (rt < r) {
            t = tt;
            m = tm;
            r = rt;
            moved = true;
            break;
          }
        }
        if (!moved) step *= 0.5;
      }
      if (r <= 1e-9 * (1.0 + d)) {
        double len;
        eval(t, m, &len);
        best = std::min(best, len);
      }
    }
  }

  return best * radius;
}

namespace {

Vec3 sphere_axis(dubins3d::SphereSeg type, double r_hat) {
  double c = std::sqrt(std::max(1.0 - r_hat * r_hat, 0.0));
  using S = dubins3d::SphereSeg;
  if (type == S::Left) return Vec3(c, 0.0, r_hat);
  if (type == S::Right) return Vec3(-c, 0.0, r_hat);
  return Vec3(0.0, 0.0, 1.0);
}

struct SphereOracleWord {
  std::vector<dubins3d::SphereSeg> letters;
  std::vector<double> fixed;  // >= 0 pins the letter's angle
};

// Boundary-value problem for one word; a subset of the free letters is
// solved for while the rest stay fixed at given values.
struct SphereOracleProblem {
  std::vector<Vec3> axes;
  std::vector<double> weights;
  std::vector<double> angles;     // current full angle vector
  std::vector<int> solve_index;   // letters being solved for
  Mat3 target;

  Eigen::Matrix<double, 6, 1> residual6() const {
    Mat3 m = Mat3::Identity();
    for (size_t i = 0; i < axes.size(); ++i) m = m * dubins3d::axis_angle_exp(axes[i], angles[i]);
    Mat3 diff = m - target;
    Eigen::Matrix<double, 6, 1> e;
    e.segment<3>(0) = diff.col(0);
    e.segment<3>(3) = diff.col(1);
    return e;
  }

  double residual_norm() const {
    Eigen::Matrix<double, 6, 1> e = residual6();
    return std::max(e.segment<3>(0).norm(), e.segment<3>(3).norm());
  }

  double length() const {
    double l = 0.0;
    for (size_t i = 0; i < axes.size(); ++i) l += weights[i] * dubins3d::wrap_two_pi(angles[i]);
    return l;
  }
};

// Levenberg iteration with forward-difference Jacobians.
bool fd_lm(SphereOracleProblem& p, int max_iters) {
  const int k = static_cast<int>(p.solve_index.size());
  const double h = 1e-7;
  Eigen::Matrix<double, 6, 1> e = p.residual6();
  double err = e.squaredNorm();
  double lambda = 1e-4;
  for (int iter = 0; iter < max_iters; ++iter) {
    if (p.residual_norm() <= 1e-11) return true;
    Eigen::MatrixXd jac(6, k);
    for (int c = 0; c < k; ++c) {
      double saved = p.angles[p.solve_index[c]];
      p.angles[p.solve_index[c]] = saved + h;
      jac.col(c) = (p.residual6() - e) / h;
      p.angles[p.solve_index[c]] = saved;
    }
    Eigen::MatrixXd hmat = jac.transpose() * jac;
    Eigen::VectorXd g = jac.transpose() * e;
    bool stepped = false;
    for (int attempt = 0; attempt < 10; ++attempt) {
      Eigen::MatrixXd damped = hmat;
      damped.diagonal().array() += lambda * (hmat.diagonal().array() + 1e-12);
      Eigen::VectorXd delta = damped.ldlt().solve(-g);
      std::vector<double> saved = p.angles;
      for (int c = 0; c < k; ++c) p.angles[p.solve_index[c]] += delta[c];
      Eigen::Matrix<double, 6, 1> e_trial = p.residual6();
      if (e_trial.squaredNorm() < err) {
        err = e_trial.squaredNorm();
        e = e_trial;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
        break;
      }
      p.angles = saved;
      lambda *= 5.0;
      if (lambda > 1e10) break;
    }
    if (!stepped) break;
  }
  return p.residual_norm() <= 1e-9;
}

void wrap_angles(std::vector<double>& angles) {
  for (double& a : angles) {
    a = dubins3d::wrap_two_pi(a);
    if (a < 1e-10 || kTwoPi - a < 1e-10) a = 0.0;
  }
}

}  // namespace

std::optional<double> spherical_grid_oracle(const SphericalConfig& start, const SphericalConfig& goal,
                                            const SphericalPathParams& params) {
  double r_hat = params.unit_turn_radius();
  if (!(r_hat > 0.0) || r_hat > std::sqrt(3.0) / 2.0 + 1e-12) return std::nullopt;

  auto frame_of = [&](const SphericalConfig& c) {
    Vec3 x = c.position.normalized();
    Vec3 t = (c.tangent - c.tangent.dot(x) * x).normalized();
    Mat3 f;
    f.col(0) = x;
    f.col(1) = t;
    f.col(2) = x.cross(t);
    return f;
  };
  Mat3 target = frame_of(start).transpose() * frame_of(goal);
  if ((target - Mat3::Identity()).norm() < 1e-12) return 0.0;

  using S = dubins3d::SphereSeg;
  std::vector<SphereOracleWord> words;
  for (S a : {S::Left, S::Right})
    for (S b : {S::Left, S::Right})
      words.push_back({{a, S::Geodesic, b}, {-1.0, -1.0, -1.0}});
  if (r_hat <= 0.5) {
    words.push_back({{S::Left, S::Right, S::Left}, {-1.0, -1.0, -1.0}});
    words.push_back({{S::Right, S::Left, S::Right}, {-1.0, -1.0, -1.0}});
  } else if (r_hat <= 1.0 / std::sqrt(2.0)) {
    words.push_back({{S::Left, S::Right, S::Left, S::Right}, {-1.0, -1.0, -1.0, -1.0}});
    words.push_back({{S::Right, S::Left, S::Right, S::Left}, {-1.0, -1.0, -1.0, -1.0}});
  } else {
    words.push_back({{S::Left, S::Right, S::Left, S::Right, S::Left}, {-1, -1, -1, -1, -1}});
    words.push_back({{S::Right, S::Left, S::Right, S::Left, S::Right}, {-1, -1, -1, -1, -1}});
    words.push_back({{S::Left, S::Right, S::Left}, {-1.0, kPi, -1.0}});
    words.push_back({{S::Right, S::Left, S::Right}, {-1.0, kPi, -1.0}});
  }

  double best = std::numeric_limits<double>::infinity();
  for (const SphereOracleWord& word : words) {
    SphereOracleProblem base;
    base.target = target;
    base.angles.assign(word.letters.size(), 0.0);
    std::vector<int> free_letters;
    for (size_t i = 0; i < word.letters.size(); ++i) {
      base.axes.push_back(sphere_axis(word.letters[i], r_hat));
      base.weights.push_back(word.letters[i] == S::Geodesic ? 1.0 : r_hat);
      if (word.fixed[i] >= 0.0)
        base.angles[i] = word.fixed[i];
      else
        free_letters.push_back(static_cast<int>(i));
    }
    int k = static_cast<int>(free_letters.size());

    // Full-rank words: dense seed lattice, solve all free angles at once.
    // Under-determined words: grid the leading angles, solve the trailing
    // three, then golden-section the leading angles around the best point.
    int n_outer = k - 3;
    std::vector<int> inner(free_letters.begin() + std::max(0, n_outer), free_letters.end());
    std::vector<int> outer(free_letters.begin(), free_letters.begin() + std::max(0, n_outer));

    int inner_dim = static_cast<int>(inner.size());
    int seeds_per_dim = inner_dim <= 2 ? 8 : 5;
    std::vector<std::vector<double>> inner_seeds;
    std::vector<int> idx(inner_dim, 0);
    while (true) {
      std::vector<double> seed(inner_dim);
      for (int i = 0; i < inner_dim; ++i) seed[i] = kTwoPi * (idx[i] + 0.5) / seeds_per_dim;
      inner_seeds.push_back(seed);
      int carry = inner_dim - 1;
      while (carry >= 0 && ++idx[carry] == seeds_per_dim) idx[carry--] = 0;
      if (carry < 0) break;
    }

    auto solve_inner = [&](const std::vector<double>& outer_vals, double* best_len,
                           std::vector<double>* best_angles) {
      bool found = false;
      for (const std::vector<double>& seed : inner_seeds) {
        SphereOracleProblem p = base;
        p.solve_index = inner;
        for (size_t i = 0; i < outer.size(); ++i) p.angles[outer[i]] = outer_vals[i];
        for (int i = 0; i < inner_dim; ++i) p.angles[inner[i]] = seed[i];
        if (!fd_lm(p, 60)) continue;
        wrap_angles(p.angles);
        if (p.residual_norm() > 1e-9) continue;
        double len = p.length();
        if (!found || len < *best_len) {
          *best_len = len;
          if (best_angles) *best_angles = p.angles;
          found = true;
        }
      }
      return found;
    };

    if (n_outer <= 0) {
      double len;
      if (solve_inner({}, &len, nullptr)) best = std::min(best, len);
      continue;
    }

    const int outer_grid = n_outer == 1 ? 48 : 12;
    std::vector<double> best_outer;
    double best_word_len = std::numeric_limits<double>::infinity();
    std::vector<int> odx(n_outer, 0);
    while (true) {
      std::vector<double> outer_vals(n_outer);
      for (int i = 0; i < n_outer; ++i) outer_vals[i] = kTwoPi * odx[i] / outer_grid;
      double len;
      if (solve_inner(outer_vals, &len, nullptr)) {
        double total = len;
        if (total < best_word_len) {
          best_word_len = total;
          best_outer = outer_vals;
        }
      }
      int carry = n_outer - 1;
      while (carry >= 0 && ++odx[carry] == outer_grid) odx[carry--] = 0;
      if (carry < 0) break;
    }
    if (best_outer.empty()) continue;

    // refine each leading angle by golden section
    double span = kTwoPi / outer_grid;
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < n_outer; ++i) {
        double lo = best_outer[i] - span, hi = best_outer[i] + span;
        constexpr double inv_phi = 0.6180339887498949;
        double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
        auto eval_at = [&](double x) {
          std::vector<double> vals = best_outer;
          vals[i] = dubins3d::wrap_two_pi(x);
          double len;
          if (!solve_inner(vals, &len, nullptr)) return 1e18;
          return len;
        };
        double f1 = eval_at(x1), f2 = eval_at(x2);
        for (int it = 0; it < 24; ++it) {
          if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = eval_at(x1);
          } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = eval_at(x2);
          }
        }
        double xm = f1 < f2 ? x1 : x2;
        double fm = std::min(f1, f2);
        if (fm < best_word_len) {
          best_word_len = fm;
          best_outer[i] = dubins3d::wrap_two_pi(xm);
        }
      }
    best = std::min(best, best_word_len);
  }

  if (!std::isfinite(best)) return std::nullopt;
  return best * params.sphere_radius;
}

double richardson_arc_length(const std::function<Vec3(double)>& position, double total, int base_n) {
  auto chord_sum = [&](int n) {
    double sum = 0.0;
    Vec3 prev = position(0.0);
    for (int i = 1; i <= n; ++i) {
      Vec3 next = position(total * i / n);
      sum += (next - prev).norm();
      prev = next;
    }
    return sum;
  };
  double l1 = chord_sum(base_n);
  double l2 = chord_sum(2 * base_n);
  double l4 = chord_sum(4 * base_n);
  double a1 = (4.0 * l2 - l1) / 3.0;
  double a2 = (4.0 * l4 - l2) / 3.0;
  return (16.0 * a2 - a1) / 15.0;
}

}  // namespace oracles
