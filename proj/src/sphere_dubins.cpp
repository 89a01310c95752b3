#include "dubins3d/sphere_dubins.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dubins3d {

namespace {

constexpr double kAcceptResidual = 1e-8;   // roots worse than this are discarded
constexpr double kTargetResidual = 1e-12;  // solver drives residuals here
constexpr double kAngleSnap = 1e-10;       // arc angles this close to 0 or 2*pi snap to 0
constexpr double kMaxUnitRadius = 0.8660254037844387;  // sqrt(3)/2

using VecX = Eigen::VectorXd;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6X = Eigen::Matrix<double, 6, Eigen::Dynamic>;

Mat3 skew(const Vec3& a) {
  Mat3 m;
  m << 0, -a.z(), a.y(),
       a.z(), 0, -a.x(),
       -a.y(), a.x(), 0;
  return m;
}

Vec3 segment_axis(SphereSeg type, double r_hat) {
  double c = std::sqrt(std::max(1.0 - r_hat * r_hat, 0.0));
  switch (type) {
    case SphereSeg::Left: return Vec3(c, 0.0, r_hat);
    case SphereSeg::Right: return Vec3(-c, 0.0, r_hat);
    case SphereSeg::Geodesic: return Vec3(0.0, 0.0, 1.0);
  }
  return Vec3::UnitZ();
}

double segment_length_weight(SphereSeg type, double r_hat) {
  return type == SphereSeg::Geodesic ? 1.0 : r_hat;
}

SphericalWord make_word(std::initializer_list<SphereSeg> letters, const char* pattern) {
  SphericalWord w;
  w.letters = letters;
  w.slot.resize(w.letters.size());
  w.pinned.assign(w.letters.size(), 0.0);
  for (size_t i = 0; i < w.letters.size(); ++i) w.slot[i] = static_cast<int>(i);
  w.n_slots = static_cast<int>(w.letters.size());
  w.pattern = pattern;
  return w;
}

SphericalWord with_slots(SphericalWord w, std::initializer_list<int> slots) {
  w.slot = slots;
  int n = 0;
  for (int s : w.slot) n = std::max(n, s + 1);
  w.n_slots = n;
  return w;
}

SphericalWord with_pin(SphericalWord w, int index, double angle) {
  w.slot[index] = -1;
  w.pinned[index] = angle;
  // renumber remaining slots densely
  int next = 0;
  for (size_t i = 0; i < w.slot.size(); ++i)
    if (w.slot[i] >= 0) w.slot[i] = next++;
  w.n_slots = next;
  return w;
}

using S = SphereSeg;

void append_cgc(std::vector<SphericalWord>& words) {
  words.push_back(make_word({S::Left, S::Geodesic, S::Left}, "CGC"));
  words.push_back(make_word({S::Left, S::Geodesic, S::Right}, "CGC"));
  words.push_back(make_word({S::Right, S::Geodesic, S::Left}, "CGC"));
  words.push_back(make_word({S::Right, S::Geodesic, S::Right}, "CGC"));
}

std::vector<SphericalWord> families(double r_hat, bool with_probes) {
  if (!(r_hat > 0.0) || r_hat > kMaxUnitRadius + 1e-12)
    throw std::domain_error("candidate_families: unit turn radius outside (0, sqrt(3)/2]");

  std::vector<SphericalWord> words;
  append_cgc(words);
  if (r_hat <= 0.5) {
    words.push_back(make_word({S::Left, S::Right, S::Left}, "CCC"));
    words.push_back(make_word({S::Right, S::Left, S::Right}, "CCC"));
  } else if (r_hat <= 1.0 / std::numbers::sqrt2) {
    words.push_back(make_word({S::Left, S::Right, S::Left, S::Right}, "CCCC"));
    words.push_back(make_word({S::Right, S::Left, S::Right, S::Left}, "CCCC"));
    if (with_probes) {
      // equal middle arcs; a square sub-family that the free search can miss
      words.push_back(with_slots(make_word({S::Left, S::Right, S::Left, S::Right}, "CCCC"), {0, 1, 1, 2}));
      words.push_back(with_slots(make_word({S::Right, S::Left, S::Right, S::Left}, "CCCC"), {0, 1, 1, 2}));
    }
  } else {
    words.push_back(make_word({S::Left, S::Right, S::Left, S::Right, S::Left}, "CCCCC"));
    words.push_back(make_word({S::Right, S::Left, S::Right, S::Left, S::Right}, "CCCCC"));
    if (with_probes) {
      words.push_back(with_slots(make_word({S::Left, S::Right, S::Left, S::Right, S::Left}, "CCCCC"),
                                 {0, 1, 1, 1, 2}));
      words.push_back(with_slots(make_word({S::Right, S::Left, S::Right, S::Left, S::Right}, "CCCCC"),
                                 {0, 1, 1, 1, 2}));
    }
    words.push_back(with_pin(make_word({S::Left, S::Right, S::Left}, "CCpiC"), 1, kPi));
    words.push_back(with_pin(make_word({S::Right, S::Left, S::Right}, "CCpiC"), 1, kPi));
  }
  return words;
}

struct WordProblem {
  const SphericalWord* word = nullptr;
  std::vector<Vec3> axes;
  std::vector<double> weight;  // unit-sphere length per unit arc angle, per letter
  Mat3 target;

  int n_letters() const { return static_cast<int>(word->letters.size()); }

  void expand(const VecX& theta, std::vector<double>& phis) const {
    phis.resize(word->letters.size());
    for (size_t i = 0; i < word->letters.size(); ++i)
      phis[i] = word->slot[i] >= 0 ? theta[word->slot[i]] : word->pinned[i];
  }

  void eval(const VecX& theta, Vec6& e, Mat6X* jac) const {
    std::vector<double> phis;
    expand(theta, phis);
    int k = n_letters();
    std::vector<Mat3> rod(k), pre(k + 1), suf(k + 1);
    for (int i = 0; i < k; ++i) rod[i] = axis_angle_exp(axes[i], phis[i]);
    pre[0] = Mat3::Identity();
    for (int i = 0; i < k; ++i) pre[i + 1] = pre[i] * rod[i];
    suf[k] = Mat3::Identity();
    for (int i = k - 1; i >= 0; --i) suf[i] = rod[i] * suf[i + 1];

    Mat3 diff = pre[k] - target;
    e.segment<3>(0) = diff.col(0);
    e.segment<3>(3) = diff.col(1);

    if (jac) {
      jac->setZero(6, word->n_slots);
      for (int i = 0; i < k; ++i) {
        int s = word->slot[i];
        if (s < 0) continue;
        Mat3 d = pre[i] * skew(axes[i]) * rod[i] * suf[i + 1];
        jac->col(s).segment<3>(0) += d.col(0);
        jac->col(s).segment<3>(3) += d.col(1);
      }
    }
  }

  /// max of position and tangent mismatch norms
  double residual(const VecX& theta) const {
    Vec6 e;
    eval(theta, e, nullptr);
    return std::max(e.segment<3>(0).norm(), e.segment<3>(3).norm());
  }

  double unit_length(const VecX& theta) const {
    std::vector<double> phis;
    expand(theta, phis);
    double l = 0.0;
    for (size_t i = 0; i < phis.size(); ++i) l += weight[i] * phis[i];
    return l;
  }
};

void wrap_and_snap(VecX& theta) {
  for (int i = 0; i < theta.size(); ++i) {
    double w = wrap_two_pi(theta[i]);
    if (w < kAngleSnap || kTwoPi - w < kAngleSnap) w = 0.0;
    theta[i] = w;
  }
}

bool lm_refine(const WordProblem& problem, VecX& theta, int max_iters) {
  Vec6 e;
  Mat6X jac;
  problem.eval(theta, e, &jac);
  double err = e.squaredNorm();
  double lambda = 1e-4;
  for (int iter = 0; iter < max_iters; ++iter) {
    if (e.cwiseAbs().maxCoeff() <= kTargetResidual) return true;
    Eigen::MatrixXd h = jac.transpose() * jac;
    Eigen::VectorXd g = jac.transpose() * e;
    bool stepped = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::MatrixXd damped = h;
      damped.diagonal().array() += lambda * (h.diagonal().array() + 1e-12);
      VecX delta = damped.ldlt().solve(-g);
      VecX trial = theta + delta;
      Vec6 e_trial;
      problem.eval(trial, e_trial, nullptr);
      if (e_trial.squaredNorm() < err) {
        theta = trial;
        err = e_trial.squaredNorm();
        lambda = std::max(lambda / 3.0, 1e-12);
        problem.eval(theta, e, &jac);
        stepped = true;
        break;
      }
      lambda *= 4.0;
      if (lambda > 1e10) return e.cwiseAbs().maxCoeff() <= kTargetResidual;
    }
    if (!stepped) break;
  }
  return e.cwiseAbs().maxCoeff() <= kTargetResidual * 10.0;
}

/// Slides an under-determined root along the solution manifold to shorten the
/// path, keeping feasibility via re-correction. Angles stay within [0, 2*pi].
void descend_length(const WordProblem& problem, VecX& theta) {
  const int n = problem.word->n_slots;
  VecX grad(n);
  for (int s = 0; s < n; ++s) {
    double w = 0.0;
    for (size_t i = 0; i < problem.word->letters.size(); ++i)
      if (problem.word->slot[i] == s) w += problem.weight[i];
    grad[s] = w;
  }

  double best_len = problem.unit_length(theta);
  for (int iter = 0; iter < 40; ++iter) {
    Vec6 e;
    Mat6X jac;
    problem.eval(theta, e, &jac);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv[0] : 0.0;
    Eigen::MatrixXd v = svd.matrixV();
    VecX dir = VecX::Zero(n);
    for (int c = 0; c < v.cols(); ++c) {
      bool in_null = c >= sv.size() || sv[c] < 1e-8 * std::max(smax, 1.0);
      if (in_null) dir -= v.col(c) * (v.col(c).dot(grad));
    }
    if (dir.norm() < 1e-10) break;

    double tau = 0.25 / std::max(dir.cwiseAbs().maxCoeff(), 1e-9);
    bool improved = false;
    for (int shrink = 0; shrink < 8 && !improved; ++shrink, tau *= 0.5) {
      VecX trial = theta + tau * dir;
      for (int s = 0; s < n; ++s) trial[s] = std::clamp(trial[s], 0.0, kTwoPi);
      if (!lm_refine(problem, trial, 15)) continue;
      if (problem.residual(trial) > kAcceptResidual) continue;
      double len = problem.unit_length(trial);
      bool inside = true;
      for (int s = 0; s < n; ++s)
        if (trial[s] < -1e-9 || trial[s] > kTwoPi + 1e-9) inside = false;
      if (inside && len < best_len - 1e-12) {
        theta = trial;
        best_len = len;
        improved = true;
      }
    }
    if (!improved) break;
  }
}

}  // namespace

double SphericalPathParams::turn_radius() const {
  return sphere_radius * unit_turn_radius();
}

double SphericalPathParams::unit_turn_radius() const {
  double u = max_geodesic_curvature * sphere_radius;
  return 1.0 / std::sqrt(1.0 + u * u);
}

SphericalPathParams sphere_params_for(SphereSide side, const VehicleParams& params) {
  params.validate();
  if (is_pitch_side(side)) return {params.r_pitch, 1.0 / params.r_yaw};
  return {params.r_yaw, 1.0 / params.r_pitch};
}

bool spherical_radius_supported(const SphericalPathParams& params) {
  double r_hat = params.unit_turn_radius();
  return r_hat > 0.0 && r_hat <= kMaxUnitRadius + 1e-12;
}

std::vector<SphericalWord> candidate_families(double r_hat) { return families(r_hat, false); }

SphericalConfig on_sphere_config(const Configuration& config, const Vec3& sphere_center) {
  return {config.position - sphere_center, config.tangent()};
}

namespace {

Mat3 unit_sphere_frame(const SphericalConfig& config, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("spherical config: radius must be positive");
  double len = config.position.norm();
  if (std::abs(len - radius) > 1e-6 * radius)
    throw std::invalid_argument("spherical config: position is not on the sphere");
  Vec3 x = config.position / len;
  Vec3 t = config.tangent;
  if (std::abs(t.norm() - 1.0) > 1e-6 || std::abs(t.dot(x)) > 1e-6)
    throw std::invalid_argument("spherical config: tangent must be unit and perpendicular to the radius");
  t = (t - t.dot(x) * x).normalized();
  Mat3 f;
  f.col(0) = x;
  f.col(1) = t;
  f.col(2) = x.cross(t);
  return f;
}

}  // namespace

std::optional<SphericalPath> solve_spherical_dubins(const SphericalConfig& start,
                                                    const SphericalConfig& goal,
                                                    const SphericalPathParams& params) {
  if (!spherical_radius_supported(params)) return std::nullopt;
  double r_hat = params.unit_turn_radius();
  Mat3 f0 = unit_sphere_frame(start, params.sphere_radius);
  Mat3 f1 = unit_sphere_frame(goal, params.sphere_radius);
  Mat3 target = f0.transpose() * f1;

  SphericalPath out;
  out.start_frame = f0;
  out.params = params;

  if ((target - Mat3::Identity()).norm() < 1e-12) {
    out.length = 0.0;
    out.residual = 0.0;
    return out;
  }

  std::vector<SphericalWord> words = families(r_hat, true);

  // rank-1 lattice seeds over the angle torus
  constexpr int kStarts = 8;
  constexpr int kGens[5] = {1, 3, 5, 7, 2};

  double best_len = std::numeric_limits<double>::infinity();
  int best_word = -1;
  VecX best_theta;

  for (size_t wi = 0; wi < words.size(); ++wi) {
    const SphericalWord& word = words[wi];
    WordProblem problem;
    problem.word = &word;
    problem.target = target;
    problem.axes.reserve(word.letters.size());
    problem.weight.reserve(word.letters.size());
    for (SphereSeg letter : word.letters) {
      problem.axes.push_back(segment_axis(letter, r_hat));
      problem.weight.push_back(segment_length_weight(letter, r_hat));
    }

    for (int start_idx = 0; start_idx < kStarts; ++start_idx) {
      VecX theta(word.n_slots);
      for (int s = 0; s < word.n_slots; ++s) {
        double frac = (start_idx + 0.5) * kGens[s % 5] / kStarts;
        theta[s] = kTwoPi * (frac - std::floor(frac));
      }
      if (!lm_refine(problem, theta, 60)) continue;
      wrap_and_snap(theta);
      if (problem.residual(theta) > kAcceptResidual) continue;
      if (word.n_slots > 3) {
        descend_length(problem, theta);
        wrap_and_snap(theta);
        if (problem.residual(theta) > kAcceptResidual) continue;
      }
      double len = problem.unit_length(theta);
      bool better = len < best_len - 1e-15;
      if (!better && std::abs(len - best_len) <= 1e-15 && best_word >= 0) {
        if (static_cast<int>(wi) < best_word) better = true;
        else if (static_cast<int>(wi) == best_word && theta.size() == best_theta.size()) {
          for (int s = 0; s < theta.size(); ++s) {
            if (theta[s] < best_theta[s] - 1e-15) { better = true; break; }
            if (theta[s] > best_theta[s] + 1e-15) break;
          }
        }
      }
      if (better) {
        best_len = len;
        best_word = static_cast<int>(wi);
        best_theta = theta;
      }
    }
  }

  if (best_word < 0) return std::nullopt;

  const SphericalWord& word = words[best_word];
  WordProblem problem;
  problem.word = &word;
  problem.target = target;
  for (SphereSeg letter : word.letters) {
    problem.axes.push_back(segment_axis(letter, r_hat));
    problem.weight.push_back(segment_length_weight(letter, r_hat));
  }
  std::vector<double> phis;
  problem.expand(best_theta, phis);
  for (size_t i = 0; i < word.letters.size(); ++i)
    out.segments.push_back({word.letters[i], phis[i]});
  out.length = params.sphere_radius * best_len;
  out.residual = problem.residual(best_theta);
  return out;
}

Trajectory lift_spherical_path(const SphericalPath& path, const Vec3& sphere_center, SphereSide side,
                               double step, const VehicleParams& params) {
  if (step <= 0.0) throw std::invalid_argument("lift_spherical_path: step must be positive");
  params.validate();
  SphericalPathParams expected = sphere_params_for(side, params);
  if (std::abs(expected.sphere_radius - path.params.sphere_radius) >
          1e-9 * expected.sphere_radius ||
      std::abs(expected.max_geodesic_curvature - path.params.max_geodesic_curvature) >
          1e-9 * expected.max_geodesic_curvature)
    throw std::invalid_argument("lift_spherical_path: sphere selection inconsistent with the path");

  double radius = path.params.sphere_radius;
  double r_hat = path.params.unit_turn_radius();
  double u_max = path.params.max_geodesic_curvature;
  int dp = pitch_delta(side);
  int dy = yaw_delta(side);

  Trajectory traj;
  Mat3 frame = path.start_frame;
  auto push_sample = [&](double s, const Mat3& f, double u_g, int segment) {
    TrajectorySample sample;
    sample.s = s;
    sample.config.position = radius * f.col(0) + sphere_center;
    Vec3 t = f.col(1);
    Mat3 body;
    if (dp != 0) {
      Vec3 u = -dp * f.col(0);
      body.col(0) = t;
      body.col(1) = u.cross(t);
      body.col(2) = u;
      sample.curvature = {-dp * u_g, dp / radius};
    } else {
      Vec3 y = -dy * f.col(0);
      body.col(0) = t;
      body.col(1) = y;
      body.col(2) = t.cross(y);
      sample.curvature = {dy / radius, dy * u_g};
    }
    sample.config.frame = body;
    sample.segment = segment;
    traj.samples.push_back(sample);
  };

  push_sample(0.0, frame, path.segments.empty() ? 0.0 : 0.0, 0);
  double s0 = 0.0;
  int seg_id = 0;
  for (const SphericalSegment& seg : path.segments) {
    double weight = segment_length_weight(seg.type, r_hat);
    double len = radius * weight * seg.arc_angle;
    if (len < 1e-12) continue;
    double u_g = seg.type == SphereSeg::Geodesic ? 0.0 : (seg.type == SphereSeg::Left ? u_max : -u_max);
    Vec3 axis = segment_axis(seg.type, r_hat);
    double rate = seg.arc_angle / len;  // rotation angle per meter
    // overwrite the first sample's control labels with this segment's
    if (traj.samples.size() == 1 && traj.samples.back().s == 0.0) {
      Mat3 f0 = frame;
      traj.samples.clear();
      push_sample(0.0, f0, u_g, seg_id);
    }
    for (double s = step; s < len - 1e-12; s += step)
      push_sample(s0 + s, frame * axis_angle_exp(axis, s * rate), u_g, seg_id);
    frame = frame * axis_angle_exp(axis, seg.arc_angle);
    push_sample(s0 + len, frame, u_g, seg_id);
    s0 += len;
    ++seg_id;
  }
  return traj;
}

}  // namespace dubins3d
