#include "dubins3d/dubins2d.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace dubins3d {

namespace {

constexpr double kSnap = 1e-9;        // arc angles this close to 0 or 2*pi collapse to 0
constexpr double kCccSlack = 1e-12;   // slack on the 4r center-distance test for CCC

double mod2pi(double x) {
  double w = wrap_two_pi(x);
  if (w < kSnap || kTwoPi - w < kSnap) return 0.0;
  return w;
}

struct NormalizedCandidate {
  PlanarWord word;
  std::array<double, 3> lengths;  // in units of the turning radius
  double total() const { return lengths[0] + lengths[1] + lengths[2]; }
};

// Normalized problem: radius 1, start at the origin with heading alpha, goal
// at (d, 0) with heading beta. All constructions below go through the turn
// centers; each candidate is verified by forward simulation by the caller.

Eigen::Vector2d left_center(const Eigen::Vector2d& p, double psi) {
  return p + Eigen::Vector2d(-std::sin(psi), std::cos(psi));
}
Eigen::Vector2d right_center(const Eigen::Vector2d& p, double psi) {
  return p + Eigen::Vector2d(std::sin(psi), -std::cos(psi));
}

std::optional<NormalizedCandidate> solve_csc(PlanarWord word, double d, double alpha, double beta) {
  bool first_left = (word == PlanarWord::LSL || word == PlanarWord::LSR);
  bool last_left = (word == PlanarWord::LSL || word == PlanarWord::RSL);
  Eigen::Vector2d p0(0.0, 0.0), p1(d, 0.0);
  Eigen::Vector2d c0 = first_left ? left_center(p0, alpha) : right_center(p0, alpha);
  Eigen::Vector2d c1 = last_left ? left_center(p1, beta) : right_center(p1, beta);
  Eigen::Vector2d v = c1 - c0;
  double dist = v.norm();
  double gamma = std::atan2(v.y(), v.x());

  double theta, p;
  if (first_left == last_left) {
    // outer tangent
    p = dist;
    theta = gamma;
  } else {
    // inner tangent, needs center distance >= 2
    if (dist * dist < 4.0 - kCccSlack) return std::nullopt;
    p = std::sqrt(std::max(dist * dist - 4.0, 0.0));
    theta = first_left ? gamma + std::atan2(2.0, p) : gamma - std::atan2(2.0, p);
  }
  double t = first_left ? mod2pi(theta - alpha) : mod2pi(alpha - theta);
  double q = last_left ? mod2pi(beta - theta) : mod2pi(theta - beta);
  return NormalizedCandidate{word, {t, p, q}};
}

std::optional<NormalizedCandidate> solve_ccc(PlanarWord word, double d, double alpha, double beta,
                                             int branch) {
  bool outer_left = (word == PlanarWord::LRL);
  Eigen::Vector2d p0(0.0, 0.0), p1(d, 0.0);
  Eigen::Vector2d c0 = outer_left ? left_center(p0, alpha) : right_center(p0, alpha);
  Eigen::Vector2d c1 = outer_left ? left_center(p1, beta) : right_center(p1, beta);
  Eigen::Vector2d v = c1 - c0;
  double dist = v.norm();
  if (dist > 4.0 + kCccSlack) return std::nullopt;
  double gamma = std::atan2(v.y(), v.x());
  double eta = std::acos(std::clamp(dist / 4.0, -1.0, 1.0));
  double dir = branch == 0 ? 1.0 : -1.0;
  Eigen::Vector2d cm = c0 + 2.0 * Eigen::Vector2d(std::cos(gamma + dir * eta), std::sin(gamma + dir * eta));

  // Headings at the two transition points (midpoints of the center pairs).
  // At the second transition the vehicle is still on the middle circle, so
  // the heading is taken with the middle circle's turning sense.
  double theta1, theta2;
  if (outer_left) {
    theta1 = std::atan2(cm.y() - c0.y(), cm.x() - c0.x()) + kPi / 2.0;
    theta2 = std::atan2(c1.y() - cm.y(), c1.x() - cm.x()) - kPi / 2.0;
  } else {
    theta1 = std::atan2(cm.y() - c0.y(), cm.x() - c0.x()) - kPi / 2.0;
    theta2 = std::atan2(c1.y() - cm.y(), c1.x() - cm.x()) + kPi / 2.0;
  }
  double t, m, q;
  if (outer_left) {
    t = mod2pi(theta1 - alpha);
    m = mod2pi(theta1 - theta2);  // middle arc turns right
    q = mod2pi(beta - theta2);
  } else {
    t = mod2pi(alpha - theta1);
    m = mod2pi(theta2 - theta1);  // middle arc turns left
    q = mod2pi(theta2 - beta);
  }
  return NormalizedCandidate{word, {t, m, q}};
}

char segment_letter(PlanarWord word, int i) {
  const char* names[] = {"LSL", "LSR", "RSL", "RSR", "LRL", "RLR"};
  return names[static_cast<int>(word)][i];
}

double segment_curvature(PlanarWord word, int i) {
  char c = segment_letter(word, i);
  if (c == 'L') return 1.0;
  if (c == 'R') return -1.0;
  return 0.0;
}

PlanarConfig advance(const PlanarConfig& c, double curv, double len) {
  PlanarConfig out = c;
  if (std::abs(curv) < 1e-15) {
    out.u += len * std::cos(c.psi);
    out.v += len * std::sin(c.psi);
  } else {
    double psi1 = c.psi + curv * len;
    out.u += (std::sin(psi1) - std::sin(c.psi)) / curv;
    out.v += (std::cos(c.psi) - std::cos(psi1)) / curv;
    out.psi = psi1;
  }
  out.psi = wrap_pi(out.psi);
  return out;
}

// Endpoint error of a normalized candidate, for self-checking the constructions.
double endpoint_error(const NormalizedCandidate& cand, double d, double alpha, double beta) {
  PlanarConfig c{0.0, 0.0, wrap_pi(alpha)};
  for (int i = 0; i < 3; ++i) c = advance(c, segment_curvature(cand.word, i), cand.lengths[i]);
  double dpsi = wrap_pi(c.psi - beta);
  return std::hypot(c.u - d, c.v) + std::abs(dpsi);
}

}  // namespace

const char* planar_word_name(PlanarWord w) {
  const char* names[] = {"LSL", "LSR", "RSL", "RSR", "LRL", "RLR"};
  return names[static_cast<int>(w)];
}

PlanarDubinsPath solve_planar_dubins(const PlanarConfig& start, const PlanarConfig& goal, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("solve_planar_dubins: radius must be positive");

  double dx = goal.u - start.u, dy = goal.v - start.v;
  double dist = std::hypot(dx, dy);
  PlanarDubinsPath best;
  best.radius = radius;

  if (dist < 1e-14 && std::abs(wrap_pi(goal.psi - start.psi)) < 1e-14) {
    best.word = PlanarWord::LSL;
    best.segment_lengths = {0.0, 0.0, 0.0};
    best.total_length = 0.0;
    return best;
  }

  double phi = dist < 1e-14 ? 0.0 : std::atan2(dy, dx);
  double d = dist / radius;
  double alpha = wrap_pi(start.psi - phi);
  double beta = wrap_pi(goal.psi - phi);

  double best_total = std::numeric_limits<double>::infinity();
  auto consider = [&](const std::optional<NormalizedCandidate>& cand) {
    if (!cand) return;
    if (endpoint_error(*cand, d, alpha, beta) > 1e-6 * (1.0 + d)) return;
    if (cand->total() < best_total) {
      best_total = cand->total();
      best.word = cand->word;
      best.segment_lengths = {cand->lengths[0] * radius, cand->lengths[1] * radius,
                              cand->lengths[2] * radius};
    }
  };

  consider(solve_csc(PlanarWord::LSL, d, alpha, beta));
  consider(solve_csc(PlanarWord::LSR, d, alpha, beta));
  consider(solve_csc(PlanarWord::RSL, d, alpha, beta));
  consider(solve_csc(PlanarWord::RSR, d, alpha, beta));
  for (int branch = 0; branch < 2; ++branch) {
    consider(solve_ccc(PlanarWord::LRL, d, alpha, beta, branch));
    consider(solve_ccc(PlanarWord::RLR, d, alpha, beta, branch));
  }

  best.total_length = best.segment_lengths[0] + best.segment_lengths[1] + best.segment_lengths[2];
  return best;
}

std::vector<PlanarSample> sample_planar_path(const PlanarDubinsPath& path, const PlanarConfig& start,
                                             double step) {
  if (step <= 0.0) throw std::invalid_argument("sample_planar_path: step must be positive");

  std::vector<PlanarSample> out;
  PlanarConfig seg_start = start;
  seg_start.psi = wrap_pi(seg_start.psi);
  double s0 = 0.0;
  out.push_back({0.0, seg_start, path.segment_lengths[0] > 0.0
                                     ? segment_curvature(path.word, 0) / path.radius
                                     : 0.0,
                 0});

  for (int i = 0; i < 3; ++i) {
    double len = path.segment_lengths[i];
    if (len <= 1e-12) continue;
    double curv = segment_curvature(path.word, i) / path.radius;
    for (double s = step; s < len - 1e-12; s += step)
      out.push_back({s0 + s, advance(seg_start, curv, s), curv, i});
    PlanarConfig seg_end = advance(seg_start, curv, len);
    out.push_back({s0 + len, seg_end, curv, i});
    seg_start = seg_end;
    s0 += len;
  }
  return out;
}

PlanarConfig planar_path_endpoint(const PlanarDubinsPath& path, const PlanarConfig& start) {
  PlanarConfig c = start;
  for (int i = 0; i < 3; ++i)
    c = advance(c, segment_curvature(path.word, i) / path.radius, path.segment_lengths[i]);
  return c;
}

}  // namespace dubins3d
