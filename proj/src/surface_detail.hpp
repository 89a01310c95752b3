#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "dubins3d/candidate.hpp"

namespace dubins3d::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// n points on [0, span), endpoint excluded (periodic parameter).
inline std::vector<double> periodic_grid(int n, double span) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = span * i / n;
  return g;
}

/// n points on [lo, hi], both endpoints included.
inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

inline CandidatePath trivial_path(const std::string& label, const Configuration& config) {
  CandidatePath p;
  p.class_label = label;
  p.total_length = 0.0;
  p.trajectory.samples.push_back({0.0, config, {0.0, 0.0}, 0});
  return p;
}

inline bool configurations_coincide(const Configuration& a, const Configuration& b, double tol = 1e-9) {
  return (a.position - b.position).norm() <= tol && (a.frame - b.frame).norm() <= tol;
}

/// Golden-section minimization; returns the best argument found.
inline double golden_section(const std::function<double(double)>& f, double lo, double hi, int iters = 40) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  double xm = 0.5 * (a + b);
  double fm = f(xm);
  if (f1 < fm && f1 <= f2) return x1;
  if (f2 < fm) return x2;
  return xm;
}

}  // namespace dubins3d::detail
