#pragma once

#include "chered/coxeter.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace chered {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline CVec to_cvec(const std::vector<double>& x) {
  CVec v(long(x.size()));
  for (size_t i = 0; i < x.size(); ++i) v(long(i)) = x[i];
  return v;
}

/// Piecewise-smooth path in complexified h avoiding the hyperplanes.
struct PathSegment {
  enum class Kind { Line, Arc, Bump, RealArc };
  Kind kind = Kind::Line;
  CVec a, b;     // Line: z = a + t (b - a); Bump endpoints
  CVec center;   // Arc center; RealArc first axis vector
  CVec radius;   // Arc: z = center + e^{i theta} radius (real direction vector)
  double th0 = 0, th1 = 0;
  CVec lift;     // Bump: z = (1-t) a + t b + i h t (1-t) lift; RealArc 2nd axis
  double height = 0;

  // RealArc: z(theta) = cos(theta) center + sin(theta) lift (real rotation).
  CVec at(double t) const;
  CVec deriv(double t) const;
};

struct Path {
  std::vector<PathSegment> segments;

  CVec start() const { return segments.front().at(0.0); }
  CVec end() const { return segments.back().at(1.0); }

  static Path line(const std::vector<double>& from, const std::vector<double>& to);
  /// Real endpoints joined through complexified points: the imaginary bump
  /// i h t(1-t) lift keeps the interior regular whenever lift is regular.
  static Path complex_bump(const std::vector<double>& from, const std::vector<double>& to,
                           const std::vector<double>& lift, double height = 1.0);
  /// Positively oriented half-loop from x0 around the wall of simple root i,
  /// ending at s_i x0; radius_frac of the distance from the wall.
  static Path half_loop(const CoxeterDatum<double>& w, const std::vector<double>& x0,
                        int simple_index, double radius_frac = 0.5);

  Path reversed() const;
  Path then(const Path& next) const;

  /// min over sampled path points of min_s |alpha_s(z)| / |alpha_s|.
  double clearance(const CoxeterDatum<double>& w, int samples_per_segment = 256) const;
};

}  // namespace chered
