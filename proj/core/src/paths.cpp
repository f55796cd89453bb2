#include "chered/paths.hpp"

#include <stdexcept>

namespace chered {

CVec PathSegment::at(double t) const {
  switch (kind) {
    case Kind::Line:
      return a + t * (b - a);
    case Kind::Arc: {
      std::complex<double> phase =
          std::exp(std::complex<double>(0, th0 + t * (th1 - th0)));
      return center + phase * radius;
    }
    case Kind::Bump: {
      std::complex<double> ih(0, height * t * (1 - t));
      return (1 - t) * a + t * b + ih * lift;
    }
    case Kind::RealArc: {
      double th = th0 + t * (th1 - th0);
      return std::cos(th) * center + std::sin(th) * lift;
    }
  }
  throw std::logic_error("unreachable");
}

CVec PathSegment::deriv(double t) const {
  switch (kind) {
    case Kind::Line:
      return b - a;
    case Kind::Arc: {
      std::complex<double> phase =
          std::exp(std::complex<double>(0, th0 + t * (th1 - th0)));
      return std::complex<double>(0, th1 - th0) * phase * radius;
    }
    case Kind::Bump: {
      std::complex<double> ih(0, height * (1 - 2 * t));
      return b - a + ih * lift;
    }
    case Kind::RealArc: {
      double th = th0 + t * (th1 - th0);
      return (th1 - th0) * (-std::sin(th) * center + std::cos(th) * lift);
    }
  }
  throw std::logic_error("unreachable");
}

Path Path::line(const std::vector<double>& from, const std::vector<double>& to) {
  PathSegment seg;
  seg.kind = PathSegment::Kind::Line;
  seg.a = to_cvec(from);
  seg.b = to_cvec(to);
  Path p;
  p.segments.push_back(seg);
  return p;
}

Path Path::complex_bump(const std::vector<double>& from, const std::vector<double>& to,
                        const std::vector<double>& lift, double height) {
  PathSegment seg;
  seg.kind = PathSegment::Kind::Bump;
  seg.a = to_cvec(from);
  seg.b = to_cvec(to);
  seg.lift = to_cvec(lift);
  seg.height = height;
  Path p;
  p.segments.push_back(seg);
  return p;
}

Path Path::half_loop(const CoxeterDatum<double>& w, const std::vector<double>& x0,
                     int simple_index, double radius_frac) {
  int s = w.simple[size_t(simple_index)];
  double ax = 0;
  for (int j = 0; j < w.rank; ++j) ax += w.pos_roots[size_t(s)][size_t(j)] * x0[size_t(j)];
  if (ax <= 0) throw std::invalid_argument("half_loop: x0 not in the fundamental chamber");
  std::vector<double> proj(x0), udir(size_t(w.rank));
  for (int j = 0; j < w.rank; ++j) {
    proj[size_t(j)] -= ax / 2.0 * w.pos_coroots[size_t(s)][size_t(j)];
    udir[size_t(j)] = x0[size_t(j)] - proj[size_t(j)];
  }
  std::vector<double> arc_in(proj), arc_out(proj), reflected(proj);
  for (int j = 0; j < w.rank; ++j) {
    arc_in[size_t(j)] += radius_frac * udir[size_t(j)];
    arc_out[size_t(j)] -= radius_frac * udir[size_t(j)];
    reflected[size_t(j)] -= udir[size_t(j)];
  }
  Path p = Path::line(x0, arc_in);
  PathSegment arc;
  arc.kind = PathSegment::Kind::Arc;
  arc.center = to_cvec(proj);
  CVec r(long(w.rank));
  for (int j = 0; j < w.rank; ++j) r(j) = radius_frac * udir[size_t(j)];
  arc.radius = r;
  arc.th0 = 0;
  arc.th1 = M_PI;
  p.segments.push_back(arc);
  Path tail = Path::line(arc_out, reflected);
  p.segments.push_back(tail.segments[0]);
  return p;
}

Path Path::reversed() const {
  Path p;
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    PathSegment seg = *it;
    switch (seg.kind) {
      case PathSegment::Kind::Line:
      case PathSegment::Kind::Bump:
        std::swap(seg.a, seg.b);
        break;
      case PathSegment::Kind::Arc:
      case PathSegment::Kind::RealArc:
        std::swap(seg.th0, seg.th1);
        break;
    }
    p.segments.push_back(seg);
  }
  return p;
}

Path Path::then(const Path& next) const {
  Path p = *this;
  if ((end() - next.start()).norm() > 1e-9)
    throw std::invalid_argument("path composition endpoints disagree");
  for (const auto& seg : next.segments) p.segments.push_back(seg);
  return p;
}

double Path::clearance(const CoxeterDatum<double>& w, int samples_per_segment) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& seg : segments)
    for (int k = 0; k <= samples_per_segment; ++k) {
      CVec z = seg.at(double(k) / samples_per_segment);
      for (int s = 0; s < w.num_refl(); ++s) {
        std::complex<double> v(0);
        double nrm = 0;
        for (int j = 0; j < w.rank; ++j) {
          v += w.pos_roots[size_t(s)][size_t(j)] * z(j);
          nrm += w.pos_roots[size_t(s)][size_t(j)] * w.pos_roots[size_t(s)][size_t(j)];
        }
        best = std::min(best, std::abs(v) / std::sqrt(nrm));
      }
    }
  return best;
}

}  // namespace chered
