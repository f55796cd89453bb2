#include "chered/weight.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace chered {

namespace {

std::complex<double> root_at(const CoxeterDatum<double>& w, int s, const CVec& z) {
  std::complex<double> v(0);
  for (int j = 0; j < w.rank; ++j) v += w.pos_roots[size_t(s)][size_t(j)] * z(j);
  return v;
}

double root_at_real(const CoxeterDatum<double>& w, int s, const std::vector<double>& x) {
  double v = 0;
  for (int j = 0; j < w.rank; ++j) v += w.pos_roots[size_t(s)][size_t(j)] * x[size_t(j)];
  return v;
}

bool same_chamber(const CoxeterDatum<double>& w, const std::vector<double>& x,
                  const std::vector<double>& y) {
  for (int s = 0; s < w.num_refl(); ++s)
    if ((root_at_real(w, s, x) > 0) != (root_at_real(w, s, y) > 0)) return false;
  return true;
}

}  // namespace

WeightContext WeightContext::build(const GroupContext<double>& ctx,
                                   const WIrrep<double>& rep, const ParamPoint& c,
                                   double rtol) {
  WeightContext wc;
  wc.kz = KZContext::build(ctx, rep);
  wc.c = c;
  wc.rtol = rtol;
  wc.form = invariant_form_solve(wc.kz, c, rtol);
  wc.kappa = central_reflection_scalar(ctx, rep, c);
  return wc;
}

WeightSample weight_along_path(const WeightContext& wc, const Path& path, const CMat& b) {
  Transport fc = transport(wc.kz, wc.c, Connection::ModifiedKZ, path, wc.rtol);
  Transport fcd = wc.c.real()
                      ? fc
                      : transport(wc.kz, wc.c.dagger(), Connection::ModifiedKZ, path, wc.rtol);
  WeightSample out;
  CVec end = path.end();
  out.x.resize(size_t(end.size()));
  for (long i = 0; i < end.size(); ++i) out.x[size_t(i)] = end(i).real();
  out.k = fcd.mat.adjoint().inverse() * b * fc.mat.inverse();
  out.accuracy = fc.err_estimate + fcd.err_estimate;
  return out;
}

WeightSample weight_from_monodromy(const WeightContext& wc, const std::vector<double>& x) {
  const CMat& b = wc.c.real() ? wc.form.b_hermitized : wc.form.b;
  Path path = same_chamber(wc.kz.W, wc.kz.x0, x)
                  ? Path::line(wc.kz.x0, x)
                  : Path::complex_bump(wc.kz.x0, x, wc.kz.x0, 1.0);
  if (path.clearance(wc.kz.W) < 1e-8)
    path = Path::complex_bump(wc.kz.x0, x, wc.kz.x0, 1.0);
  return weight_along_path(wc, path, b);
}

WeightSample two_sided_transport(const WeightContext& wc, const WeightSample& from,
                                 const Path& path) {
  int d = wc.kz.rep.dim;
  std::vector<CMat> rho;
  for (int s = 0; s < wc.kz.W.num_refl(); ++s) rho.push_back(wc.kz.rho_c(s));
  WeightSample out;
  CMat state = from.k;
  double err = from.accuracy;
  long steps = 0;
  for (const auto& seg : path.segments) {
    auto deriv = [&](double t, const CMat& k) {
      CVec z = seg.at(t), dz = seg.deriv(t);
      CMat r = CMat::Zero(d, d);
      for (int s = 0; s < wc.kz.W.num_refl(); ++s) {
        std::complex<double> cs = wc.c.values[size_t(wc.kz.W.refl_class[size_t(s)])];
        if (cs == std::complex<double>(0.0)) continue;
        std::complex<double> num(0);
        for (int j = 0; j < wc.kz.W.rank; ++j)
          num += wc.kz.W.pos_roots[size_t(s)][size_t(j)] * dz(j);
        r -= cs * (num / root_at(wc.kz.W, s, z)) * (rho[size_t(s)] * k + k * rho[size_t(s)]);
      }
      return r;
    };
    OdeResult r = integrate_dopri5_rhs(deriv, state, wc.rtol);
    state = r.state;
    err += r.err_estimate;
    steps += r.steps;
  }
  CVec end = path.end();
  out.x.resize(size_t(end.size()));
  for (long i = 0; i < end.size(); ++i) out.x[size_t(i)] = end(i).real();
  out.k = state;
  out.accuracy = err;
  return out;
}

double homogeneity_slope(const WeightContext& wc, const std::vector<double>& x,
                         int num_samples) {
  WeightSample base = weight_from_monodromy(wc, x);
  std::vector<double> logt, lognorm;
  logt.push_back(0);
  lognorm.push_back(std::log(base.k.norm()));
  WeightSample cur = base;
  std::vector<double> from = x;
  for (int k = 1; k < num_samples; ++k) {
    std::vector<double> to = from;
    for (auto& v : to) v *= 2;
    cur = two_sided_transport(wc, cur, Path::line(from, to));
    from = to;
    logt.push_back(k * std::log(2.0));
    lognorm.push_back(std::log(cur.k.norm()));
  }
  double n = double(logt.size());
  double sx = std::accumulate(logt.begin(), logt.end(), 0.0);
  double sy = std::accumulate(lognorm.begin(), lognorm.end(), 0.0);
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < logt.size(); ++i) {
    sxx += logt[i] * logt[i];
    sxy += logt[i] * lognorm[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CMat FrobeniusSolution::q_at(double z1) const {
  CMat out = CMat::Zero(coeffs[0].rows(), coeffs[0].cols());
  double p = 1;
  for (const auto& c : coeffs) {
    out += p * c;
    p *= z1;
  }
  return out;
}

CMat FrobeniusSolution::fundamental_at(double z1) const {
  if (z1 <= 0) throw std::invalid_argument("fundamental_at needs z1 > 0");
  CMat za = (std::log(z1) * a).exp();
  return q_at(z1) * za;
}

FrobeniusSolution frobenius_wall_solution(const WeightContext& wc, int simple_index,
                                          int order) {
  const auto& w = wc.kz.W;
  int d = wc.kz.rep.dim;
  int sw = w.simple[size_t(simple_index)];
  FrobeniusSolution out;
  out.wall = simple_index;
  // Wall point: projection of x0; direction u with alpha_i(u) = 1.
  double ax = root_at_real(w, sw, wc.kz.x0);
  out.wall_point = wc.kz.x0;
  out.direction.assign(size_t(w.rank), 0.0);
  for (int j = 0; j < w.rank; ++j) {
    out.wall_point[size_t(j)] -= ax / 2.0 * w.pos_coroots[size_t(sw)][size_t(j)];
    out.direction[size_t(j)] = w.pos_coroots[size_t(sw)][size_t(j)] / 2.0;
  }
  std::complex<double> ci = wc.c.values[size_t(w.refl_class[size_t(sw)])];
  out.a = ci * wc.kz.rho_c(sw);

  // Radius: nearest other-singularity along the line x_w + z1 u.
  out.radius = std::numeric_limits<double>::infinity();
  std::vector<double> au(size_t(w.num_refl())), axw(size_t(w.num_refl()));
  for (int s = 0; s < w.num_refl(); ++s) {
    au[size_t(s)] = root_at_real(w, s, out.direction);
    axw[size_t(s)] = root_at_real(w, s, out.wall_point);
    if (s == sw || std::fabs(au[size_t(s)]) < 1e-14) continue;
    out.radius = std::min(out.radius, std::fabs(axw[size_t(s)] / au[size_t(s)]));
  }

  // Recursion p_n (n + a) - a p_n = sum_k a_k p_{n-k}, p_0 = Id, where
  // a_k = sum_{s != wall} c_s (-1)^{k-1} (alpha_s(u)/alpha_s(x_w))^k rho_s.
  out.coeffs.push_back(CMat::Identity(d, d));
  std::vector<CMat> ak(size_t(order) + 1, CMat::Zero(d, d));
  for (int s = 0; s < w.num_refl(); ++s) {
    if (s == sw || std::fabs(au[size_t(s)]) < 1e-14) continue;
    std::complex<double> cs = wc.c.values[size_t(w.refl_class[size_t(s)])];
    if (cs == std::complex<double>(0.0)) continue;
    double ratio = au[size_t(s)] / axw[size_t(s)];
    double pw = ratio;
    CMat rho = wc.kz.rho_c(s);
    for (int k = 1; k <= order; ++k) {
      ak[size_t(k)] += cs * ((k % 2 == 1) ? pw : -pw) * rho;
      pw *= ratio;
    }
  }
  long n2 = long(d) * d;
  CMat id = CMat::Identity(d, d);
  for (int n = 1; n <= order; ++n) {
    CMat rhs = CMat::Zero(d, d);
    for (int k = 1; k <= n; ++k) rhs += ak[size_t(k)] * out.coeffs[size_t(n - k)];
    // Sylvester solve X (n + a) - a X = rhs via Kronecker form.
    Eigen::MatrixXcd sys(n2, n2);
    CMat na = double(n) * id + out.a;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            std::complex<double> v = 0;
            if (i == k) v += na(l, j);  // right multiplication
            if (j == l) v -= out.a(i, k);
            sys(long(j) * d + i, long(l) * d + k) = v;
          }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (smin < 1e-10 * std::max(smax, 1.0))
      throw std::runtime_error("Frobenius recursion resonant at n = " + std::to_string(n) +
                               " (c on a half-integer wall)");
    Eigen::VectorXcd vrhs(n2);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) vrhs(long(j) * d + i) = rhs(i, j);
    Eigen::VectorXcd sol = svd.solve(vrhs);
    CMat pn(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) pn(i, j) = sol(long(j) * d + i);
    out.coeffs.push_back(pn);
  }
  double zeval = 0.3 * out.radius;
  out.tail_estimate = out.coeffs.back().norm() * std::pow(zeval, order);
  return out;
}

WallInvarianceReport asymptotic_invariance_check(const WeightContext& wc,
                                                 int simple_index, int order,
                                                 const CMat* b_override) {
  const auto& w = wc.kz.W;
  FrobeniusSolution fr = frobenius_wall_solution(wc, simple_index, order);
  // For real c the c-dagger series coincides; complex c would need both.
  if (!wc.c.real())
    throw std::invalid_argument("asymptotic invariance check implemented for real c");
  double z1 = 0.3 * fr.radius;
  std::vector<double> zstar = fr.wall_point;
  for (int j = 0; j < w.rank; ++j) zstar[size_t(j)] += z1 * fr.direction[size_t(j)];

  Transport fc = transport(wc.kz, wc.c, Connection::ModifiedKZ,
                           Path::line(wc.kz.x0, zstar), wc.rtol);
  CMat nloc = fr.fundamental_at(z1);
  CMat cc = nloc.inverse() * fc.mat;
  const CMat& b = b_override ? *b_override : wc.form.b_hermitized;
  WallInvarianceReport out;
  out.k_i = cc.adjoint().inverse() * b * cc.inverse();
  out.z1_used = z1;
  int d = wc.kz.rep.dim;
  CMat rho = wc.kz.rho_c(w.simple[size_t(simple_index)]);
  CMat ep = 0.5 * (CMat::Identity(d, d) + rho);
  CMat em = 0.5 * (CMat::Identity(d, d) - rho);
  out.off_block_norm = (ep * out.k_i * em).norm() + (em * out.k_i * ep).norm();
  out.k_i_norm = out.k_i.norm();
  return out;
}

// ---------------------------------------------------------------------------
// Quadrature (rank <= 2)
// ---------------------------------------------------------------------------

VPoly VPoly::monomial(const std::vector<int>& expo, int dim, int lambda_index) {
  VPoly p;
  p.nvars = int(expo.size());
  p.dim = dim;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  v(lambda_index) = 1.0;
  p.terms.push_back({expo, v});
  return p;
}

int VPoly::degree() const {
  int d = 0;
  for (const auto& [e, v] : terms) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>* nodes, std::vector<double>* weights) {
  nodes->assign(size_t(n), 0.0);
  weights->assign(size_t(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1);
    (*nodes)[size_t(i)] = x;
    (*weights)[size_t(i)] = 2.0 / ((1 - x * x) * dp * dp);
  }
}

// Integral_0^inf r^a e^{-r^2/2} dr = 2^{(a-1)/2} Gamma((a+1)/2).
double radial_moment(double a) {
  if (a <= -1)
    throw std::domain_error("quadrature: radial exponent not integrable (needs shift)");
  return std::exp(0.5 * (a - 1) * std::log(2.0) + std::lgamma(0.5 * (a + 1)));
}

// Per-degree angular parts P_d(u) of a VPoly at the unit point u.
std::vector<Eigen::VectorXd> angular_parts(const VPoly& p, const std::vector<double>& u,
                                           int max_deg) {
  std::vector<Eigen::VectorXd> out(size_t(max_deg) + 1, Eigen::VectorXd::Zero(p.dim));
  for (const auto& [e, v] : p.terms) {
    int deg = 0;
    double val = 1;
    for (size_t j = 0; j < e.size(); ++j) {
      deg += e[j];
      for (int k = 0; k < e[j]; ++k) val *= u[j];
    }
    if (deg <= max_deg) out[size_t(deg)] += val * v;
  }
  return out;
}

VPoly transform_vpoly(const VPoly& p, const Matrix<double>& wmat, const CMat& rho_inv) {
  VPoly out;
  out.nvars = p.nvars;
  out.dim = p.dim;
  std::map<std::vector<int>, Eigen::VectorXd> acc;
  for (const auto& [e, v] : p.terms) {
    MPoly<double> mono = MPoly<double>::monomial(p.nvars, e);
    MPoly<double> moved = mono.substitute_linear(wmat);
    Eigen::VectorXd mixed = Eigen::VectorXd::Zero(p.dim);
    Eigen::VectorXcd mv = rho_inv * v.cast<std::complex<double>>();
    for (int i = 0; i < p.dim; ++i) mixed(i) = mv(i).real();
    for (const auto& [me, mc] : moved.terms()) {
      auto it = acc.find(me);
      if (it == acc.end())
        acc[me] = mc * mixed;
      else
        it->second += mc * mixed;
    }
  }
  for (auto& [e, v] : acc)
    if (v.cwiseAbs().maxCoeff() > 1e-14) out.terms.push_back({e, v});
  return out;
}

struct AngularNode {
  double theta = 0;
  double weight = 0;       // GL weight * panel halfwidth
  std::vector<double> u;   // unit point
  CMat k;                  // K(u)
  double dist_left = 0, dist_right = 0;  // distance to the sector walls
};

}  // namespace

std::vector<std::complex<double>> weight_integrals(
    const WeightContext& wc, const std::vector<std::pair<VPoly, VPoly>>& pairs,
    const QuadratureOptions& opts) {
  const auto& w = wc.kz.W;
  if (!wc.c.real()) throw std::invalid_argument("quadrature implemented for real c");
  double kappa = wc.kappa.real();
  int nrefl = w.num_refl();
  int shift_power = 2 * opts.shift * nrefl;  // degree of delta^{2N}

  // Precompute lambda actions of all elements and their matrices.
  auto elements = enumerate_group(w);
  std::vector<CMat> rho_el;
  for (const auto& el : elements) {
    Matrix<double> m = irrep_matrix(wc.kz.rep, el.word);
    CMat cm(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) cm(i, j) = m(i, j);
    rho_el.push_back(cm);
  }

  std::vector<std::complex<double>> totals(pairs.size(), 0.0);

  if (w.rank == 1) {
    // Two chambers; no angular integral.
    WeightSample kp = weight_from_monodromy(wc, {1.0});
    WeightSample km = weight_from_monodromy(wc, {-1.0});
    for (size_t pi = 0; pi < pairs.size(); ++pi) {
      const VPoly& p = pairs[pi].first;
      const VPoly& q = pairs[pi].second;
      int maxd = std::max(p.degree(), q.degree());
      for (int side = 0; side < 2; ++side) {
        std::vector<double> u = {side == 0 ? 1.0 : -1.0};
        auto pd = angular_parts(p, u, maxd);
        auto qd = angular_parts(q, u, maxd);
        const CMat& k = side == 0 ? kp.k : km.k;
        double du = std::fabs(root_at_real(w, 0, u));
        for (int d1 = 0; d1 <= maxd; ++d1)
          for (int d2 = 0; d2 <= maxd; ++d2) {
            double coeff = std::pow(du, 2 * opts.shift);
            double a = d1 + d2 + shift_power - 2 * kappa;
            std::complex<double> val =
                (qd[size_t(d2)].cast<std::complex<double>>().adjoint() * k *
                 pd[size_t(d1)].cast<std::complex<double>>())(0, 0);
            totals[pi] += coeff * radial_moment(a) * val;
          }
      }
    }
    return totals;
  }
  if (w.rank != 2)
    throw std::invalid_argument("quadrature implemented for rank <= 2 only");

  // Fundamental sector [th_a, th_b] containing x0.
  double th_x0 = std::atan2(wc.kz.x0[1], wc.kz.x0[0]);
  std::vector<double> wall_angles;
  for (int s = 0; s < nrefl; ++s) {
    double phi = std::atan2(w.pos_roots[size_t(s)][0], -w.pos_roots[size_t(s)][1]);
    // Line direction of ker alpha_s: (-b, a) for alpha = (a, b)... both senses.
    wall_angles.push_back(std::atan2(w.pos_roots[size_t(s)][0], -w.pos_roots[size_t(s)][1]));
    (void)phi;
  }
  std::vector<double> cuts;
  for (double phi : wall_angles) {
    double base = std::fmod(phi, M_PI);
    if (base < 0) base += M_PI;
    cuts.push_back(base);
    cuts.push_back(base + M_PI);
  }
  // The direction (-b, a) has angle atan2(a, -b); normalize to [0, 2 pi).
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
             cuts.end());
  double th_a = 0, th_b = 0;
  {
    double tx = th_x0 < 0 ? th_x0 + 2 * M_PI : th_x0;
    bool found = false;
    for (size_t i = 0; i < cuts.size(); ++i) {
      double lo = cuts[i];
      double hi = (i + 1 < cuts.size()) ? cuts[i + 1] : cuts[0] + 2 * M_PI;
      if (tx >= lo && tx <= hi) {
        th_a = lo;
        th_b = hi;
        found = true;
        break;
      }
    }
    if (!found) {
      th_a = cuts.back() - 2 * M_PI;
      th_b = cuts.front();
    }
  }

  // Panel boundaries: geometric grading toward both sector walls.
  double mid = 0.5 * (th_a + th_b), half = 0.5 * (th_b - th_a);
  std::vector<std::pair<double, double>> panels;
  for (int k = opts.grading_levels - 1; k >= 0; --k)
    panels.push_back({th_a + half * std::ldexp(1.0, -k - 1), th_a + half * std::ldexp(1.0, -k)});
  for (int k = 0; k < opts.grading_levels; ++k)
    panels.push_back({th_b - half * std::ldexp(1.0, -k), th_b - half * std::ldexp(1.0, -k - 1)});
  std::sort(panels.begin(), panels.end());

  std::vector<double> gl_nodes, gl_weights;
  gauss_legendre(opts.gauss_points, &gl_nodes, &gl_weights);

  // Assemble nodes and transport K along the unit arc outward from mid.
  std::vector<AngularNode> nodes;
  for (const auto& [lo, hi] : panels)
    for (int g = 0; g < opts.gauss_points; ++g) {
      AngularNode node;
      node.theta = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl_nodes[size_t(g)];
      node.weight = 0.5 * (hi - lo) * gl_weights[size_t(g)];
      node.u = {std::cos(node.theta), std::sin(node.theta)};
      node.dist_left = node.theta - th_a;
      node.dist_right = th_b - node.theta;
      nodes.push_back(node);
    }
  std::sort(nodes.begin(), nodes.end(),
            [&](const AngularNode& a, const AngularNode& b) { return a.theta < b.theta; });
  {
    std::vector<double> umid = {std::cos(mid), std::sin(mid)};
    WeightSample center = weight_from_monodromy(wc, umid);
    auto arc_path = [&](double th_from, double th_to) {
      PathSegment seg;
      seg.kind = PathSegment::Kind::RealArc;
      seg.center = to_cvec({1.0, 0.0});
      seg.lift = to_cvec({0.0, 1.0});
      seg.th0 = th_from;
      seg.th1 = th_to;
      Path p;
      p.segments.push_back(seg);
      return p;
    };
    // Left of mid (descending) and right of mid (ascending).
    WeightSample cur = center;
    double cur_th = mid;
    for (int i = int(nodes.size()) - 1; i >= 0; --i) {
      if (nodes[size_t(i)].theta > mid) continue;
      cur = two_sided_transport(wc, cur, arc_path(cur_th, nodes[size_t(i)].theta));
      cur_th = nodes[size_t(i)].theta;
      nodes[size_t(i)].k = cur.k;
    }
    cur = center;
    cur_th = mid;
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].theta <= mid) continue;
      cur = two_sided_transport(wc, cur, arc_path(cur_th, nodes[i].theta));
      cur_th = nodes[i].theta;
      nodes[i].k = cur.k;
    }
  }

  // Wall classes at the two sector boundaries (for tail corrections).
  auto wall_class_at = [&](double th) {
    for (int s = 0; s < nrefl; ++s) {
      std::vector<double> u = {std::cos(th), std::sin(th)};
      if (std::fabs(root_at_real(w, s, u)) < 1e-9) return w.refl_class[size_t(s)];
    }
    return -1;
  };
  int cls_left = wall_class_at(th_a), cls_right = wall_class_at(th_b);
  double c_left = cls_left >= 0 ? wc.c.values[size_t(cls_left)].real() : 0;
  double c_right = cls_right >= 0 ? wc.c.values[size_t(cls_right)].real() : 0;

  // Per group element: transformed polynomial pairs; accumulate.
  for (size_t pi = 0; pi < pairs.size(); ++pi) {
    const VPoly& p0 = pairs[pi].first;
    const VPoly& q0 = pairs[pi].second;
    int maxd = std::max(p0.degree(), q0.degree());
    std::complex<double> total = 0;
    for (size_t ei = 0; ei < elements.size(); ++ei) {
      VPoly p = transform_vpoly(p0, elements[ei].mat, rho_el[ei].adjoint());
      VPoly q = transform_vpoly(q0, elements[ei].mat, rho_el[ei].adjoint());
      std::complex<double> sector = 0;
      std::complex<double> edge_left = 0, edge_right = 0;
      double edge_left_th = std::numeric_limits<double>::infinity();
      double edge_right_th = std::numeric_limits<double>::infinity();
      for (const auto& node : nodes) {
        auto pd = angular_parts(p, node.u, maxd);
        auto qd = angular_parts(q, node.u, maxd);
        double delta_u = 1;
        for (int s = 0; s < nrefl; ++s) delta_u *= root_at_real(w, s, node.u);
        double delta_pow = std::pow(delta_u * delta_u, opts.shift);
        std::complex<double> val = 0;
        for (int d1 = 0; d1 <= maxd; ++d1)
          for (int d2 = 0; d2 <= maxd; ++d2) {
            if (pd[size_t(d1)].isZero(0) || qd[size_t(d2)].isZero(0)) continue;
            double a = d1 + d2 + shift_power - 2 * kappa + 1;  // + r dr measure
            std::complex<double> g =
                (qd[size_t(d2)].cast<std::complex<double>>().adjoint() * node.k *
                 pd[size_t(d1)].cast<std::complex<double>>())(0, 0);
            val += radial_moment(a) * g;
          }
        val *= delta_pow;
        sector += node.weight * val;
        // Track innermost samples for the power-law tail correction.
        if (node.dist_left < edge_left_th) {
          edge_left = val;
          edge_left_th = node.dist_left;
        }
        if (node.dist_right < edge_right_th) {
          edge_right = val;
          edge_right_th = node.dist_right;
        }
      }
      // Tail corrections on the unresolved slivers [0, eps] at each wall:
      // integrand ~ A d^{2N - 2c}; A fitted at the innermost node.
      double eps = half * std::ldexp(1.0, -opts.grading_levels);
      if (std::isfinite(edge_left_th)) {
        double expo = 2 * opts.shift - 2 * c_left;
        std::complex<double> amp = edge_left * std::pow(edge_left_th, -expo);
        sector += amp * std::pow(eps, expo + 1) / (expo + 1);
      }
      if (std::isfinite(edge_right_th)) {
        double expo = 2 * opts.shift - 2 * c_right;
        std::complex<double> amp = edge_right * std::pow(edge_right_th, -expo);
        sector += amp * std::pow(eps, expo + 1) / (expo + 1);
      }
      total += sector;
    }
    totals[pi] = total;
  }
  return totals;
}

std::complex<double> weight_integral(const WeightContext& wc, const VPoly& p,
                                     const VPoly& q, const QuadratureOptions& opts) {
  return weight_integrals(wc, {{p, q}}, opts)[0];
}

std::complex<double> weight_normalization(const WeightContext& wc,
                                          const QuadratureOptions& opts,
                                          double* deviation) {
  int d = wc.kz.rep.dim;
  std::vector<std::pair<VPoly, VPoly>> pairs;
  std::vector<int> zero(size_t(wc.kz.W.rank), 0);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      pairs.push_back({VPoly::monomial(zero, d, b), VPoly::monomial(zero, d, a)});
  QuadratureOptions o = opts;
  o.shift = 0;
  auto vals = weight_integrals(wc, pairs, o);
  CMat m(d, d);
  size_t idx = 0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) m(a, b) = vals[idx++];
  std::complex<double> zeta = m.trace() / double(d);
  if (deviation) {
    CMat dev = m - zeta * CMat::Identity(d, d);
    *deviation = dev.norm() / std::max(std::abs(zeta), 1e-300);
  }
  return zeta;
}

SupportReport support_report(const WeightContext& wc) {
  SupportReport out;
  auto elements = enumerate_group(wc.kz.W);
  for (const auto& el : elements) {
    std::vector<double> x(size_t(wc.kz.W.rank), 0.0);
    for (int i = 0; i < wc.kz.W.rank; ++i)
      for (int j = 0; j < wc.kz.W.rank; ++j)
        x[size_t(i)] += el.mat(i, j) * wc.kz.x0[size_t(j)];
    WeightSample s = weight_from_monodromy(wc, x);
    out.chamber_norms.push_back(s.k.norm());
  }
  double mn = *std::min_element(out.chamber_norms.begin(), out.chamber_norms.end());
  double mx = *std::max_element(out.chamber_norms.begin(), out.chamber_norms.end());
  out.min_over_max = mx > 0 ? mn / mx : 0;
  out.full_support = out.min_over_max > 1e-6;
  return out;
}

}  // namespace chered
