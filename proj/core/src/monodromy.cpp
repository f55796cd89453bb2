#include "chered/monodromy.hpp"

#include <Eigen/SVD>

#include <stdexcept>

namespace chered {

KZContext KZContext::build(const GroupContext<double>& ctx, const WIrrep<double>& rep) {
  KZContext kz;
  kz.W = ctx.W;
  kz.rep = rep;
  for (int s = 0; s < ctx.W.num_refl(); ++s) {
    const auto& word = ctx.elements[size_t(ctx.refl_element[size_t(s)])].word;
    kz.rho.push_back(irrep_matrix(rep, word));
  }
  kz.x0 = chamber_basepoint(ctx.W);
  return kz;
}

CMat KZContext::rho_c(int s) const {
  const auto& m = rho[size_t(s)];
  CMat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

namespace {

std::complex<double> root_at(const CoxeterDatum<double>& w, int s, const CVec& z) {
  std::complex<double> v(0);
  for (int j = 0; j < w.rank; ++j) v += w.pos_roots[size_t(s)][size_t(j)] * z(j);
  return v;
}

}  // namespace

Transport transport(const KZContext& kz, const ParamPoint& c, Connection kind,
                    const Path& path, double rtol) {
  int d = kz.rep.dim;
  Transport out;
  out.path_clearance = path.clearance(kz.W);
  if (out.path_clearance < 1e-8)
    throw std::runtime_error("path clearance violated (touches a reflection hyperplane)");
  CMat id = CMat::Identity(d, d);
  std::vector<CMat> terms;  // per reflection: (1 - rho_s) or -rho_s
  for (int s = 0; s < kz.W.num_refl(); ++s) {
    if (kind == Connection::KZ)
      terms.push_back(-(id - kz.rho_c(s)));  // flat section: dF = -A F
    else
      terms.push_back(kz.rho_c(s));
  }
  CMat state = id;
  for (const auto& seg : path.segments) {
    auto coeff = [&](double t) {
      CVec z = seg.at(t), dz = seg.deriv(t);
      CMat a = CMat::Zero(d, d);
      for (int s = 0; s < kz.W.num_refl(); ++s) {
        std::complex<double> cs = c.values[size_t(kz.W.refl_class[size_t(s)])];
        if (cs == std::complex<double>(0.0)) continue;
        std::complex<double> num(0);
        for (int j = 0; j < kz.W.rank; ++j) num += kz.W.pos_roots[size_t(s)][size_t(j)] * dz(j);
        a += cs * (num / root_at(kz.W, s, z)) * terms[size_t(s)];
      }
      return a;
    };
    OdeResult r = integrate_dopri5(coeff, state, rtol);
    state = r.state;
    out.steps += r.steps;
    out.err_estimate += r.err_estimate;
  }
  out.mat = state;
  return out;
}

BraidGenerators braid_generators(const KZContext& kz, const ParamPoint& c, double rtol) {
  BraidGenerators out;
  for (size_t i = 0; i < kz.W.simple.size(); ++i) {
    Path loop = Path::half_loop(kz.W, kz.x0, int(i));
    Transport tr = transport(kz, c, Connection::KZ, loop, rtol);
    out.t.push_back(kz.rho_c(kz.W.simple[i]) * tr.mat);
    out.paths.push_back(loop);
    out.max_err = std::max(out.max_err, tr.err_estimate);
  }
  return out;
}

std::complex<double> hecke_q(const KZContext& kz, const ParamPoint& c, int simple_index) {
  int cls = kz.W.refl_class[size_t(kz.W.simple[size_t(simple_index)])];
  std::complex<double> cs = c.values[size_t(cls)];
  return std::exp(std::complex<double>(0, -2 * M_PI) * cs);
}

HeckeReport hecke_check(const KZContext& kz, const ParamPoint& c,
                        const BraidGenerators& gens) {
  HeckeReport out;
  int d = kz.rep.dim;
  CMat id = CMat::Identity(d, d);
  for (size_t i = 0; i < gens.t.size(); ++i) {
    std::complex<double> q = hecke_q(kz, c, int(i));
    double res = ((gens.t[i] - id) * (gens.t[i] + q * id)).norm();
    out.quadratic_residual.push_back(res);
    out.max_residual = std::max(out.max_residual, res);
  }
  for (size_t i = 0; i < gens.t.size(); ++i)
    for (size_t j = i + 1; j < gens.t.size(); ++j) {
      int m = kz.W.coxeter_m(int(i), int(j));
      CMat lhs = id, rhs = id;
      for (int k = 0; k < m; ++k) {
        lhs = lhs * (k % 2 == 0 ? gens.t[i] : gens.t[j]);
        rhs = rhs * (k % 2 == 0 ? gens.t[j] : gens.t[i]);
      }
      double res = (lhs - rhs).norm();
      out.braid_residual.push_back(res);
      out.max_residual = std::max(out.max_residual, res);
    }
  return out;
}

InvariantForm invariant_form_solve(const KZContext& kz, const ParamPoint& c,
                                   double rtol) {
  int d = kz.rep.dim;
  BraidGenerators gen_c = braid_generators(kz, c, rtol);
  ParamPoint cdag = c.dagger();
  BraidGenerators gen_cd =
      c.real() ? gen_c : braid_generators(kz, cdag, rtol);

  // Condition: T_{i,cdag}^dagger B T_{i,c} = B, i.e. (T_c^T (x) T_cd^dagger -
  // Id) vec(B) = 0 in column-major vec convention.
  long n = long(d) * d;
  Eigen::MatrixXcd sys(n * long(gen_c.t.size()), n);
  for (size_t g = 0; g < gen_c.t.size(); ++g) {
    CMat a = gen_cd.t[g].adjoint();
    CMat bm = gen_c.t[g];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l)
            sys(long(g) * n + long(j) * d + i, long(l) * d + k) =
                a(i, k) * bm(l, j) - ((i == k && j == l) ? 1.0 : 0.0);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys, Eigen::ComputeThinV);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  InvariantForm out;
  out.solution_space_dim = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) <= 1e-8 * std::max(smax, 1.0)) out.solution_space_dim++;
  if (out.solution_space_dim == 0)
    throw std::runtime_error("invariant form system has no solution (unexpected)");

  // Least-norm representative: the nullspace is spanned by the trailing
  // right singular vectors; pick the combination with Tr B = dim(lambda),
  // defaulting to the last vector when unique.
  Eigen::VectorXcd vecb;
  {
    Eigen::MatrixXcd null_basis = svd.matrixV().rightCols(out.solution_space_dim);
    // Trace functional on vec(B).
    Eigen::RowVectorXcd tracef = Eigen::RowVectorXcd::Zero(n);
    for (int i = 0; i < d; ++i) tracef(long(i) * d + i) = 1.0;
    Eigen::RowVectorXcd tr_on_null = tracef * null_basis;
    double tn = tr_on_null.norm();
    if (tn > 1e-10) {
      // Least-norm coefficient vector with (tr_on_null) x = dim.
      Eigen::VectorXcd coeff =
          tr_on_null.adjoint() * (double(d) / (tr_on_null * tr_on_null.adjoint())(0, 0));
      vecb = null_basis * coeff;
      out.trace_normalized = true;
    } else {
      vecb = null_basis.col(out.solution_space_dim - 1);
      // Fix the phase so the largest diagonal entry is real positive.
      std::complex<double> piv(0);
      for (int i = 0; i < d; ++i)
        if (std::abs(vecb(long(i) * d + i)) > std::abs(piv)) piv = vecb(long(i) * d + i);
      if (std::abs(piv) > 0) vecb *= std::abs(piv) / piv * double(d) / std::abs(piv);
      out.trace_normalized = false;
    }
  }
  CMat b(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) b(i, j) = vecb(long(j) * d + i);
  out.b = b;
  double bnorm = std::max(b.norm(), 1e-300);
  for (size_t g = 0; g < gen_c.t.size(); ++g) {
    CMat lhs = gen_cd.t[g].adjoint().inverse() * b * gen_c.t[g].inverse();
    out.invariance_residual = std::max(out.invariance_residual, (lhs - b).norm() / bnorm);
  }
  out.hermiticity_defect = (b - b.adjoint()).norm() / bnorm;
  out.b_hermitized = 0.5 * (b + b.adjoint());
  return out;
}

KZFormInertia kz_form_inertia(const CMat& b_herm, double rel_threshold) {
  Eigen::SelfAdjointEigenSolver<CMat> es(b_herm, Eigen::EigenvaluesOnly);
  KZFormInertia out;
  double emax = es.eigenvalues().cwiseAbs().maxCoeff();
  double thr = rel_threshold * std::max(emax, 1e-300);
  out.min_kept_eigenvalue = std::numeric_limits<double>::infinity();
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double ev = es.eigenvalues()(i);
    if (std::fabs(ev) <= thr) {
      out.radical++;
    } else {
      (ev > 0 ? out.p : out.q)++;
      out.min_kept_eigenvalue = std::min(out.min_kept_eigenvalue, std::fabs(ev));
      if (std::fabs(ev) < 10 * thr) out.margin_ok = false;
    }
  }
  if (out.p + out.q == 0) out.min_kept_eigenvalue = 0;
  out.dim_kz_l = int(b_herm.rows()) - out.radical;
  return out;
}

}  // namespace chered
