#include "chered/jantzen.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace chered {

namespace {

using PExact = Poly<Exact>;

// Indices usable as pivots of a symmetric elimination of A (so the principal
// submatrix on them is invertible and carries the full rank).
std::vector<int> symmetric_pivot_indices(Matrix<Exact> a) {
  int n = a.rows();
  std::vector<int> act(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) act[size_t(i)] = i;
  std::vector<int> used;
  while (!act.empty()) {
    int pi = -1;
    for (size_t k = 0; k < act.size(); ++k)
      if (!a(act[k], act[k]).is_zero()) {
        pi = int(k);
        break;
      }
    if (pi >= 0) {
      int i = act[size_t(pi)];
      used.push_back(i);
      Exact inv = a(i, i).inv();
      act.erase(act.begin() + pi);
      for (int r : act) {
        if (a(r, i).is_zero()) continue;
        Exact f = a(r, i) * inv;
        for (int c : act) a(r, c) -= f * a(i, c);
      }
      continue;
    }
    int oi = -1, oj = -1;
    for (size_t k = 0; k < act.size() && oi < 0; ++k)
      for (size_t l = k + 1; l < act.size(); ++l)
        if (!a(act[k], act[l]).is_zero()) {
          oi = int(k);
          oj = int(l);
          break;
        }
    if (oi < 0) break;
    int i = act[size_t(oi)], j = act[size_t(oj)];
    used.push_back(i);
    used.push_back(j);
    Exact dinv = a(i, j).inv();
    act.erase(act.begin() + oj);
    act.erase(act.begin() + oi);
    for (int r : act) {
      Exact ri = a(r, i), rj = a(r, j);
      if (ri.is_zero() && rj.is_zero()) continue;
      for (int c : act) a(r, c) -= dinv * (ri * a(j, c) + rj * a(i, c));
    }
  }
  return used;
}

Matrix<Exact> value_at_zero(const Matrix<PExact>& n, const Exact& den0) {
  Matrix<Exact> v(n.rows(), n.cols());
  Exact inv = den0.inv();
  for (int i = 0; i < n.rows(); ++i)
    for (int j = 0; j < n.cols(); ++j) v(i, j) = n(i, j).coeff(0) * inv;
  return v;
}

std::vector<PExact> pencil_values(const ParamPoint& c0, const ParamPoint& c1) {
  if (!c0.exact || !c1.exact)
    throw std::invalid_argument("Jantzen pencils need exact rational parameters");
  std::vector<PExact> out;
  for (size_t k = 0; k < c0.exact_values.size(); ++k) {
    std::vector<Exact> coeffs = {Exact(c0.exact_values[k]), Exact(c1.exact_values[k])};
    out.push_back(PExact(coeffs));
  }
  return out;
}

bool det_has_root_in_interval(const PExact& det, double s) {
  // Float scan for roots of det(t) in (0, s]: companion-matrix eigenvalues.
  int deg = det.degree();
  int val = det.valuation();
  if (deg <= val) return false;  // monomial: only root at 0
  std::vector<double> c;
  for (int k = val; k <= deg; ++k) c.push_back(FieldTraits<Exact>::to_double(det.coeff(k)));
  int n = int(c.size()) - 1;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[size_t(i)] / c[size_t(n)];
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
  for (int i = 0; i < n; ++i) {
    std::complex<double> z = es.eigenvalues()(i);
    if (std::fabs(z.imag()) < 1e-8 && z.real() > 1e-9 && z.real() <= s + 1e-9)
      return true;
  }
  return false;
}

}  // namespace

JantzenDegree jantzen_filtration(const StandardModule<Exact>& m, const ParamPoint& c0,
                                 const ParamPoint& c1, int degree) {
  JantzenDegree out;
  out.degree = degree;
  auto pencil = pencil_values(c0, c1);
  auto gram = beta_gram_sweep(m, pencil, degree);
  Matrix<PExact> g = gram[size_t(degree)];

  PExact det = det_poly(g);
  if (det.is_zero()) {
    out.skipped = true;
    out.error = "det G(t) vanishes identically: degenerate deformation direction";
    return out;
  }
  out.ord_det = det.valuation();

  Matrix<Exact> basis = Matrix<Exact>::identity(g.rows());
  Matrix<PExact> num = g;
  PExact den(Exact(1));
  int level = 0;
  while (true) {
    out.level_basis.push_back(basis);
    Exact den0 = den.coeff(0);
    Matrix<Exact> v = value_at_zero(num, den0);
    Inertia in = inertia_symmetric(v);
    out.levels.push_back({level, in.rank(), in});
    if (in.z == 0) break;
    if (level > out.ord_det)
      throw std::logic_error("Jantzen recursion exceeded ord det G");

    std::vector<int> ysel = symmetric_pivot_indices(v);
    Matrix<Exact> z = kernel_basis(v);
    int ny = int(ysel.size()), nz = z.cols();
    // Transform to coordinates [Y | Z].
    Matrix<Exact> t(v.rows(), ny + nz);
    for (int j = 0; j < ny; ++j) t(ysel[size_t(j)], j) = Exact(1);
    for (int j = 0; j < nz; ++j)
      for (int i = 0; i < v.rows(); ++i) t(i, ny + j) = z(i, j);
    Matrix<PExact> tp(t.rows(), t.cols());
    for (int i = 0; i < t.rows(); ++i)
      for (int j = 0; j < t.cols(); ++j) tp(i, j) = PExact(t(i, j));
    Matrix<PExact> nt = tp.transpose() * num * tp;
    // Blocks.
    auto block = [&](int r0, int c0b, int nr, int ncb) {
      Matrix<PExact> b(nr, ncb);
      for (int i = 0; i < nr; ++i)
        for (int j = 0; j < ncb; ++j) b(i, j) = nt(r0 + i, c0b + j);
      return b;
    };
    Matrix<PExact> nyy = block(0, 0, ny, ny);
    Matrix<PExact> nyz = block(0, ny, ny, nz);
    Matrix<PExact> nzy = block(ny, 0, nz, ny);
    Matrix<PExact> nzz = block(ny, ny, nz, nz);
    PExact dyy = det_poly(nyy);
    Matrix<PExact> adj = adjugate_poly(nyy);
    Matrix<PExact> schur = dyy * nzz - nzy * (adj * nyz);
    // Divide by t; a nonzero remainder falsifies the vanishing structure.
    Matrix<PExact> next(nz, nz);
    for (int i = 0; i < nz; ++i)
      for (int j = 0; j < nz; ++j) next(i, j) = schur(i, j).divided_by_variable();
    num = next;
    den = den * dyy;
    basis = basis * z;
    ++level;
  }

  // Valuation sum check: sum_k k dim^{(k)} = ord det.
  long val_sum = 0;
  for (const auto& lv : out.levels) val_sum += long(lv.level) * lv.dim;
  if (val_sum != out.ord_det)
    throw std::logic_error("Jantzen valuation sum disagrees with ord det G");
  return out;
}

SubmoduleCheck submodule_check(const StandardModule<Exact>& m, const ParamPoint& c0,
                               const std::vector<JantzenDegree>& filtration) {
  SubmoduleCheck out;
  std::vector<Exact> cv = class_values<Exact>(c0);
  int max_degree = int(filtration.size()) - 1;
  for (int d = 0; d <= max_degree; ++d) {
    const auto& fd = filtration[size_t(d)];
    if (fd.skipped) continue;
    for (size_t k = 1; k < fd.level_basis.size(); ++k) {
      const Matrix<Exact>& basis = fd.level_basis[k];
      for (int i = 0; i < m.rank(); ++i) {
        if (d + 1 <= max_degree && !filtration[size_t(d) + 1].skipped) {
          const auto& up = filtration[size_t(d) + 1];
          Matrix<Exact> target = k < up.level_basis.size()
                                     ? up.level_basis[k]
                                     : Matrix<Exact>(m.dim(d + 1), 0);
          Matrix<Exact> moved = m.mult_x(i, d) * basis;
          if (!columns_in_span(target, moved)) {
            out.ok = false;
            out.witness = "x_" + std::to_string(i) + " fails closure at degree " +
                          std::to_string(d) + " level " + std::to_string(k);
            return out;
          }
        }
        if (d >= 1 && !filtration[size_t(d) - 1].skipped) {
          const auto& down = filtration[size_t(d) - 1];
          Matrix<Exact> target = k < down.level_basis.size()
                                     ? down.level_basis[k]
                                     : Matrix<Exact>(m.dim(d - 1), 0);
          Matrix<Exact> moved = m.dunkl(i, d).eval(cv) * basis;
          if (!columns_in_span(target, moved)) {
            out.ok = false;
            out.witness = "D_y" + std::to_string(i) + " fails closure at degree " +
                          std::to_string(d) + " level " + std::to_string(k);
            return out;
          }
        }
      }
    }
  }
  return out;
}

WallCrossingReport wall_crossing_check(const StandardModule<Exact>& m,
                                       const ParamPoint& c0, const ParamPoint& c1,
                                       const Rat& s, int max_degree) {
  WallCrossingReport out;
  auto pencil = pencil_values(c0, c1);
  auto gram_pencil = beta_gram_sweep(m, pencil, max_degree);
  auto value_at = [&](int d, const Rat& t) {
    Exact te(t);
    const auto& g = gram_pencil[size_t(d)];
    Matrix<Exact> v(g.rows(), g.cols());
    for (int i = 0; i < g.rows(); ++i)
      for (int j = 0; j < g.cols(); ++j) v(i, j) = g(i, j)(te);
    return v;
  };
  double sd = to_double(s);
  for (int d = 0; d <= max_degree; ++d) {
    JantzenDegree jd = jantzen_filtration(m, c0, c1, d);
    if (jd.skipped) {
      out.failures.push_back("degree " + std::to_string(d) + " skipped: " + jd.error);
      continue;
    }
    PExact det = det_poly(gram_pencil[size_t(d)]);
    if (det_has_root_in_interval(det, sd)) out.wall_in_interval = true;

    Inertia plus = inertia_symmetric(value_at(d, s));
    Inertia minus = inertia_symmetric(value_at(d, -s));
    Inertia at_wall = inertia_symmetric(value_at(d, Rat(0)));
    long plus_expect = 0, minus_expect = 0, levels_ge1 = 0, odd_levels = 0;
    for (const auto& lv : jd.levels) {
      plus_expect += lv.inertia.signature();
      if (lv.level % 2 == 0)
        minus_expect += lv.inertia.signature();
      else
        minus_expect -= lv.inertia.signature();
      if (lv.level >= 1) levels_ge1 += lv.inertia.signature();
      if (lv.level % 2 == 1) odd_levels += lv.inertia.signature();
    }
    auto fail = [&](const std::string& what, long lhs, long rhs) {
      out.failures.push_back("degree " + std::to_string(d) + ": " + what + " " +
                             std::to_string(lhs) + " != " + std::to_string(rhs));
    };
    if (plus.signature() != plus_expect)
      fail("sign beta(c0 + s c1) vs sum of level signatures", plus.signature(),
           plus_expect);
    if (minus.signature() != minus_expect)
      fail("sign beta(c0 - s c1) vs alternating level sum", minus.signature(),
           minus_expect);
    // sch identities across the wall (degree-wise):
    if (plus.signature() != minus.signature() + 2 * odd_levels)
      fail("sch(Delta_{c(s)}) = sch(Delta_{c(-s)}) + 2 sum_{k odd}", plus.signature(),
           minus.signature() + 2 * odd_levels);
    if (at_wall.signature() != plus.signature() - levels_ge1)
      fail("sch(L_{c0}) = sch(Delta_{c(s)}) - sum_{k >= 1}", at_wall.signature(),
           plus.signature() - levels_ge1);
    out.degrees_checked++;
  }
  out.ok = out.failures.empty();
  return out;
}

}  // namespace chered
