#include "chered/forms.hpp"

#include <stdexcept>

namespace chered {

template <class R, class F>
std::vector<Matrix<R>> beta_gram_sweep(const StandardModule<F>& m,
                                       const std::vector<R>& class_values,
                                       int max_degree, bool greatest_index_split) {
  std::vector<Matrix<R>> gram;
  gram.push_back(Matrix<R>::identity(m.irrep().dim));
  for (int n = 1; n <= max_degree; ++n) {
    GradedBasis from = m.basis(n), prev = m.basis(n - 1);
    int l = m.rank();
    // Dunkl matrices evaluated in R, one per direction actually used.
    std::vector<Matrix<R>> dk{static_cast<size_t>(l), Matrix<R>()};
    std::vector<bool> have(size_t(l), false);
    Matrix<R> g(from.dim(), from.dim());
    for (size_t mi = 0; mi < from.monos.size(); ++mi) {
      const auto& e = from.monos[mi];
      int split = -1;
      if (greatest_index_split) {
        for (int i = l - 1; i >= 0; --i)
          if (e[size_t(i)] > 0) {
            split = i;
            break;
          }
      } else {
        for (int i = 0; i < l; ++i)
          if (e[size_t(i)] > 0) {
            split = i;
            break;
          }
      }
      if (!have[size_t(split)]) {
        dk[size_t(split)] = m.dunkl(split, n).template eval<R>(class_values);
        have[size_t(split)] = true;
      }
      std::vector<int> parent = e;
      parent[size_t(split)] -= 1;
      int pmono = prev.mono_rank.at(parent);
      const Matrix<R>& d = dk[size_t(split)];
      for (int a = 0; a < from.lambda_dim; ++a) {
        int row = from.index(int(mi), a);
        int prow = prev.index(pmono, a);
        // G_n[row, :] = G_{n-1}[prow, :] * D_split
        for (int col = 0; col < from.dim(); ++col) {
          R acc(0);
          for (int k = 0; k < prev.dim(); ++k) {
            const R& gp = gram.back()(prow, k);
            if (FieldTraits<R>::is_zero(gp)) continue;
            acc += gp * d(k, col);
          }
          g(row, col) = acc;
        }
      }
    }
    gram.push_back(std::move(g));
  }
  return gram;
}

template <class F>
std::vector<int> filtered_offsets(const StandardModule<F>& m, int cutoff) {
  std::vector<int> off(size_t(cutoff) + 2, 0);
  for (int k = 0; k <= cutoff; ++k) off[size_t(k) + 1] = off[size_t(k)] + m.dim(k);
  return off;
}

template <class F>
Matrix<F> exp_f_matrix(const StandardModule<F>& m, const std::vector<F>& class_values,
                       int cutoff) {
  auto off = filtered_offsets(m, cutoff);
  int total = off.back();
  Matrix<F> e(total, total);
  for (int j = 0; j <= cutoff; ++j)
    for (int t = 0; t < m.dim(j); ++t) e(off[size_t(j)] + t, off[size_t(j)] + t) = F(1);
  // f maps degree j to j-2: f_j = (1/2) sum_i D_i(j-1) D_i(j).
  std::vector<Matrix<F>> f(size_t(cutoff) + 1);
  for (int j = 2; j <= cutoff; ++j) {
    Matrix<F> acc(m.dim(j - 2), m.dim(j));
    for (int i = 0; i < m.rank(); ++i) {
      Matrix<F> d1 = m.dunkl(i, j).template eval<F>(class_values);
      Matrix<F> d2 = m.dunkl(i, j - 1).template eval<F>(class_values);
      acc += d2 * d1;
    }
    F half = F(1) / F(2);
    f[size_t(j)] = half * acc;
  }
  for (int j = 2; j <= cutoff; ++j) {
    Matrix<F> power = f[size_t(j)];  // f^1 applied from degree j
    Rat factorial(1);
    for (int step = 1; j - 2 * step >= 0; ++step) {
      if (step > 1) power = f[size_t(j - 2 * (step - 1))] * power;
      factorial *= step;
      F scale = F(1) / FieldTraits<F>::from_rat(Rat(factorial));
      int k = j - 2 * step;
      for (int r = 0; r < m.dim(k); ++r)
        for (int c = 0; c < m.dim(j); ++c)
          e(off[size_t(k)] + r, off[size_t(j)] + c) = scale * power(r, c);
    }
  }
  return e;
}

template <class F>
Matrix<F> gaussian_gram(const StandardModule<F>& m, const std::vector<F>& class_values,
                        int cutoff) {
  auto off = filtered_offsets(m, cutoff);
  int total = off.back();
  auto beta = beta_gram_sweep(m, class_values, cutoff);
  Matrix<F> e = exp_f_matrix(m, class_values, cutoff);
  // Blockwise Gamma_{jk} = sum_{mm <= min(j,k), mm = j = k mod 2}
  // E_{mm,j}^T B_mm E_{mm,k}; only the upper triangle is computed.
  auto eblock = [&](int mm, int k) {
    Matrix<F> b(m.dim(mm), m.dim(k));
    for (int r = 0; r < m.dim(mm); ++r)
      for (int c = 0; c < m.dim(k); ++c) b(r, c) = e(off[size_t(mm)] + r, off[size_t(k)] + c);
    return b;
  };
  Matrix<F> gamma(total, total);
  for (int k = 0; k <= cutoff; ++k) {
    // Cache B_mm E_{mm,k} for this column block.
    std::vector<Matrix<F>> be(size_t(k) + 1);
    for (int mm = k % 2; mm <= k; mm += 2) be[size_t(mm)] = beta[size_t(mm)] * eblock(mm, k);
    for (int j = k % 2; j <= k; j += 2) {
      Matrix<F> block(m.dim(j), m.dim(k));
      for (int mm = j % 2; mm <= j; mm += 2)
        block += eblock(mm, j).transpose() * be[size_t(mm)];
      for (int r = 0; r < m.dim(j); ++r)
        for (int c = 0; c < m.dim(k); ++c) {
          gamma(off[size_t(j)] + r, off[size_t(k)] + c) = block(r, c);
          gamma(off[size_t(k)] + c, off[size_t(j)] + r) = block(r, c);
        }
    }
  }
  return gamma;
}

template <class F>
double gamma_adjointness_residual(const StandardModule<F>& m,
                                  const std::vector<F>& class_values, int cutoff) {
  if (cutoff < 1) return 0.0;
  auto off = filtered_offsets(m, cutoff);
  int total = off.back();
  auto off_small = filtered_offsets(m, cutoff - 1);
  int small = off_small.back();
  Matrix<F> gamma = gaussian_gram(m, class_values, cutoff);
  double residual = 0;
  for (int i = 0; i < m.rank(); ++i) {
    Matrix<F> x(total, small);
    for (int k = 0; k < cutoff; ++k) {
      Matrix<F> xk = m.mult_x(i, k);
      for (int r = 0; r < m.dim(k + 1); ++r)
        for (int c = 0; c < m.dim(k); ++c)
          x(off[size_t(k) + 1] + r, off_small[size_t(k)] + c) = xk(r, c);
    }
    // gamma symmetric: the adjointness defect on degrees <= cutoff-1 is the
    // antisymmetric part of A = x^T gamma restricted to those columns.
    Matrix<F> a = x.transpose() * gamma;
    for (int r = 0; r < small; ++r)
      for (int c = 0; c < small; ++c)
        residual = std::max(residual, FieldTraits<F>::abs(a(r, c) - a(c, r)));
  }
  return residual;
}

template <class F>
Inertia gram_inertia(const Matrix<F>& gram, bool* margin_ok) {
  if constexpr (FieldTraits<F>::is_exact) {
    if (margin_ok) *margin_ok = true;
    return inertia_symmetric(gram);
  } else {
    return inertia_float(to_eigen(gram), margin_ok);
  }
}

template <class F>
static Matrix<F> kernel_of_gram(const Matrix<F>& g) {
  if constexpr (FieldTraits<F>::is_exact) {
    return kernel_basis(g);
  } else {
    Eigen::MatrixXd m = to_eigen(g);
    if (m.rows() == 0) return Matrix<F>(0, 0);
    // Null vectors of D G D give null vectors D v of G (Jacobi scaling).
    Eigen::VectorXd d(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
      double mx = m.row(i).cwiseAbs().maxCoeff();
      d(i) = mx > 0 ? 1.0 / std::sqrt(mx) : 1.0;
    }
    Eigen::MatrixXd scaled = d.asDiagonal() * m * d.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scaled);
    double thr = double(m.rows()) * std::numeric_limits<double>::epsilon() *
                 std::max(1e-300, scaled.cwiseAbs().maxCoeff() * double(m.rows()));
    std::vector<int> null_cols;
    for (int i = 0; i < m.rows(); ++i)
      if (std::fabs(es.eigenvalues()(i)) <= thr) null_cols.push_back(i);
    Matrix<F> out(int(m.rows()), int(null_cols.size()));
    for (size_t j = 0; j < null_cols.size(); ++j)
      for (int i = 0; i < m.rows(); ++i)
        out(i, int(j)) = d(i) * es.eigenvectors()(i, null_cols[j]);
    return out;
  }
}

template <class F>
RadicalSweep<F> radical_sweep(const StandardModule<F>& m,
                              const std::vector<F>& class_values, int max_degree) {
  RadicalSweep<F> out;
  auto gram = beta_gram_sweep(m, class_values, max_degree);
  for (int n = 0; n <= max_degree; ++n) {
    bool margin = true;
    out.inertia.push_back(gram_inertia(gram[size_t(n)], &margin));
    out.float_margin_ok = out.float_margin_ok && margin;
    out.kernel.push_back(kernel_of_gram(gram[size_t(n)]));
    out.kernel_dim.push_back(out.kernel.back().cols());
    if (out.kernel_dim.back() != out.inertia.back().z)
      throw std::logic_error("kernel dimension disagrees with inertia nullity");
  }
  // Submodule property of the radical: closed under x_i and D_{y_i}.
  auto in_span = [&](const Matrix<F>& basis, const Matrix<F>& vecs) {
    if (vecs.cols() == 0) return true;
    if constexpr (FieldTraits<F>::is_exact) {
      return columns_in_span(basis, vecs);
    } else {
      if (basis.cols() == 0) return vecs.max_abs() < 1e-6;
      Eigen::MatrixXd b = to_eigen(basis), v = to_eigen(vecs);
      Eigen::MatrixXd proj = b * (b.transpose() * b).ldlt().solve(b.transpose() * v);
      return (v - proj).cwiseAbs().maxCoeff() < 1e-6 * std::max(1.0, v.cwiseAbs().maxCoeff());
    }
  };
  for (int n = 0; n <= max_degree && out.submodule_ok; ++n) {
    if (out.kernel_dim[size_t(n)] == 0) continue;
    for (int i = 0; i < m.rank() && out.submodule_ok; ++i) {
      if (n + 1 <= max_degree) {
        Matrix<F> moved = m.mult_x(i, n) * out.kernel[size_t(n)];
        if (!in_span(out.kernel[size_t(n) + 1], moved)) out.submodule_ok = false;
      }
      if (n >= 1) {
        Matrix<F> down = m.dunkl(i, n).template eval<F>(class_values) * out.kernel[size_t(n)];
        if (!in_span(out.kernel[size_t(n) - 1], down)) out.submodule_ok = false;
      }
    }
  }
  return out;
}

template <class F>
Inertia isotypic_inertia(const StandardModule<F>& m, const Matrix<F>& gram,
                         const WIrrep<F>& pi, int degree, bool* margin_ok) {
  const auto& ctx = m.ctx();
  int d = m.dim(degree);
  Matrix<F> proj(d, d);
  for (size_t e = 0; e < ctx.elements.size(); ++e) {
    F chi = pi.char_by_class[size_t(ctx.classes.class_of[e])];
    if (FieldTraits<F>::is_zero(chi)) continue;
    Matrix<F> act = m.action(ctx.elements[e], degree);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) proj(r, c) += chi * act(r, c);
  }
  F scale = F(pi.dim) / F(int(ctx.order()));
  proj = scale * proj;
  // Column-space basis of the idempotent: pivot columns of its RREF.
  Matrix<F> reduced = proj;
  std::vector<int> pivots = row_reduce(reduced);
  Matrix<F> basis = proj.select_columns(pivots);
  Matrix<F> restricted = basis.transpose() * gram * basis;
  return gram_inertia(restricted, margin_ok);
}

template <class F>
std::vector<F> class_values(const ParamPoint& c) {
  std::vector<F> out;
  if constexpr (FieldTraits<F>::is_exact) {
    if (!c.exact) throw std::invalid_argument("exact mode needs rational parameters");
    for (const auto& v : c.exact_values) out.push_back(FieldTraits<F>::from_rat(v));
  } else {
    if (!c.real()) throw std::invalid_argument("contravariant forms need real c");
    for (const auto& v : c.values) out.push_back(v.real());
  }
  return out;
}

#define CHERED_INSTANTIATE_RING(R, F)                                          \
  template std::vector<Matrix<R>> beta_gram_sweep<R, F>(                       \
      const StandardModule<F>&, const std::vector<R>&, int, bool);

CHERED_INSTANTIATE_RING(Exact, Exact)
CHERED_INSTANTIATE_RING(double, double)
CHERED_INSTANTIATE_RING(Poly<Exact>, Exact)
CHERED_INSTANTIATE_RING(Poly<Poly<Exact>>, Exact)
#undef CHERED_INSTANTIATE_RING

#define CHERED_INSTANTIATE(F)                                                  \
  template std::vector<int> filtered_offsets<F>(const StandardModule<F>&, int); \
  template Matrix<F> exp_f_matrix<F>(const StandardModule<F>&,                  \
                                     const std::vector<F>&, int);               \
  template Matrix<F> gaussian_gram<F>(const StandardModule<F>&,                 \
                                      const std::vector<F>&, int);              \
  template double gamma_adjointness_residual<F>(const StandardModule<F>&,       \
                                                const std::vector<F>&, int);    \
  template struct RadicalSweep<F>;                                              \
  template RadicalSweep<F> radical_sweep<F>(const StandardModule<F>&,           \
                                            const std::vector<F>&, int);        \
  template Inertia isotypic_inertia<F>(const StandardModule<F>&,                \
                                       const Matrix<F>&, const WIrrep<F>&, int, \
                                       bool*);                                  \
  template Inertia gram_inertia<F>(const Matrix<F>&, bool*);                    \
  template std::vector<F> class_values<F>(const ParamPoint&);

CHERED_INSTANTIATE(Exact)
CHERED_INSTANTIATE(double)
#undef CHERED_INSTANTIATE

}  // namespace chered
