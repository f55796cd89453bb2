#include "chered/cherednik.hpp"

#include <stdexcept>

namespace chered {

namespace {

// Orthonormal frame whose first row is alpha/|alpha| (float path only).
Matrix<double> rotation_to_root(const std::vector<double>& alpha) {
  int l = int(alpha.size());
  std::vector<std::vector<double>> rows;
  double nrm = 0;
  for (double v : alpha) nrm += v * v;
  nrm = std::sqrt(nrm);
  std::vector<double> first;
  for (double v : alpha) first.push_back(v / nrm);
  rows.push_back(first);
  for (int j = 0; j < l && int(rows.size()) < l; ++j) {
    std::vector<double> cand(size_t(l), 0.0);
    cand[size_t(j)] = 1.0;
    for (const auto& r : rows) {
      double dot = 0;
      for (int k = 0; k < l; ++k) dot += r[size_t(k)] * cand[size_t(k)];
      for (int k = 0; k < l; ++k) cand[size_t(k)] -= dot * r[size_t(k)];
    }
    double cn = 0;
    for (double v : cand) cn += v * v;
    if (cn < 1e-12) continue;
    cn = std::sqrt(cn);
    for (auto& v : cand) v /= cn;
    rows.push_back(cand);
  }
  Matrix<double> u(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) u(i, j) = rows[size_t(i)][size_t(j)];
  return u;
}

// (P - sP)/alpha_s.  Exact scalars use polynomial long division (error-free);
// floats rotate alpha onto the first coordinate, where the quotient of the
// odd part is a termwise shift and no cancellation can amplify roundoff.
template <class F>
MPoly<F> reflection_divided_difference(const MPoly<F>& mono, const Matrix<F>& smat,
                                       const std::vector<F>& alpha) {
  if constexpr (FieldTraits<F>::is_exact) {
    MPoly<F> diff = mono - mono.substitute_linear(smat);
    if (diff.is_zero()) return diff;
    return diff.divide_by_linear(alpha);
  } else {
    int l = mono.nvars();
    Matrix<double> u = rotation_to_root(alpha);
    double nrm = 0;
    for (double v : alpha) nrm += v * v;
    nrm = std::sqrt(nrm);
    // P'(u) = P(U^T u); alpha(x) = |alpha| u_1, s flips u_1.
    MPoly<double> rotated = mono.substitute_linear(u.transpose());
    MPoly<double> quot(l);
    for (const auto& [e, c] : rotated.terms()) {
      if (e[0] % 2 == 0) continue;  // even part cancels in P - sP
      std::vector<int> d = e;
      d[0] -= 1;
      quot.add_term(d, 2.0 * c / nrm);
    }
    return quot.substitute_linear(u);
  }
}

}  // namespace

std::vector<std::vector<int>> monomials_of_degree(int nvars, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(size_t(nvars), 0);
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == nvars - 1) {
      cur[size_t(var)] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[size_t(var)] = k;
      rec(var + 1, left - k);
    }
  };
  if (nvars == 0) {
    if (degree == 0) out.push_back({});
    return out;
  }
  rec(0, degree);
  return out;
}

template <class F>
GradedBasis StandardModule<F>::basis(int n) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = basis_cache_.find(n);
  if (it == basis_cache_.end()) it = basis_cache_.emplace(n, build_basis(n)).first;
  return it->second;
}

template <class F>
GradedBasis StandardModule<F>::build_basis(int n) const {
  GradedBasis b;
  b.degree = n;
  b.lambda_dim = rep_.dim;
  b.monos = monomials_of_degree(ctx_.W.rank, n);
  for (size_t i = 0; i < b.monos.size(); ++i) b.mono_rank[b.monos[i]] = int(i);
  return b;
}

template <class F>
int StandardModule<F>::dim(int n) const {
  return basis(n).dim();
}

template <class F>
Matrix<F> StandardModule<F>::mult_x(int i, int n) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(i, n);
  auto it = mult_cache_.find(key);
  if (it == mult_cache_.end()) it = mult_cache_.emplace(key, build_mult(i, n)).first;
  return it->second;
}

template <class F>
Matrix<F> StandardModule<F>::build_mult(int i, int n) const {
  GradedBasis from = build_basis(n), to = build_basis(n + 1);
  Matrix<F> m(to.dim(), from.dim());
  for (size_t mi = 0; mi < from.monos.size(); ++mi) {
    std::vector<int> e = from.monos[mi];
    e[size_t(i)] += 1;
    int ti = to.mono_rank.at(e);
    for (int a = 0; a < rep_.dim; ++a)
      m(to.index(ti, a), from.index(int(mi), a)) = F(1);
  }
  return m;
}

template <class F>
Matrix<F> StandardModule<F>::refl_action(int s) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = refl_cache_.find(s);
  if (it == refl_cache_.end()) {
    const auto& word = ctx_.elements[size_t(ctx_.refl_element[size_t(s)])].word;
    it = refl_cache_.emplace(s, irrep_matrix(rep_, word)).first;
  }
  return it->second;
}

template <class F>
OperatorPencil<F> StandardModule<F>::dunkl(int i, int n) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = dunkl_cache_.find(std::make_pair(i, n));
    if (it != dunkl_cache_.end()) return it->second;
  }
  OperatorPencil<F> p = build_dunkl(i, n);
  std::lock_guard<std::mutex> lock(mu_);
  return dunkl_cache_.emplace(std::make_pair(i, n), std::move(p)).first->second;
}

template <class F>
OperatorPencil<F> StandardModule<F>::build_dunkl(int i, int n) const {
  const auto& W = ctx_.W;
  int l = W.rank;
  GradedBasis from, to;
  {
    std::lock_guard<std::mutex> lock(mu_);
    from = build_basis(n);
    to = build_basis(std::max(0, n - 1));
  }
  OperatorPencil<F> out;
  out.a0 = Matrix<F>(n == 0 ? 0 : to.dim(), from.dim());
  out.a_cls.assign(size_t(W.num_classes), out.a0);
  if (n == 0) return out;

  // Derivative part.
  for (size_t mi = 0; mi < from.monos.size(); ++mi) {
    const auto& e = from.monos[mi];
    if (e[size_t(i)] == 0) continue;
    std::vector<int> d = e;
    d[size_t(i)] -= 1;
    int ti = to.mono_rank.at(d);
    for (int a = 0; a < rep_.dim; ++a)
      out.a0(to.index(ti, a), from.index(int(mi), a)) = F(e[size_t(i)]);
  }

  // Reflection terms: -(alpha_s(y_i)/alpha_s)(1 - s) (x) s.
  for (int s = 0; s < W.num_refl(); ++s) {
    F ay = W.pos_roots[size_t(s)][size_t(i)];
    if (FieldTraits<F>::is_zero(ay)) continue;
    int cls = W.refl_class[size_t(s)];
    Matrix<F>& acc = out.a_cls[size_t(cls)];
    Matrix<F> rho;
    {
      const auto& word = ctx_.elements[size_t(ctx_.refl_element[size_t(s)])].word;
      rho = irrep_matrix(rep_, word);
    }
    const Matrix<F>& smat = W.refl_matrix[size_t(s)];
    for (size_t mi = 0; mi < from.monos.size(); ++mi) {
      MPoly<F> mono = MPoly<F>::monomial(l, from.monos[mi]);
      MPoly<F> quot = reflection_divided_difference(mono, smat, W.pos_roots[size_t(s)]);
      if (quot.is_zero()) continue;
      for (const auto& [expo, coeff] : quot.terms()) {
        int ti = to.mono_rank.at(expo);
        for (int a = 0; a < rep_.dim; ++a)
          for (int b = 0; b < rep_.dim; ++b) {
            const F& r = rho(b, a);
            if (FieldTraits<F>::is_zero(r)) continue;
            acc(to.index(ti, b), from.index(int(mi), a)) -= ay * coeff * r;
          }
      }
    }
  }
  return out;
}

template <class F>
Matrix<F> StandardModule<F>::action(const GroupElement<F>& w, int n) const {
  GradedBasis b = basis(n);
  int l = ctx_.W.rank;
  Matrix<F> rho = irrep_matrix(rep_, w.word);
  Matrix<F> out(b.dim(), b.dim());
  for (size_t mi = 0; mi < b.monos.size(); ++mi) {
    MPoly<F> mono = MPoly<F>::monomial(l, b.monos[mi]);
    // (w P)(x) = P(w^{-1} x): substitute with w^{-1} = w^T.
    MPoly<F> moved = mono.substitute_linear(w.mat.transpose());
    for (const auto& [expo, coeff] : moved.terms()) {
      int ti = b.mono_rank.at(expo);
      for (int a = 0; a < rep_.dim; ++a)
        for (int bb = 0; bb < rep_.dim; ++bb) {
          const F& r = rho(bb, a);
          if (FieldTraits<F>::is_zero(r)) continue;
          out(b.index(ti, bb), b.index(int(mi), a)) += coeff * r;
        }
    }
  }
  return out;
}

template <class F>
F StandardModule<F>::grading_action(const std::vector<F>& class_values, int n) const {
  const auto& W = ctx_.W;
  int l = W.rank;
  int d = dim(n);
  Matrix<F> h(d, d);
  for (int i = 0; i < l; ++i) {
    Matrix<F> dk = dunkl(i, n).eval(class_values);
    if (n == 0) continue;
    h += mult_x(i, n - 1) * dk;
  }
  F half_l = F(l) / F(2);
  for (int j = 0; j < d; ++j) h(j, j) += half_l;
  // Subtract sum_s c_s (s acting on the full graded piece).
  for (int s = 0; s < W.num_refl(); ++s) {
    const auto& el = ctx_.elements[size_t(ctx_.refl_element[size_t(s)])];
    Matrix<F> act = action(el, n);
    F cs = class_values[size_t(W.refl_class[size_t(s)])];
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) h(r, c) -= cs * act(r, c);
  }
  F eig = h(0, 0);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      F want = (r == c) ? eig : F(0);
      if constexpr (FieldTraits<F>::is_exact) {
        if (!(h(r, c) == want))
          throw std::logic_error("grading element is not scalar on graded piece");
      } else {
        if (std::fabs(FieldTraits<F>::to_double(h(r, c)) -
                      FieldTraits<F>::to_double(want)) > 1e-8)
          throw std::logic_error("grading element is not scalar on graded piece");
      }
    }
  return eig;
}

template class StandardModule<Exact>;
template class StandardModule<double>;

}  // namespace chered
