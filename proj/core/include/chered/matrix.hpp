#pragma once

#include "chered/poly.hpp"
#include "chered/scalar.hpp"

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <vector>

namespace chered {

/// Dense row-major matrix over an arbitrary commutative ring/field T.
/// Eigen handles all floating-point numerics; this class exists for the
/// exact scalar types (rationals, quadratic extensions, polynomial pencils).
template <class T>
class Matrix {
 public:
  Matrix() : r_(0), c_(0) {}
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols, T(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  T& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
  const T& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }

  Matrix transpose() const {
    Matrix m(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  Matrix operator-() const {
    Matrix m = *this;
    for (auto& v : m.a_) v = -v;
    return m;
  }
  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) { return x += y; }
  friend Matrix operator-(Matrix x, const Matrix& y) { return x -= y; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.c_ != y.r_) throw std::invalid_argument("matrix shape mismatch");
    Matrix m(x.r_, y.c_);
    for (int i = 0; i < x.r_; ++i)
      for (int k = 0; k < x.c_; ++k) {
        const T& xik = x(i, k);
        if (FieldTraits<T>::is_zero(xik)) continue;
        for (int j = 0; j < y.c_; ++j) m(i, j) += xik * y(k, j);
      }
    return m;
  }
  friend Matrix operator*(const T& s, Matrix m) {
    for (auto& v : m.a_) v = s * v;
    return m;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    if (x.r_ != y.r_ || x.c_ != y.c_) return false;
    for (size_t i = 0; i < x.a_.size(); ++i)
      if (!(x.a_[i] == y.a_[i])) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!FieldTraits<T>::is_zero(v)) return false;
    return true;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (int(v.size()) != c_) throw std::invalid_argument("vector size mismatch");
    std::vector<T> out(size_t(r_), T(0));
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) out[size_t(i)] += (*this)(i, j) * v[size_t(j)];
    return out;
  }

  Matrix select_columns(const std::vector<int>& idx) const {
    Matrix m(r_, int(idx.size()));
    for (int i = 0; i < r_; ++i)
      for (size_t j = 0; j < idx.size(); ++j) m(i, int(j)) = (*this)(i, idx[j]);
    return m;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& v : a_) m = std::max(m, FieldTraits<T>::abs(v));
    return m;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
  }
  int r_, c_;
  std::vector<T> a_;
};

struct Inertia {
  int p = 0, q = 0, z = 0;
  int signature() const { return p - q; }
  int rank() const { return p + q; }
};

/// Row echelon reduction in place over a field; returns pivot column indices.
template <class F>
std::vector<int> row_reduce(Matrix<F>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    double best = 0;
    for (int i = row; i < m.rows(); ++i) {
      if (FieldTraits<F>::is_zero(m(i, col))) continue;
      if constexpr (FieldTraits<F>::is_exact) {
        piv = i;
        break;
      } else {
        double a = FieldTraits<F>::abs(m(i, col));
        if (a > best) {
          best = a;
          piv = i;
        }
      }
    }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    F inv = F(1) / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) = inv * m(row, j);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || FieldTraits<F>::is_zero(m(i, col))) continue;
      F f = m(i, col);
      for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
int rank(Matrix<F> m) {
  return int(row_reduce(m).size());
}

/// Basis of the null space as matrix columns.
template <class F>
Matrix<F> kernel_basis(Matrix<F> m) {
  int n = m.cols();
  std::vector<int> pivots = row_reduce(m);
  std::vector<bool> is_pivot(size_t(n), false);
  for (int p : pivots) is_pivot[size_t(p)] = true;
  Matrix<F> ker(n, n - int(pivots.size()));
  int col = 0;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[size_t(free)]) continue;
    ker(free, col) = F(1);
    for (size_t r = 0; r < pivots.size(); ++r) ker(pivots[r], col) = -m(int(r), free);
    ++col;
  }
  return ker;
}

/// Solve A x = b over a field; nullopt if inconsistent.
template <class F>
std::optional<std::vector<F>> solve(Matrix<F> a, const std::vector<F>& b) {
  int n = a.cols();
  Matrix<F> aug(a.rows(), n + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[size_t(i)];
  }
  std::vector<int> pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  std::vector<F> x(size_t(n), F(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[size_t(pivots[r])] = aug(int(r), n);
  return x;
}

/// True if every column of v lies in the column span of basis.
template <class F>
bool columns_in_span(const Matrix<F>& basis, const Matrix<F>& v) {
  for (int j = 0; j < v.cols(); ++j) {
    std::vector<F> col(size_t(v.rows()));
    for (int i = 0; i < v.rows(); ++i) col[size_t(i)] = v(i, j);
    if (!solve(basis, col)) return false;
  }
  return true;
}

/// Inertia of an exact symmetric matrix by symmetric Gaussian elimination
/// with 1x1 pivots and hyperbolic 2x2 pivots (Sylvester's law of inertia).
template <class F>
Inertia inertia_symmetric(Matrix<F> a) {
  static_assert(FieldTraits<F>::is_exact, "float inertia goes through Eigen");
  int n = a.rows();
  std::vector<int> act(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) act[size_t(i)] = i;
  Inertia in;
  while (!act.empty()) {
    int pi = -1;
    for (size_t k = 0; k < act.size(); ++k)
      if (!FieldTraits<F>::is_zero(a(act[k], act[k]))) {
        pi = int(k);
        break;
      }
    if (pi >= 0) {
      int i = act[size_t(pi)];
      int s = FieldTraits<F>::sign(a(i, i));
      (s > 0 ? in.p : in.q)++;
      F inv = F(1) / a(i, i);
      act.erase(act.begin() + pi);
      for (int r : act) {
        if (FieldTraits<F>::is_zero(a(r, i))) continue;
        F f = a(r, i) * inv;
        for (int c : act) a(r, c) -= f * a(i, c);
      }
      continue;
    }
    // All active diagonal entries vanish; look for an off-diagonal pivot.
    int oi = -1, oj = -1;
    for (size_t k = 0; k < act.size() && oi < 0; ++k)
      for (size_t l = k + 1; l < act.size(); ++l)
        if (!FieldTraits<F>::is_zero(a(act[k], act[l]))) {
          oi = int(k);
          oj = int(l);
          break;
        }
    if (oi < 0) {
      in.z += int(act.size());
      break;
    }
    int i = act[size_t(oi)], j = act[size_t(oj)];
    // Pivot [[0, d], [d, 0]] contributes one positive and one negative.
    in.p++;
    in.q++;
    F dinv = F(1) / a(i, j);
    act.erase(act.begin() + oj);
    act.erase(act.begin() + oi);
    for (int r : act) {
      F ri = a(r, i), rj = a(r, j);
      if (FieldTraits<F>::is_zero(ri) && FieldTraits<F>::is_zero(rj)) continue;
      for (int c : act) a(r, c) -= dinv * (ri * a(j, c) + rj * a(i, c));
    }
  }
  return in;
}

/// Fraction-free Bareiss determinant; valid over any integral domain whose
/// exact divisions are provided by exact_div (used for polynomial pencils).
template <class U>
Poly<U> det_poly(Matrix<Poly<U>> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of nonsquare");
  int n = m.rows();
  if (n == 0) return Poly<U>(U(1));
  Poly<U> prev(U(1));
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k).is_zero()) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (!m(i, k).is_zero()) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return Poly<U>();
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)).exact_div(prev);
    prev = m(k, k);
  }
  Poly<U> det = m(n - 1, n - 1);
  if (sign < 0) det = -det;
  return det;
}

/// Determinant over a field by Gaussian elimination.
template <class F>
F det_field(Matrix<F> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of nonsquare");
  int n = m.rows();
  F det(1);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!FieldTraits<F>::is_zero(m(i, k))) {
        piv = i;
        break;
      }
    if (piv < 0) return F(0);
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
      det = -det;
    }
    det *= m(k, k);
    F inv = F(1) / m(k, k);
    for (int i = k + 1; i < n; ++i) {
      F f = m(i, k) * inv;
      if (FieldTraits<F>::is_zero(f)) continue;
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

/// Adjugate of a small polynomial matrix via cofactors.
template <class U>
Matrix<Poly<U>> adjugate_poly(const Matrix<Poly<U>>& m) {
  int n = m.rows();
  Matrix<Poly<U>> adj(n, n);
  if (n == 0) return adj;
  if (n == 1) {
    adj(0, 0) = Poly<U>(U(1));
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix<Poly<U>> minor(n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Poly<U> cof = det_poly(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      adj(j, i) = cof;  // transposed cofactor
    }
  return adj;
}

template <class F>
Eigen::MatrixXd to_eigen(const Matrix<F>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) e(i, j) = FieldTraits<F>::to_double(m(i, j));
  return e;
}

/// Diagonal Jacobi scaling D G D with D_ii = 1/sqrt(max |row_i|): inertia is
/// a congruence invariant, and the scaling tames the huge dynamic range of
/// high-degree Gram matrices (diagonal entries grow factorially).
inline Eigen::MatrixXd jacobi_scaled(const Eigen::MatrixXd& g) {
  Eigen::VectorXd d(g.rows());
  for (int i = 0; i < g.rows(); ++i) {
    double m = g.row(i).cwiseAbs().maxCoeff();
    d(i) = m > 0 ? 1.0 / std::sqrt(m) : 1.0;
  }
  return d.asDiagonal() * g * d.asDiagonal();
}

/// Inertia of a real symmetric matrix with the zero threshold dim*eps*|G|
/// after Jacobi scaling.  margin_ok reports whether the smallest kept
/// eigenvalue clears 10x the threshold (rank-decision ambiguity flag).
inline Inertia inertia_float(const Eigen::MatrixXd& g_in, bool* margin_ok = nullptr) {
  Inertia in;
  if (g_in.rows() == 0) {
    if (margin_ok) *margin_ok = true;
    return in;
  }
  Eigen::MatrixXd g = jacobi_scaled(g_in);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  double thr = double(g.rows()) * std::numeric_limits<double>::epsilon() *
               std::max(1e-300, g.cwiseAbs().maxCoeff() * double(g.rows()));
  bool ok = true;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double ev = es.eigenvalues()(i);
    if (std::fabs(ev) <= thr)
      in.z++;
    else {
      (ev > 0 ? in.p : in.q)++;
      if (std::fabs(ev) < 10 * thr) ok = false;
    }
  }
  if (margin_ok) *margin_ok = ok;
  return in;
}

}  // namespace chered
