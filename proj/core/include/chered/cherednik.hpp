#pragma once

#include "chered/mpoly.hpp"
#include "chered/params.hpp"
#include "chered/wirreps.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace chered {

/// Monomial basis of C[h]_n (x) lambda.  Basis order: monomials in
/// lexicographically descending exponent order, each tensored with the
/// lambda basis in order.
struct GradedBasis {
  int degree = 0;
  int lambda_dim = 1;
  std::vector<std::vector<int>> monos;
  std::map<std::vector<int>, int> mono_rank;

  int dim() const { return int(monos.size()) * lambda_dim; }
  int index(int mono, int a) const { return mono * lambda_dim + a; }
};

std::vector<std::vector<int>> monomials_of_degree(int nvars, int degree);

/// Lift a base-field scalar into a pencil coefficient ring.
template <class R, class F>
R lift_scalar(const F& x) {
  if constexpr (std::is_same_v<R, F>)
    return x;
  else if constexpr (std::is_constructible_v<R, F>)
    return R(x);
  else
    return R(lift_scalar<typename R::value_type>(x));
}

/// A_0 + sum_cls c_cls A_cls, the linear c-dependence of a graded operator.
template <class F>
struct OperatorPencil {
  Matrix<F> a0;
  std::vector<Matrix<F>> a_cls;

  template <class R>
  Matrix<R> eval(const std::vector<R>& c) const {
    Matrix<R> out(a0.rows(), a0.cols());
    for (int i = 0; i < a0.rows(); ++i)
      for (int j = 0; j < a0.cols(); ++j) {
        R v = lift_scalar<R>(a0(i, j));
        for (size_t k = 0; k < a_cls.size(); ++k) {
          const F& e = a_cls[k](i, j);
          if (!FieldTraits<F>::is_zero(e)) v += c[k] * lift_scalar<R>(e);
        }
        out(i, j) = v;
      }
    return out;
  }
};

/// Graded pieces of Delta_c(lambda) = C[h] (x) lambda with multiplication
/// operators, Dunkl operators (as pencils in c) and W-action.  Caches are
/// lock-protected; all returned matrices are value copies.
template <class F>
class StandardModule {
 public:
  StandardModule(const GroupContext<F>& ctx, const WIrrep<F>& rep)
      : ctx_(ctx), rep_(rep) {}

  const GroupContext<F>& ctx() const { return ctx_; }
  const WIrrep<F>& irrep() const { return rep_; }
  int rank() const { return ctx_.W.rank; }

  GradedBasis basis(int n) const;
  int dim(int n) const;

  /// Multiplication by x_i: degree n -> n+1 (0/1 entries).
  Matrix<F> mult_x(int i, int n) const;

  /// Dunkl operator D_{y_i}: degree n -> n-1 as a pencil in the class
  /// parameters.  n = 0 gives the zero map.
  OperatorPencil<F> dunkl(int i, int n) const;

  /// Action of w (by its reduced word) on C[h]_n (x) lambda.
  Matrix<F> action(const GroupElement<F>& w, int n) const;

  /// lambda-action of reflection s (any positive root index).
  Matrix<F> refl_action(int s) const;

  /// Eigenvalue of the grading element on degree n at parameter c, verified
  /// against the assembled operator sum_i x_i D_{y_i} + l/2 - sum_s c_s s.
  F grading_action(const std::vector<F>& class_values, int n) const;

 private:
  const GroupContext<F>& ctx_;
  const WIrrep<F>& rep_;

  mutable std::mutex mu_;
  mutable std::map<int, GradedBasis> basis_cache_;
  mutable std::map<std::pair<int, int>, Matrix<F>> mult_cache_;
  mutable std::map<std::pair<int, int>, OperatorPencil<F>> dunkl_cache_;
  mutable std::map<int, Matrix<F>> refl_cache_;

  GradedBasis build_basis(int n) const;
  Matrix<F> build_mult(int i, int n) const;
  OperatorPencil<F> build_dunkl(int i, int n) const;
};

}  // namespace chered
