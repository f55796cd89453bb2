#pragma once

#include "chered/cherednik.hpp"

#include <vector>

namespace chered {

/// Contravariant-form Gram matrices per degree, computed by the recursion
/// beta(x_i P, Q) = beta(P, D_{y_i} Q) from beta = identity on lambda.
/// R is the coefficient ring of the parameter values: the base field for
/// numeric parameters, Poly<F> for one-parameter pencils, Poly<Poly<F>> for
/// bivariate class-parameter pencils.
template <class R, class F>
std::vector<Matrix<R>> beta_gram_sweep(const StandardModule<F>& m,
                                       const std::vector<R>& class_values,
                                       int max_degree,
                                       bool greatest_index_split = false);

/// Degree offsets of the filtered space (+)_{k<=n} Delta[k].
template <class F>
std::vector<int> filtered_offsets(const StandardModule<F>& m, int cutoff);

/// exp(f), f = (1/2) sum_i D_{y_i}^2, as a block-lower-triangular matrix on
/// the filtered space (degree k column block maps into degrees k, k-2, ...).
template <class F>
Matrix<F> exp_f_matrix(const StandardModule<F>& m, const std::vector<F>& class_values,
                       int cutoff);

/// Gaussian form gamma(P, Q) = beta(exp(f) P, exp(f) Q) on (+)_{k<=n}.
template <class F>
Matrix<F> gaussian_gram(const StandardModule<F>& m, const std::vector<F>& class_values,
                        int cutoff);

/// Max |gamma(x_i P, Q) - gamma(P, x_i Q)| over basis vectors of the filtered
/// space of degree <= cutoff-1 and all i.  Exactly zero in exact mode.
template <class F>
double gamma_adjointness_residual(const StandardModule<F>& m,
                                  const std::vector<F>& class_values, int cutoff);

template <class F>
struct RadicalSweep {
  std::vector<Matrix<F>> kernel;  // kernel basis per degree (columns)
  std::vector<int> kernel_dim;
  std::vector<Inertia> inertia;   // of the full Gram per degree
  bool submodule_ok = true;       // kernel closed under x_i and D_{y_i}
  bool float_margin_ok = true;    // float-mode rank decisions unambiguous
};

/// Per-degree Gram inertia and radical, with the submodule check
/// x_i rad[n] in rad[n+1] and D_{y_i} rad[n] in rad[n-1].
template <class F>
RadicalSweep<F> radical_sweep(const StandardModule<F>& m,
                              const std::vector<F>& class_values, int max_degree);

/// Inertia of the Gram matrix restricted to the pi-isotypic component.
template <class F>
Inertia isotypic_inertia(const StandardModule<F>& m, const Matrix<F>& gram,
                         const WIrrep<F>& pi, int degree, bool* margin_ok = nullptr);

/// Inertia dispatch: exact elimination or thresholded eigenvalues.
template <class F>
Inertia gram_inertia(const Matrix<F>& gram, bool* margin_ok = nullptr);

/// Exact parameter values per class for an exact real ParamPoint.
template <class F>
std::vector<F> class_values(const ParamPoint& c);

}  // namespace chered
