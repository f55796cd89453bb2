#pragma once

#include "chered/coxeter.hpp"
#include "chered/params.hpp"
#include "chered/poly.hpp"

#include <string>
#include <vector>

namespace chered {

/// Irreducible orthogonal representation of W: one orthogonal matrix per
/// simple reflection, with the invariant form fixed to the identity.
template <class F>
struct WIrrep {
  std::string name;
  std::vector<std::string> aliases;
  int dim = 0;
  std::vector<Matrix<F>> gen;       // indexed like CoxeterDatum::simple
  std::vector<F> char_by_class;     // filled by irreps_of

  bool answers_to(const std::string& n) const {
    if (name == n) return true;
    for (const auto& a : aliases)
      if (a == n) return true;
    return false;
  }
};

/// Group data bundle: the datum, the enumerated elements, their conjugacy
/// classes, and the element index of every reflection.
template <class F>
struct GroupContext {
  CoxeterDatum<F> W;
  std::vector<GroupElement<F>> elements;
  ConjClasses classes;
  std::vector<int> refl_element;  // reflection index -> element index

  static GroupContext build(const std::string& label);
  int num_classes() const { return int(classes.members.size()); }
  long order() const { return long(elements.size()); }
};

template <class F>
Matrix<F> irrep_matrix(const WIrrep<F>& rep, const std::vector<int>& word);

/// Complete list of irreducible representations; throws on labels whose
/// irreps are not constructed (D4).
template <class F>
std::vector<WIrrep<F>> irreps_of(const GroupContext<F>& ctx);

template <class F>
const WIrrep<F>& find_irrep(const std::vector<WIrrep<F>>& irreps, const std::string& name);

/// Lowest weight h_c(lambda) = l/2 - chi_lambda(sum_s c_s s)/dim lambda,
/// evaluated with exact class values.
template <class F>
F h_c_lambda_exact(const GroupContext<F>& ctx, const WIrrep<F>& rep,
                   const std::vector<F>& class_values);

double h_c_lambda(const GroupContext<double>& ctx, const WIrrep<double>& rep,
                  const ParamPoint& c);

/// chi_lambda(sum_s c_s s)/dim lambda (the homogeneity degree is -2 times this).
std::complex<double> central_reflection_scalar(const GroupContext<double>& ctx,
                                               const WIrrep<double>& rep,
                                               const ParamPoint& c);

/// Shifted standard-module character ch_0(Delta(lambda))(w, t): the series
/// chi_lambda(w) / det_{h*}(1 - t w), truncated at degree N.
template <class F>
std::vector<F> standard_character(const GroupContext<F>& ctx, const WIrrep<F>& rep,
                                  const GroupElement<F>& w, int truncation);

/// Graded dimension of the pi-isotypic part of lambda (x) C[h]^coW, an
/// integer polynomial with theta(1) = dim(lambda) dim(pi)^2.
template <class F>
Poly<Rat> theta_poly(const GroupContext<F>& ctx, const WIrrep<F>& lambda,
                     const WIrrep<F>& pi);

/// Poincare polynomial of W: prod_i (1 + t + ... + t^{d_i - 1}).
Poly<Rat> poincare_poly(const std::vector<int>& degrees);

template <class F>
WIrrep<double> to_float(const WIrrep<F>& rep);

}  // namespace chered
