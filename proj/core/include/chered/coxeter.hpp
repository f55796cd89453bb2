#pragma once

#include "chered/matrix.hpp"
#include "chered/mpoly.hpp"
#include "chered/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chered {

/// Finite Coxeter group data in an orthonormal coordinate frame: positive
/// roots (as linear functionals), coroots (as vectors, normalized so
/// alpha(alpha^vee) = 2), reflections with conjugacy-class indices, simple
/// roots and fundamental degrees.
template <class F>
struct CoxeterDatum {
  std::string label;
  int rank = 0;
  int quad_d = 0;  // radicand of the quadratic extension used, 0 for plain Q

  std::vector<std::vector<F>> pos_roots;    // row functionals alpha_s
  std::vector<std::vector<F>> pos_coroots;  // vectors alpha_s^vee
  std::vector<Matrix<F>> refl_matrix;       // s acting on h
  std::vector<int> refl_class;              // class index per reflection
  int num_classes = 0;
  std::vector<int> simple;   // indices into pos_roots
  std::vector<int> degrees;  // fundamental degrees d_1..d_l
  long group_order = 0;

  int num_refl() const { return int(pos_roots.size()); }
  F root_pairing(int s, const std::vector<F>& v) const {
    F out(0);
    for (int j = 0; j < rank; ++j) out += pos_roots[size_t(s)][size_t(j)] * v[size_t(j)];
    return out;
  }
  /// Order m_ij of s_i s_j for simple reflections (Coxeter matrix entry).
  int coxeter_m(int i, int j) const;
};

template <class F>
struct GroupElement {
  Matrix<F> mat;          // orthogonal action on h
  std::vector<int> word;  // reduced word in simple reflection indices
};

/// Conjugacy-class decomposition of the full group element list.
struct ConjClasses {
  std::vector<int> class_of;              // element index -> class index
  std::vector<std::vector<int>> members;  // class index -> element indices
  std::vector<int> representative;        // class index -> element index
};

bool label_supported(const std::string& label);
bool label_is_exact(const std::string& label);

/// Construct the group data; throws std::invalid_argument on unsupported
/// labels.  Exact labels: A1 A2 A3 B2 B3 D4 G2 and I2(m) for m in {3,4,6}.
CoxeterDatum<Exact> build_coxeter(const std::string& label);
/// Same data with double coordinates (any supported label, incl. general I2(m)).
CoxeterDatum<double> build_coxeter_float(const std::string& label);

template <class F>
CoxeterDatum<double> to_float(const CoxeterDatum<F>& w);

/// BFS closure of the simple reflections; words are geodesic.  Throws if the
/// group order exceeds cap.
template <class F>
std::vector<GroupElement<F>> enumerate_group(const CoxeterDatum<F>& w,
                                             long cap = 10000);

template <class F>
ConjClasses conjugacy_classes(const CoxeterDatum<F>& w,
                              const std::vector<GroupElement<F>>& g);

/// Discriminant delta = prod_s alpha_s as a polynomial on h.
template <class F>
MPoly<F> discriminant(const CoxeterDatum<F>& w);

/// Interior point of the fundamental chamber with clearance
/// min_s |alpha_s(x)| / |alpha_s| equal to 1 (double coordinates).
std::vector<double> chamber_basepoint(const CoxeterDatum<double>& w);

/// min_s |alpha_s(x)|/|alpha_s| over reflections (distance to the walls).
double clearance(const CoxeterDatum<double>& w, const std::vector<double>& x);

template <class F>
int element_index(const std::vector<GroupElement<F>>& g, const Matrix<F>& m);

/// det(w) for an orthogonal reflection-group element: parity of word length.
template <class F>
int det_sign(const GroupElement<F>& g) {
  return g.word.size() % 2 == 0 ? 1 : -1;
}

}  // namespace chered
