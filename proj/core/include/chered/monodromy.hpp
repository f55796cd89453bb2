#pragma once

#include "chered/ode.hpp"
#include "chered/params.hpp"
#include "chered/paths.hpp"
#include "chered/wirreps.hpp"

#include <complex>
#include <vector>

namespace chered {

enum class Connection {
  KZ,          // d + sum_s c_s (dalpha_s/alpha_s)(1 - s)
  ModifiedKZ,  // d - sum_s c_s (dalpha_s/alpha_s) s
};

/// Float-side bundle for parallel transport: group data, irrep matrices of
/// every reflection, and the basepoint.
struct KZContext {
  CoxeterDatum<double> W;
  WIrrep<double> rep;
  std::vector<Matrix<double>> rho;  // lambda-action per reflection
  std::vector<double> x0;           // basepoint in the fundamental chamber

  static KZContext build(const GroupContext<double>& ctx, const WIrrep<double>& rep);
  CMat rho_c(int s) const;  // reflection action as a complex Eigen matrix
};

struct Transport {
  CMat mat;
  long steps = 0;
  double err_estimate = 0;
  double path_clearance = 0;
};

/// Flow matrix of the chosen flat connection along the path (fundamental
/// solution normalized to the identity at the path start).
Transport transport(const KZContext& kz, const ParamPoint& c, Connection kind,
                    const Path& path, double rtol = 1e-10);

struct BraidGenerators {
  std::vector<CMat> t;  // one per simple reflection
  std::vector<Path> paths;
  double max_err = 0;
};

/// T_i = (s_i action) o (transport along the positively oriented half-loop
/// from x0 to s_i x0) on the KZ fiber at x0.
BraidGenerators braid_generators(const KZContext& kz, const ParamPoint& c,
                                 double rtol = 1e-10);

struct HeckeReport {
  std::vector<double> quadratic_residual;  // |(T_i - 1)(T_i + q_i)| per simple i
  std::vector<double> braid_residual;      // per simple pair i < j
  double max_residual = 0;
};

/// Hecke parameter q(s) = exp(-2 pi i c_s) for the class of simple root i.
std::complex<double> hecke_q(const KZContext& kz, const ParamPoint& c, int simple_index);

HeckeReport hecke_check(const KZContext& kz, const ParamPoint& c,
                        const BraidGenerators& gens);

struct InvariantForm {
  CMat b;                    // Tr-normalized solution of the invariance system
  CMat b_hermitized;         // (B + B^dagger)/2 (returned for real c)
  int solution_space_dim = 0;
  double invariance_residual = 0;   // max_i |T^{dag,-1} B T^{-1} - B| / |B|
  double hermiticity_defect = 0;    // |B - B^dagger| / |B| before Hermitization
  bool trace_normalized = true;     // false if Tr B was ~ 0 (flagged)
};

/// Solve T_{i,cdag}^{dagger,-1} B T_{i,c}^{-1} = B for all i with
/// Tr B = dim(lambda); SVD nullspace with threshold 1e-8 sigma_max.
InvariantForm invariant_form_solve(const KZContext& kz, const ParamPoint& c,
                                   double rtol = 1e-10);

struct KZFormInertia {
  int p = 0, q = 0, radical = 0;
  int dim_kz_l = 0;  // dim lambda - radical
  bool margin_ok = true;
  double min_kept_eigenvalue = 0;
};

/// Inertia of the (Hermitized) invariant form; the radical is KZ(N_c(lambda)).
KZFormInertia kz_form_inertia(const CMat& b_herm, double rel_threshold = 1e-8);

}  // namespace chered
