#pragma once

#include "chered/monodromy.hpp"

#include <vector>

namespace chered {

/// Value of the Dunkl weight function at a regular real point.
struct WeightSample {
  std::vector<double> x;
  CMat k;
  double accuracy = 0;  // accumulated transport error estimate
};

/// Everything needed to evaluate K on the regular locus: monodromy context,
/// parameter, invariant form at the basepoint, homogeneity exponent.
struct WeightContext {
  KZContext kz;
  ParamPoint c;
  InvariantForm form;
  std::complex<double> kappa;  // chi_lambda(sum_s c_s s)/dim: K ~ |x|^{-2 kappa}
  double rtol = 1e-10;

  static WeightContext build(const GroupContext<double>& ctx, const WIrrep<double>& rep,
                             const ParamPoint& c, double rtol = 1e-10);
};

/// K(x) = F_{c^dag}(x)^{dagger,-1} B F_c(x)^{-1} with F the modified-KZ
/// fundamental solution transported from x0 along the given path (default:
/// straight line within a chamber, complexified bump otherwise).
WeightSample weight_from_monodromy(const WeightContext& wc, const std::vector<double>& x);
WeightSample weight_along_path(const WeightContext& wc, const Path& path, const CMat& b);

/// Transport an existing sample along a real path in the regular locus by
/// the 2-sided system dK = -sum_s c_s (alpha_s(dz)/alpha_s)(sK + Ks).
WeightSample two_sided_transport(const WeightContext& wc, const WeightSample& from,
                                 const Path& path);

/// Max deviation of the fitted log|K(t x)| slope from -2 Re kappa over >= 3
/// collinear samples.
double homogeneity_slope(const WeightContext& wc, const std::vector<double>& x,
                         int num_samples = 4);

/// Frobenius series F = Q(z1) z1^{c_i s_i} of the modified KZ connection
/// restricted to the line x_wall + z1 * (coroot_i / 2).
struct FrobeniusSolution {
  int wall = 0;
  std::vector<CMat> coeffs;       // Q coefficients, p_0 = Id
  std::vector<double> wall_point; // x_w in the relative interior of the wall
  std::vector<double> direction;  // u with alpha_i(u) = 1
  double radius = 0;              // convergence radius estimate
  CMat a;                         // residue c_i s_i
  double tail_estimate = 0;       // |p_N| radius_used^N at the eval radius

  CMat q_at(double z1) const;
  CMat fundamental_at(double z1) const;  // Q(z1) z1^a, z1 > 0
};

/// Throws on resonance (2 c_i a nonzero integer), reporting the offending n.
FrobeniusSolution frobenius_wall_solution(const WeightContext& wc, int simple_index,
                                          int order);

struct WallInvarianceReport {
  CMat k_i;
  double off_block_norm = 0;   // |K_i^{1,-1}| + |K_i^{-1,1}|
  double k_i_norm = 0;
  double z1_used = 0;
};

/// Recover the wall transfer matrix K_i from K = P^{dag,-1} z1^{-a} K_i
/// z1^{-a} P^{-1} and report the s_i-noninvariant blocks.  b_override
/// substitutes a perturbed basepoint form (negative controls).
WallInvarianceReport asymptotic_invariance_check(const WeightContext& wc,
                                                 int simple_index, int order,
                                                 const CMat* b_override = nullptr);

/// lambda-vector-valued polynomial with real vector coefficients.
struct VPoly {
  int nvars = 0;
  int dim = 1;
  std::vector<std::pair<std::vector<int>, Eigen::VectorXd>> terms;

  static VPoly monomial(const std::vector<int>& expo, int dim, int lambda_index);
  int degree() const;
};

struct QuadratureOptions {
  int shift = 0;            // delta-shift exponent N
  int gauss_points = 16;
  int grading_levels = 40;  // geometric panels toward each wall
  int arc_march_steps = 24; // transport resolution along the unit arc
};

struct QuadratureResult {
  std::complex<double> integral;       // normalized integral value
  std::complex<double> gram_value;     // exact-side gamma value (caller supplied)
  double rel_error = 0;
  double refine_delta = 0;             // change under one refinement step
};

/// Normalization scalar zeta with Integral(K e^{-|x|^2/2}) = zeta * Id
/// (rank <= 2, shift 0); deviation reports |M - zeta Id| / |zeta|.
std::complex<double> weight_normalization(const WeightContext& wc,
                                          const QuadratureOptions& opts,
                                          double* deviation = nullptr);

/// One quadrature cell Integral Q^dag delta^{2N} K P e^{-|x|^2/2} dx over all
/// chambers (rank <= 2), unnormalized.
std::complex<double> weight_integral(const WeightContext& wc, const VPoly& p,
                                     const VPoly& q, const QuadratureOptions& opts);

/// Batch version sharing the K samples across cells.
std::vector<std::complex<double>> weight_integrals(
    const WeightContext& wc, const std::vector<std::pair<VPoly, VPoly>>& pairs,
    const QuadratureOptions& opts);

struct SupportReport {
  std::vector<double> chamber_norms;  // |K| at one representative per chamber
  double min_over_max = 0;
  bool full_support = false;
};

SupportReport support_report(const WeightContext& wc);

}  // namespace chered
