#pragma once

#include "chered/forms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chered {

enum class SchTarget { Standard, Irreducible };

/// Per-degree signatures s_n = sign(beta[n]) (and dims) for Delta or L.
struct SignatureCharacter {
  std::vector<long> values;
  std::vector<long> dims;
  SchTarget target = SchTarget::Standard;
  bool float_margin_ok = true;
};

struct RationalFit {
  int pole_order = 0;
  Poly<Rat> numerator;
  bool stabilized = false;
  int zero_window = 0;  // trailing zero coefficients observed
};

struct AsymptoticSignature {
  bool exact = false;
  Rat value;           // when exact
  double estimate = 0; // Cesaro partial-sum estimate otherwise
  double error_bar = 0;
};

template <class F>
SignatureCharacter sch_sequence(const StandardModule<F>& m,
                                const std::vector<F>& class_values, int max_degree,
                                SchTarget target);

template <class F>
SignatureCharacter isotypic_sch(const StandardModule<F>& m, const WIrrep<F>& pi,
                                const std::vector<F>& class_values, int max_degree,
                                SchTarget target = SchTarget::Standard);

/// Fit seq = p(t) / (1-t)^r by multiplying out (1-t)^r; stabilized means a
/// trailing window of at least min_window zero coefficients was seen.
RationalFit rational_fit(const std::vector<long>& seq, int pole_order,
                         int min_window = 10);

/// Smallest pole order in [0, max_r] whose fit stabilizes, if any.
std::optional<RationalFit> fit_with_inferred_order(const std::vector<long>& seq,
                                                   int max_r, int min_window = 10);

/// a = p(1)/q(1) from matching-order fits; throws on mismatched pole orders.
Rat asymptotic_signature(const RationalFit& sch_fit, const RationalFit& ch_fit);

/// Cesaro partial-sum estimate with a crude Richardson-style error bar
/// (labeled heuristic: the limit exists but no convergence rate is known).
AsymptoticSignature cesaro_estimate(const std::vector<long>& sch,
                                    const std::vector<long>& dims);

struct EpsilonFactor {
  std::string irrep;
  int gap = 0;           // h_c(mu) - h_c(lambda)
  int multiplicity = 0;  // n_mu in K_0
  int k_sum = 0;         // sum of the epsilon signs over the copies
};

struct EpsilonDecomposition {
  std::vector<EpsilonFactor> factors;
  bool target_deformed = false;  // sch taken just off the wall (degenerate at c)
  bool consistent = false;
  std::string message;
};

/// K_0 decomposition of Delta_c(lambda) with signs: multiplicities derived
/// by character subtraction against radical-based ch(L) data, signs solved
/// degree-wise from the isotypic signature characters.
template <class F>
EpsilonDecomposition epsilon_decomposition(const GroupContext<F>& ctx,
                                           const std::vector<WIrrep<F>>& irreps,
                                           const WIrrep<F>& lambda,
                                           const ParamPoint& c, int max_degree);

}  // namespace chered
