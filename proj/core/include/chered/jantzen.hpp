#pragma once

#include "chered/forms.hpp"

#include <string>
#include <vector>

namespace chered {

struct JantzenLevel {
  int level = 0;
  int dim = 0;
  Inertia inertia;  // of the induced nondegenerate form beta^{(k)}
};

/// Jantzen filtration data of one graded piece Delta(lambda)[d] along the
/// pencil c(t) = c0 + t c1.
struct JantzenDegree {
  int degree = 0;
  int ord_det = 0;  // valuation of det G(t) at t = 0
  std::vector<JantzenLevel> levels;
  std::vector<Matrix<Exact>> level_basis;  // basis of Delta[d]^{>=k}, k = 0..
  bool skipped = false;
  std::string error;
};

/// Levels computed by the recursive Schur complement at t = 0 (diagonalize
/// the t^0 part on a complement of its kernel, divide the corrected block
/// by t, recurse).  Exact arithmetic throughout; inexact division by t
/// aborts loudly.  A degenerate direction (det G(t) == 0 as a polynomial)
/// marks the degree skipped.
JantzenDegree jantzen_filtration(const StandardModule<Exact>& m, const ParamPoint& c0,
                                 const ParamPoint& c1, int degree);

struct SubmoduleCheck {
  bool ok = true;
  std::string witness;  // first closure failure, if any
};

/// Delta^{>=k} closed under x_i (degree +1) and D_y at c0 (degree -1)
/// within the computed window.
SubmoduleCheck submodule_check(const StandardModule<Exact>& m, const ParamPoint& c0,
                               const std::vector<JantzenDegree>& filtration);

struct WallCrossingReport {
  bool ok = true;
  std::vector<std::string> failures;
  int degrees_checked = 0;
  bool wall_in_interval = false;  // another wall detected in (0, s]
};

/// Degree-wise wall-crossing identities at c0 +- s c1: the signature
/// reconstruction from Jantzen levels on both sides, and the two signature
/// character identities relating sch(Delta) across the wall and sch(L) at it.
WallCrossingReport wall_crossing_check(const StandardModule<Exact>& m,
                                       const ParamPoint& c0, const ParamPoint& c1,
                                       const Rat& s, int max_degree);

}  // namespace chered
