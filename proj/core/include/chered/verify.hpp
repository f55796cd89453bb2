#pragma once

#include "chered/jantzen.hpp"
#include "chered/signatures.hpp"
#include "chered/weight.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chered {

/// Signature comparison between the Gram/signature pipeline and the
/// monodromy/invariant-form pipeline.
struct ComparisonReport {
  std::string group, irrep;
  std::vector<double> c;

  // Gram side
  bool full_support = false;
  bool a_exact = false;
  Rat a_value;            // asymptotic signature when the fit stabilized
  double a_estimate = 0;  // Cesaro fallback otherwise
  double a_error = 0;
  long dim_kz_gram = 0;  // q(1) of the ch fit

  // Hecke side
  int p = 0, q = 0, radical = 0;
  int dim_kz_hecke = 0;
  double invariance_residual = 0;
  double hermiticity_defect = 0;
  bool signed_normalized = false;  // sign fixed by the weight normalization

  double abs_mismatch = 0;     // | |a| - |p - q| / dim |
  double signed_mismatch = 0;  // | a - (p - q)/dim | under the chosen scaling
  bool primary_ok = false;
  bool signed_ok = false;
  double runtime_seconds = 0;
  std::string notes;
};

/// Both pipelines at a real parameter point; max_degree bounds the Gram
/// sweep and the rational fits.
ComparisonReport verify_signature_comparison(const std::string& label, const std::string& irrep,
                                   const ParamPoint& c, int max_degree,
                                   double estimate_tol = 0.02);

struct KZNondegeneracyEntry {
  std::string irrep;
  bool full_support = false;
  int dim_kz = 0;
  double nondegeneracy_margin = 0;  // least |eigenvalue| of the induced form
  bool definite = false;
  bool quasi_unitary_checked = false;  // |a| = 1 confirmed for definite forms
  bool ok = false;
  std::string notes;
};

/// Nondegeneracy of the induced form on KZ(L) per full-support irrep, with
/// the quasi-unitarity cross-check for definite cases.
std::vector<KZNondegeneracyEntry> verify_kz_nondegeneracy(const std::string& label,
                                                    const ParamPoint& c,
                                                    int max_degree = 24);

struct SweepConfig {
  std::string group;
  std::vector<std::string> irreps;  // empty = all
  std::vector<std::vector<double>> points;
  int max_degree = 30;
  std::string mode = "thm51";  // or "sch"
  std::string out_prefix = "sweep";
};

struct SweepCell {
  std::string irrep;
  std::vector<double> c;
  bool failed = false;
  std::string error;
  std::optional<ComparisonReport> report;
  std::vector<long> sch;  // mode "sch"
};

/// Batch over the configured c-grid; per-cell failures are isolated.
std::vector<SweepCell> run_sweep(const SweepConfig& cfg);

SweepConfig sweep_config_from_toml(const std::string& path);

}  // namespace chered
