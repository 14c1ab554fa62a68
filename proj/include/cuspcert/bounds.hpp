#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cuspcert/errors.hpp"

namespace cuspcert::bounds {

// Exact integer factorials are kept up to here; the naive float factorial
// overflows one step later.
inline constexpr int kFactorialCap = 170;

/// A bound evaluated twice: on the plain binary64 route (which saturates to
/// +infinity once sinh/exp overflow, never NaN) and in log space (finite
/// whenever the bound is positive).
struct BoundValue {
  double value = 0.0;
  double ln_value = 0.0;
};

// --- volume and degree bounds ------------------------------------------

/// (4 pi)^m / m! * sinh^{2m}(sys / 2): induced-volume floor for an
/// m-dimensional subvariety.
double volume_lower_bound(int m, double sys);
double volume_lower_bound_ln(int m, double sys);

/// (4 pi)^m / m! * sinh^{2m}(r) * mult: volume of a subvariety through a
/// point of injectivity radius r, counted with multiplicity.
double ball_volume_bound(int m, double r, double mult);
double ball_volume_bound_ln(int m, double r, double mult);

/// (n+1)^m * sinh^{2m}(sys / 2): degree against the log-canonical bundle.
/// Equals volume_lower_bound * ((n+1)/(4 pi))^m * m!.
double log_canonical_degree_lower_bound(int m, int n, double sys);
double log_canonical_degree_lower_bound_ln(int m, int n, double sys);

// --- the systole -> trace -> depth chain --------------------------------

/// 1 - n + sqrt(2) e^{sys/4}: floor for the smallest trace modulus above
/// n + 1 among group elements.
double trace_lower_bound(int n, double sys);
double trace_lower_bound_ln(int n, double sys);

/// min{(lambda - n - 1)^{1/4}, (lambda - n - 1)^{1/2}}: uniform cusp depth
/// from the trace floor.  Throws NotApplicableError when lambda <= n + 1
/// (the bound is vacuous).
double depth_from_trace(double lambda, int n);

/// Composition of the two: shares the arithmetic path with
/// depth_from_trace(trace_lower_bound(n, sys), n) bit for bit.
double depth_lower_bound(int n, double sys);
double depth_lower_bound_ln(int n, double sys);

// --- named systole thresholds -------------------------------------------

/// 4 ln(5n + (4 pi)^4): hypothesis for the canonical-degree bound.
double threshold_ample(int n);

/// 4 ln(5n + (8 pi)^4): hypothesis for the canonical-volume bound.
double threshold_canonical(int n);

/// (n / 4 pi)^m e^{m sys / 16}: canonical-degree floor, certified only
/// above threshold_ample.
double degree_lower_bound(int m, int n, double sys);
double degree_lower_bound_ln(int m, int n, double sys);

/// (m / 4 pi)^m e^{m sys / 16}: canonical-volume floor, certified only
/// above threshold_canonical.
double canonical_volume_lower_bound(int m, double sys);
double canonical_volume_lower_bound_ln(int m, double sys);

// --- positivity of the bicanonical system -------------------------------

/// 20 max{ n ln((1 + 2n + n!)(n + s)), ln(5n + (8 pi)^4) }, with the
/// factorial taken in exact integer arithmetic (n <= 170).
double very_ampleness_threshold(int n, int s);

struct BicanonicalReport {
  bool globally_generated_2k = false;
  bool very_ample_mod_d_2k = false;
  bool very_ample_3k = false;
  double threshold = 0.0;  // very_ampleness_threshold(n, 1)
};
BicanonicalReport bicanonical_report(int n, double sys);

struct JetsSeshadri {
  bool separates_jets_2k = false;
  double seshadri_lb = 0.0;  // s / 2 when certified, else 0
  double threshold = 0.0;
};
JetsSeshadri jets_and_seshadri(int n, double sys, int s);

// --- Seshadri constants ---------------------------------------------------

/// (n+1) / (8 pi) * sinh^2(sys / 2): Seshadri floor on the thick part,
/// certified above seshadri_thick_hypothesis(n).
double seshadri_thick_bound(int n, double sys);
double seshadri_thick_bound_ln(int n, double sys);

/// e^{sys/20}: the exceptional-locus threshold the thick bound beats.
double seshadri_locus_threshold(double sys);
double seshadri_locus_threshold_ln(double sys);

/// 20 ln(5n + (8 pi)^4).
double seshadri_thick_hypothesis(int n);

/// 2 sqrt(2n / pi): boundary-systole threshold for full very ampleness.
double sysd_threshold(int n);

/// (pi / 4) * sysD^2: Seshadri floor along the boundary abelian varieties.
double boundary_seshadri_bound(double sys_d);

/// 20 max{ n ln(5n (1 + 2n + n!)), ln(5n + (8 pi)^4) }.
double full_very_ampleness_sys_threshold(int n);

struct FullVeryAmpleness {
  double seshadri_lb = 0.0;  // 2n when certified, else 0
  bool very_ample_2k = false;
  double boundary_seshadri = 0.0;
  double sys_d_threshold = 0.0;
  double sys_threshold = 0.0;
};
FullVeryAmpleness full_very_ampleness(int n, double sys, double sys_d);

// --- rational points -------------------------------------------------------

/// 4 pi [F:Q] (n+3) (1+eps) / e^{sys/16}: growth exponent for rational
/// points of bounded height, certified above threshold_ample with eps > 0.
double sparsity_exponent(int n, double sys, int field_degree, double epsilon);
double sparsity_exponent_ln(int n, double sys, int field_degree, double epsilon);

// --- aggregation ------------------------------------------------------------

struct BoundInputs {
  int n = 1;
  double sys = 0.0;  // certified LOWER bound for the systole, caller-supplied
  int m = 1;         // subvariety dimension, 1 <= m <= n
  int s = 1;         // jet order
  std::optional<double> sys_d;
  std::optional<int> field_degree;
  std::optional<double> epsilon;
};

struct BoundReport {
  BoundInputs inputs;

  BoundValue induced_volume;
  BoundValue log_canonical_degree;
  BoundValue trace_floor;
  std::optional<BoundValue> depth_floor;  // empty when vacuous

  double threshold_ample = 0.0;
  double threshold_canonical = 0.0;

  BoundValue canonical_degree;
  bool canonical_degree_certified = false;
  BoundValue canonical_volume;
  bool canonical_volume_certified = false;

  double very_ampleness_threshold_s1 = 0.0;
  double very_ampleness_threshold_s = 0.0;
  bool globally_generated_2k = false;
  bool very_ample_mod_d_2k = false;
  bool very_ample_3k = false;
  bool separates_jets_2k = false;
  double seshadri_jets_lb = 0.0;

  BoundValue seshadri_thick;
  bool seshadri_thick_certified = false;
  BoundValue seshadri_locus;
  double seshadri_thick_hypothesis = 0.0;

  double sys_d_threshold = 0.0;
  double full_sys_threshold = 0.0;
  std::optional<double> boundary_seshadri;
  bool full_very_ample_2k = false;
  double seshadri_full_lb = 0.0;

  std::optional<BoundValue> sparsity;
  bool sparsity_certified = false;

  std::vector<std::string> assumptions;
};

/// Evaluates every bound above; hypothesis failures never abort, they are
/// recorded in the assumption ledger and reflected in the certified flags.
BoundReport bound_report(const BoundInputs& inputs);

}  // namespace cuspcert::bounds
