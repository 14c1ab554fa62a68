#pragma once

#include <cstdint>
#include <vector>

#include "cuspcert/hermitian.hpp"

namespace cuspcert {

/// Horospherical coordinates (zeta, v, u) on the unbounded domain model;
/// u > 0 in the interior, u = 0 only on the boundary.
struct SiegelPoint {
  std::vector<Complex> zeta;  // n-1 components
  double v = 0.0;
  double u = 0.0;

  int n() const { return static_cast<int>(zeta.size()) + 1; }
};

enum class Cusp { infinity, zero };

struct Horoball {
  Cusp cusp = Cusp::infinity;
  double height = 1.0;  // > 0
};

/// Homogeneous coordinates of a Siegel point:
///   [ (-|zeta|^2 - u + i v) / 2 ; zeta ; 1 ].
/// The standard form evaluates to -u on the image.
ProjectivePoint embed(const SiegelPoint& p);

/// Inverse of embed.  Throws PointAtInfinityError when the last coordinate
/// vanishes and OutsideDomainError when the recovered height is negative
/// beyond rounding tolerance.
SiegelPoint unembed(const ProjectivePoint& z);

/// Distance between two interior points:
///   2 acosh( | |z1-z2|^2 + u1 + u2 + i (v1 - v2) + 2 i Im<z2, z1> |^2
///            / (4 u1 u2) ),
/// with <a, b> conjugate-linear in the first slot.  The acosh argument is
/// >= 1 analytically; values above 1 - 1e-12 are clamped to 1, anything
/// lower is an error.
double distance(const SiegelPoint& z1, const SiegelPoint& z2);

/// 2 acosh( (u1+u2)^2 / (4 u1 u2) ): a height-only lower bound for the
/// distance, attained exactly when the zeta and v coordinates agree.
double distance_lower_bound(double u1, double u2);

/// Action of a validated group element through the projective embedding.
/// Throws PointAtInfinityError when the image is the cusp at infinity.
SiegelPoint act(const GroupElement& g, const SiegelPoint& p);

/// Height of a point as seen from the cusp at zero: the u-coordinate of its
/// image under the corner swap with c = 1, which is
///   4 u / | |zeta|^2 + u - i v |^2.
double height_at_zero_cusp(const SiegelPoint& p);

bool horoball_contains(const Horoball& b, const SiegelPoint& p);

/// Horoballs of heights u0 (at the zero cusp) and uInf (at infinity) are
/// disjoint exactly when u0 * uInf >= 4.
bool horoballs_disjoint(double u0, double uInf);

/// Budget for the derivative-free displacement search.  Starts are seeded
/// independently of their count, so enlarging the budget can only improve
/// the estimate.
struct SamplingBudget {
  int starts = 64;
  int sweeps = 12;
  double refine_tol = 1e-6;
  double zeta_max = 4.0;
  double v_max = 8.0;
  double log_u_min = -3.0;
  double log_u_max = 3.0;
  std::uint64_t seed = 0x0c05ba11u;
};

struct DisplacementEstimate {
  double value = 0.0;
  bool converged = false;  // false when the best point sits on the box edge
  SiegelPoint point;
};

/// Numerical upper approximation of inf_z d(z, g z) by multi-start
/// coordinate descent with golden-section line searches.  Test oracle:
/// the closed-form translation length is the production path.
DisplacementEstimate min_displacement_oracle(const GroupElement& g,
                                             const SamplingBudget& budget = {},
                                             int threads = 0);

/// Serial reference implementation; identical output by construction.
DisplacementEstimate min_displacement_oracle_serial(
    const GroupElement& g, const SamplingBudget& budget = {});

struct IntersectionProbe {
  bool found = false;            // witness with height-at-zero above u0
  double best_height_at_zero = 0.0;
  SiegelPoint witness;
};

/// Searches the horoball of height uInf at infinity for a point lying in
/// the horoball of height u0 at zero.  The supremum of the height-at-zero
/// over that region is 4 / uInf.
IntersectionProbe horoball_intersection_probe(double u0, double uInf,
                                              const SamplingBudget& budget = {});

/// Default worker count: CUSP_CERTIFY_THREADS when set, else the OpenMP
/// default.
int default_thread_count();

}  // namespace cuspcert
