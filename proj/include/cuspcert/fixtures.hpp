#pragma once

#include <random>

#include "cuspcert/hermitian.hpp"
#include "cuspcert/isometry.hpp"
#include "cuspcert/siegel.hpp"

// Deterministic generators for test and verification fixtures: random
// unitaries, cusp stabilizers, swaps, their products, and sample points.

namespace cuspcert::fixtures {

using Rng = std::mt19937_64;

SquareMatrix random_unitary(int dim, Rng& rng);

struct MemberOptions {
  double tau_scale = 0.5;
  double t_scale = 1.0;
  double c_lo = 0.7;
  double c_hi = 1.4;
  double a_lo = 0.8;
  double a_hi = 1.25;
  int factors = 4;
};

/// Translation fixing one of the two distinguished cusps.
GroupElement random_heisenberg(int n, Rng& rng, Cusp cusp,
                               const MemberOptions& opt = {});

/// Cusp swap with |c| drawn from [c_lo, c_hi] and a random unitary block.
GroupElement random_swap(int n, Rng& rng, const MemberOptions& opt = {});

/// Element fixing both cusps: diag(a, A, 1/conj(a)) with A unitary.
GroupElement random_cusp_diagonal(int n, Rng& rng,
                                  const MemberOptions& opt = {});

/// Product of `factors` random primitives above; a generic group member.
GroupElement random_member(int n, Rng& rng, const MemberOptions& opt = {});

/// diag(r, 1, ..., 1, 1/r): the standard dilation with translation length
/// 2 acosh((r + 1/r)^2 / 4).
GroupElement diagonal_dilation(double r, int n);

SiegelPoint random_point(int n, Rng& rng, double zeta_scale = 1.0,
                         double v_scale = 2.0, double log_u_scale = 1.0);

}  // namespace cuspcert::fixtures
