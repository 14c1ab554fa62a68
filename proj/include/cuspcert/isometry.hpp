#pragma once

#include <string>
#include <vector>

#include "cuspcert/hermitian.hpp"
#include "cuspcert/siegel.hpp"

namespace cuspcert {

inline constexpr double kClassifyTol = 1e-9;
inline constexpr double kFixesInfinityTol = 1e-10;

enum class IsometryKind { elliptic, parabolic, hyperbolic };

std::string to_string(IsometryKind kind);

struct IsometryClass {
  IsometryKind kind = IsometryKind::elliptic;
  double r = 1.0;      // dilation modulus, > 1 only for hyperbolic
  double theta = 0.0;  // argument of the max-modulus eigenvalue (hyperbolic)
  double margin = 0.0; // distance of the decisive quantity from its threshold
};

/// Raised when the classification margin is below 10 machine epsilons;
/// carries both candidate kinds rather than resolving silently.
class IndeterminateClassificationError : public Error {
 public:
  IndeterminateClassificationError(const std::string& msg, IsometryKind first,
                                   IsometryKind second, double margin)
      : Error(msg), first_(first), second_(second), margin_(margin) {}
  IsometryKind first_candidate() const { return first_; }
  IsometryKind second_candidate() const { return second_; }
  double margin() const { return margin_; }

 private:
  IsometryKind first_, second_;
  double margin_;
};

/// Classification by eigenvalue moduli.  With rho = max|lambda|/min|lambda|:
/// rho > 1 + tol means hyperbolic with r = sqrt(rho); otherwise the element
/// is parabolic exactly when the matrix (scaled to unit-modulus determinant)
/// is non-diagonalizable, detected by a rank test against the algebraic
/// multiplicity of each repeated eigenvalue.
///
/// The modulus-ratio test is scale-free, so the verdict is unchanged under
/// rescaling by any nonzero scalar.  Note the rank test's reach: eigenvalues
/// of a defective matrix are only accurate to about eps^(1/k) for a Jordan
/// block of size k, so callers classifying conjugated unipotent elements
/// should pass a tol above that noise floor.
IsometryClass classify(const SquareMatrix& m, double tol = kClassifyTol);
IsometryClass classify(const GroupElement& g, double tol = kClassifyTol);

/// Translation length of a hyperbolic element with dilation modulus r:
///   2 acosh( (r + 1/r)^2 / 4 ).
/// Throws NotApplicableError for non-hyperbolic input.
double translation_length(const GroupElement& g, double tol = kClassifyTol);

/// Closed form of the length as a function of the dilation modulus alone.
double length_from_dilation(double r);

/// Unipotent cusp-stabilizer translation: tau shifts the zeta block and t
/// shifts the v coordinate (up to the symplectic cross term).
struct HeisenbergElement {
  std::vector<Complex> tau;  // n-1 components
  double t = 0.0;
  Cusp cusp = Cusp::infinity;
};

/// The translation matrix, upper triangular for the cusp at infinity:
///   [ 1  -tau*  -(|tau|^2 + i t)/2 ]
///   [ 0    I            tau        ]
///   [ 0    0             1         ]
/// and the mirrored lower-triangular form for the cusp at zero.
GroupElement heisenberg_to_matrix(const HeisenbergElement& h);

/// Group law (tau1 + tau2, t1 + t2 + 2 Im<tau1, tau2>), with <,>
/// conjugate-linear in the first slot; matches the matrix product.
HeisenbergElement heisenberg_compose(const HeisenbergElement& h1,
                                     const HeisenbergElement& h2);

/// Vertical translation (tau = 0) of parameter t at the cusp at infinity,
/// sized for (n+1)-dimensional matrices.
GroupElement vertical_translation(double t, int dim);

/// An element fixes the cusp at infinity exactly when the bottom-left entry
/// of its matrix vanishes (tested scale-invariantly on the normal form).
bool fixes_infinity(const GroupElement& g, double tol = kFixesInfinityTol);

/// The cusp-swapping form [[0, 0, 1/conj(c)], [0, A, 0], [c, 0, 0]] with
/// A unitary; exchanges the cusps at zero and infinity.
GroupElement swap_form(Complex c, const SquareMatrix& A);

struct CommutatorTraceCheck {
  Complex trace_value;  // tr of the commutator, by direct multiplication
  double predicted;     // n + 1 + |t c / 2|^2
  double residual;      // |trace_value - predicted|
};

/// Commutator of the vertical translation by t with a member M whose
/// bottom-left entry is c: the trace equals n + 1 + |t c / 2|^2.
CommutatorTraceCheck commutator_trace_check(double t, const GroupElement& m);

/// |2/c|^2 from the member matrix of an element not fixing infinity: an
/// upper bound for the height product u(z) * u(g z) over the whole domain.
/// Throws NotApplicableError for cusp stabilizers (c = 0).
double u_product_bound(const GroupElement& g);

}  // namespace cuspcert
