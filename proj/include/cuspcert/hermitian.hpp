#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cuspcert/errors.hpp"

namespace cuspcert {

using Complex = std::complex<double>;

// Dense eigenvalue routines are only wired up for desk-scale matrices.
inline constexpr int kMaxDim = 16;

// Default tolerance on the Frobenius membership residual.
inline constexpr double kMembershipTol = 1e-8;

/// Small dense complex matrix with value semantics, stored row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int dim);

  static SquareMatrix identity(int dim);

  int dim() const { return dim_; }

  Complex& operator()(int row, int col) { return entries_[idx(row, col)]; }
  const Complex& operator()(int row, int col) const {
    return entries_[idx(row, col)];
  }

  const std::vector<Complex>& entries() const { return entries_; }

  SquareMatrix adjoint() const;
  Complex trace() const;
  Complex determinant() const;
  double frobenius_norm() const;

  /// Index (row-major) and value of the entry of largest modulus;
  /// ties go to the lowest index.
  std::pair<int, Complex> max_modulus_entry() const;

  bool operator==(const SquareMatrix&) const = default;

 private:
  int idx(int row, int col) const { return row * dim_ + col; }

  int dim_ = 0;
  std::vector<Complex> entries_;
};

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix operator*(Complex scalar, const SquareMatrix& m);
SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b);
std::vector<Complex> operator*(const SquareMatrix& m,
                               const std::vector<Complex>& v);

/// Hermitian form z* J z together with its signature (positive, negative).
struct HermitianForm {
  SquareMatrix matrix;
  int positive = 0;
  int negative = 0;

  /// The corner-swap form of signature (n, 1): ones on the two off-diagonal
  /// corners, the identity on the middle (n-1)-block.
  static HermitianForm standard(int n);

  int dim() const { return matrix.dim(); }
};

/// Form of the right dimension for a (n+1)x(n+1) matrix group element.
HermitianForm standard_form_for_dim(int dim);

/// A point of complex projective space, represented by homogeneous
/// coordinates; equality is equality up to a nonzero complex scalar.
struct ProjectivePoint {
  std::vector<Complex> coords;
};

/// True when a and b agree projectively within tol (relative scale).
bool projectively_close(const ProjectivePoint& a, const ProjectivePoint& b,
                        double tol = 1e-10);

/// Re(z* J z).  The imaginary part must vanish up to 1e-10 * |z|^2.
double form_value(const HermitianForm& J, const ProjectivePoint& z);

/// || (J M* J) M - I ||_F.  Zero exactly when M preserves the form.
double membership_residual(const HermitianForm& J, const SquareMatrix& M);

/// Canonical projective representative: scales the matrix so the entry of
/// largest modulus (ties broken by lowest row-major index) becomes exactly
/// 1.  Idempotent, and invariant under rescaling by nonzero scalars.
SquareMatrix projective_normalize(const SquareMatrix& m);

/// Eigenvalues with multiplicity, sorted by (modulus, argument).
std::vector<Complex> eigenvalues(const SquareMatrix& m);

/// A validated element of the matrix group preserving a Hermitian form.
/// Carries the membership residual measured at construction, the canonical
/// projective representative, and optionally the word in the generators
/// that produced it.
class GroupElement {
 public:
  /// Validates membership; throws MembershipError when the residual
  /// exceeds tol.
  static GroupElement validated(SquareMatrix m, const HermitianForm& J,
                                double tol = kMembershipTol);

  const SquareMatrix& matrix() const { return matrix_; }
  const SquareMatrix& normal_form() const { return normal_form_; }
  double residual() const { return residual_; }
  int dim() const { return matrix_.dim(); }

  const std::optional<std::vector<std::int32_t>>& word() const {
    return word_;
  }
  void set_word(std::vector<std::int32_t> word) { word_ = std::move(word); }

 private:
  GroupElement(SquareMatrix m, SquareMatrix normal, double residual)
      : matrix_(std::move(m)),
        normal_form_(std::move(normal)),
        residual_(residual) {}

  friend GroupElement product(const GroupElement&, const GroupElement&,
                              const HermitianForm&);
  friend GroupElement inverse(const GroupElement&, const HermitianForm&);

  SquareMatrix matrix_;
  SquareMatrix normal_form_;
  double residual_ = 0.0;
  std::optional<std::vector<std::int32_t>> word_;
};

/// Matrix product; the residual is re-measured, not enforced.  Words
/// concatenate when both factors carry one.
GroupElement product(const GroupElement& a, const GroupElement& b,
                     const HermitianForm& J);

/// Inverse via J M* J, which is exact for members of the group.
GroupElement inverse(const GroupElement& g, const HermitianForm& J);

}  // namespace cuspcert
