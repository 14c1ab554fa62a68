#include "cuspcert/hermitian.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace cuspcert {

namespace {

Eigen::MatrixXcd to_eigen(const SquareMatrix& m) {
  Eigen::MatrixXcd out(m.dim(), m.dim());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) out(r, c) = m(r, c);
  return out;
}

}  // namespace

SquareMatrix::SquareMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw InvalidInputError("SquareMatrix: dim must be >= 1");
  entries_.assign(static_cast<std::size_t>(dim) * dim, Complex(0.0, 0.0));
}

SquareMatrix SquareMatrix::identity(int dim) {
  SquareMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix SquareMatrix::adjoint() const {
  SquareMatrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Complex SquareMatrix::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

Complex SquareMatrix::determinant() const { return to_eigen(*this).determinant(); }

double SquareMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

std::pair<int, Complex> SquareMatrix::max_modulus_entry() const {
  int best = 0;
  double best_mod = -1.0;
  for (int i = 0; i < static_cast<int>(entries_.size()); ++i) {
    double mod = std::abs(entries_[i]);
    if (mod > best_mod) {
      best_mod = mod;
      best = i;
    }
  }
  return {best, entries_[best]};
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatchError("matrix product: dimension mismatch");
  const int d = a.dim();
  SquareMatrix out(d);
  for (int r = 0; r < d; ++r) {
    for (int k = 0; k < d; ++k) {
      const Complex arc = a(r, k);
      if (arc == Complex(0.0, 0.0)) continue;
      for (int c = 0; c < d; ++c) out(r, c) += arc * b(k, c);
    }
  }
  return out;
}

SquareMatrix operator*(Complex scalar, const SquareMatrix& m) {
  SquareMatrix out(m.dim());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) out(r, c) = scalar * m(r, c);
  return out;
}

SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatchError("matrix sum: dimension mismatch");
  SquareMatrix out(a.dim());
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) out(r, c) = a(r, c) + b(r, c);
  return out;
}

SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatchError("matrix difference: dimension mismatch");
  SquareMatrix out(a.dim());
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) out(r, c) = a(r, c) - b(r, c);
  return out;
}

std::vector<Complex> operator*(const SquareMatrix& m,
                               const std::vector<Complex>& v) {
  if (static_cast<int>(v.size()) != m.dim())
    throw DimensionMismatchError("matrix-vector product: dimension mismatch");
  std::vector<Complex> out(v.size(), Complex(0.0, 0.0));
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) out[r] += m(r, c) * v[c];
  return out;
}

HermitianForm HermitianForm::standard(int n) {
  if (n < 1) throw InvalidInputError("standard form: n must be >= 1");
  SquareMatrix j(n + 1);
  j(0, n) = 1.0;
  j(n, 0) = 1.0;
  for (int i = 1; i < n; ++i) j(i, i) = 1.0;
  return HermitianForm{j, n, 1};
}

HermitianForm standard_form_for_dim(int dim) {
  return HermitianForm::standard(dim - 1);
}

bool projectively_close(const ProjectivePoint& a, const ProjectivePoint& b,
                        double tol) {
  if (a.coords.size() != b.coords.size()) return false;
  // Scale b onto a by the ratio at the largest coordinate of a.
  int pivot = 0;
  double best = -1.0;
  for (int i = 0; i < static_cast<int>(a.coords.size()); ++i) {
    double mod = std::abs(a.coords[i]);
    if (mod > best) {
      best = mod;
      pivot = i;
    }
  }
  if (best == 0.0) throw InvalidInputError("projectively_close: zero point");
  if (std::abs(b.coords[pivot]) == 0.0) return false;
  Complex lambda = a.coords[pivot] / b.coords[pivot];
  double err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    err += std::norm(a.coords[i] - lambda * b.coords[i]);
    scale += std::norm(a.coords[i]);
  }
  return std::sqrt(err) <= tol * std::sqrt(scale);
}

double form_value(const HermitianForm& J, const ProjectivePoint& z) {
  if (static_cast<int>(z.coords.size()) != J.dim())
    throw DimensionMismatchError("form_value: dimension mismatch");
  double norm2 = 0.0;
  for (const Complex& c : z.coords) norm2 += std::norm(c);
  if (norm2 == 0.0) throw InvalidInputError("form_value: zero vector");
  std::vector<Complex> jz = J.matrix * z.coords;
  Complex q = 0.0;
  for (std::size_t i = 0; i < z.coords.size(); ++i)
    q += std::conj(z.coords[i]) * jz[i];
  if (std::abs(q.imag()) > 1e-10 * norm2) {
    std::ostringstream msg;
    msg << "form_value: imaginary residue " << q.imag()
        << " exceeds 1e-10 * |z|^2; the form is not Hermitian";
    throw Error(msg.str());
  }
  return q.real();
}

double membership_residual(const HermitianForm& J, const SquareMatrix& M) {
  if (J.dim() != M.dim())
    throw DimensionMismatchError("membership_residual: dimension mismatch");
  SquareMatrix r = (J.matrix * M.adjoint() * J.matrix) * M -
                   SquareMatrix::identity(M.dim());
  return r.frobenius_norm();
}

SquareMatrix projective_normalize(const SquareMatrix& m) {
  auto [pivot, value] = m.max_modulus_entry();
  if (std::abs(value) == 0.0)
    throw InvalidInputError("projective_normalize: zero matrix");
  SquareMatrix out(m.dim());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) out(r, c) = m(r, c) / value;
  // Pin the pivot exactly so normalization is idempotent bit-for-bit.
  out(pivot / m.dim(), pivot % m.dim()) = Complex(1.0, 0.0);
  return out;
}

std::vector<Complex> eigenvalues(const SquareMatrix& m) {
  if (m.dim() > kMaxDim)
    throw InvalidInputError("eigenvalues: dimension exceeds the desk-scale cap");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), false);
  if (solver.info() != Eigen::Success)
    throw Error("eigenvalues: solver did not converge");
  std::vector<Complex> out(m.dim());
  for (int i = 0; i < m.dim(); ++i) out[i] = solver.eigenvalues()(i);
  std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
    double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    return std::arg(a) < std::arg(b);
  });
  return out;
}

GroupElement GroupElement::validated(SquareMatrix m, const HermitianForm& J,
                                     double tol) {
  double res = membership_residual(J, m);
  if (res > tol) {
    std::ostringstream msg;
    msg << "matrix is not a member of the form-preserving group: residual "
        << res << " > " << tol;
    throw MembershipError(msg.str(), res);
  }
  SquareMatrix normal = projective_normalize(m);
  return GroupElement(std::move(m), std::move(normal), res);
}

GroupElement product(const GroupElement& a, const GroupElement& b,
                     const HermitianForm& J) {
  SquareMatrix m = a.matrix() * b.matrix();
  double res = membership_residual(J, m);
  GroupElement out(m, projective_normalize(m), res);
  if (a.word() && b.word()) {
    std::vector<std::int32_t> w = *a.word();
    w.insert(w.end(), b.word()->begin(), b.word()->end());
    out.set_word(std::move(w));
  }
  return out;
}

GroupElement inverse(const GroupElement& g, const HermitianForm& J) {
  SquareMatrix m = J.matrix * g.matrix().adjoint() * J.matrix;
  double res = membership_residual(J, m);
  return GroupElement(m, projective_normalize(m), res);
}

}  // namespace cuspcert
