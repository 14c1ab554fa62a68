#include "cuspcert/isometry.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace cuspcert {

namespace {

Eigen::MatrixXcd to_eigen(const SquareMatrix& m) {
  Eigen::MatrixXcd out(m.dim(), m.dim());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) out(r, c) = m(r, c);
  return out;
}

// Union-find clustering of eigenvalues within an absolute radius.
std::vector<std::vector<int>> cluster_eigenvalues(
    const std::vector<Complex>& vals, double radius) {
  const int n = static_cast<int>(vals.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(vals[i] - vals[j]) <= radius) parent[find(i)] = find(j);
  std::vector<std::vector<int>> clusters;
  std::vector<int> root_to_cluster(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (root_to_cluster[r] < 0) {
      root_to_cluster[r] = static_cast<int>(clusters.size());
      clusters.emplace_back();
    }
    clusters[root_to_cluster[r]].push_back(i);
  }
  return clusters;
}

// Eigenvalue agreement radius for the diagonalizability test.  Defective
// matrices scatter computed eigenvalues by roughly eps^(1/k); 1e-4 covers
// Jordan blocks up to the desk-scale dimensions.
constexpr double kClusterRadius = 1e-4;

}  // namespace

std::string to_string(IsometryKind kind) {
  switch (kind) {
    case IsometryKind::elliptic: return "elliptic";
    case IsometryKind::parabolic: return "parabolic";
    case IsometryKind::hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

IsometryClass classify(const SquareMatrix& m, double tol) {
  const int dim = m.dim();
  std::vector<Complex> eig = eigenvalues(m);
  const double min_mod = std::abs(eig.front());
  const double max_mod = std::abs(eig.back());
  if (min_mod <= 0.0)
    throw InvalidInputError("classify: singular matrix");
  const double rho = max_mod / min_mod;
  const double eps_floor = 10.0 * std::numeric_limits<double>::epsilon();

  if (rho > 1.0 + tol) {
    const double margin = rho - 1.0 - tol;
    if (margin < eps_floor)
      throw IndeterminateClassificationError(
          "classify: modulus ratio sits on the hyperbolic threshold",
          IsometryKind::hyperbolic, IsometryKind::elliptic, margin);
    IsometryClass out;
    out.kind = IsometryKind::hyperbolic;
    out.r = std::sqrt(rho);
    // Scaling to unit-modulus determinant multiplies by a positive real, so
    // eigenvalue arguments are unaffected.
    out.theta = std::arg(eig.back());
    out.margin = margin;
    return out;
  }

  // All moduli agree up to tol: elliptic unless some repeated eigenvalue is
  // defective.  Work at unit-modulus determinant so moduli sit near 1.
  const double det_mod = std::abs(m.determinant());
  if (det_mod <= 0.0) throw InvalidInputError("classify: singular matrix");
  const double scale = std::pow(det_mod, 1.0 / dim);
  Eigen::MatrixXcd mhat = to_eigen(m) / scale;
  std::vector<Complex> scaled(eig.size());
  for (std::size_t i = 0; i < eig.size(); ++i) scaled[i] = eig[i] / scale;

  const double rank_tol = 1e-8 * mhat.norm();
  double margin = (1.0 + tol) - rho;  // distance from the hyperbolic band
  bool defective = false;
  for (const auto& cluster : cluster_eigenvalues(scaled, kClusterRadius)) {
    const int k = static_cast<int>(cluster.size());
    if (k < 2) continue;
    Complex center = 0.0;
    for (int i : cluster) center += scaled[i];
    center /= static_cast<double>(k);
    Eigen::MatrixXcd shifted = mhat;
    for (int i = 0; i < dim; ++i) shifted(i, i) -= center;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
    // Ascending singular values; the k-th smallest decides whether the
    // eigenspace is as large as the algebraic multiplicity.
    const double decisive = svd.singularValues()(dim - k);
    defective = defective || (decisive > rank_tol);
    margin = std::min(margin, std::abs(decisive - rank_tol));
  }

  if (margin < eps_floor)
    throw IndeterminateClassificationError(
        "classify: diagonalizability test sits on its threshold",
        defective ? IsometryKind::parabolic : IsometryKind::elliptic,
        defective ? IsometryKind::elliptic : IsometryKind::parabolic, margin);

  IsometryClass out;
  out.kind = defective ? IsometryKind::parabolic : IsometryKind::elliptic;
  out.margin = margin;
  return out;
}

IsometryClass classify(const GroupElement& g, double tol) {
  return classify(g.matrix(), tol);
}

double length_from_dilation(double r) {
  if (r < 1.0) throw InvalidInputError("length_from_dilation: r must be >= 1");
  const double s = r + 1.0 / r;
  return 2.0 * std::acosh(std::max(1.0, 0.25 * s * s));
}

double translation_length(const GroupElement& g, double tol) {
  IsometryClass cls = classify(g, tol);
  if (cls.kind != IsometryKind::hyperbolic)
    throw NotApplicableError("translation_length: element is " +
                             to_string(cls.kind) + ", not hyperbolic");
  return length_from_dilation(cls.r);
}

GroupElement heisenberg_to_matrix(const HeisenbergElement& h) {
  const int block = static_cast<int>(h.tau.size());
  const int dim = block + 2;
  double tau2 = 0.0;
  for (const Complex& z : h.tau) tau2 += std::norm(z);
  const Complex corner(-0.5 * tau2, -0.5 * h.t);

  SquareMatrix m = SquareMatrix::identity(dim);
  if (h.cusp == Cusp::infinity) {
    for (int i = 0; i < block; ++i) {
      m(0, i + 1) = -std::conj(h.tau[i]);
      m(i + 1, dim - 1) = h.tau[i];
    }
    m(0, dim - 1) = corner;
  } else {
    for (int i = 0; i < block; ++i) {
      m(i + 1, 0) = h.tau[i];
      m(dim - 1, i + 1) = -std::conj(h.tau[i]);
    }
    m(dim - 1, 0) = corner;
  }
  return GroupElement::validated(m, standard_form_for_dim(dim), 1e-12);
}

HeisenbergElement heisenberg_compose(const HeisenbergElement& h1,
                                     const HeisenbergElement& h2) {
  if (h1.cusp != h2.cusp)
    throw InvalidInputError("heisenberg_compose: cusp mismatch");
  if (h1.tau.size() != h2.tau.size())
    throw DimensionMismatchError("heisenberg_compose: dimension mismatch");
  HeisenbergElement out;
  out.cusp = h1.cusp;
  out.tau.resize(h1.tau.size());
  Complex herm = 0.0;  // <tau1, tau2>
  for (std::size_t i = 0; i < h1.tau.size(); ++i) {
    out.tau[i] = h1.tau[i] + h2.tau[i];
    herm += std::conj(h1.tau[i]) * h2.tau[i];
  }
  out.t = h1.t + h2.t + 2.0 * herm.imag();
  return out;
}

GroupElement vertical_translation(double t, int dim) {
  HeisenbergElement h;
  h.tau.assign(dim - 2, Complex(0.0, 0.0));
  h.t = t;
  h.cusp = Cusp::infinity;
  return heisenberg_to_matrix(h);
}

bool fixes_infinity(const GroupElement& g, double tol) {
  const SquareMatrix& nf = g.normal_form();
  return std::abs(nf(nf.dim() - 1, 0)) <= tol * nf.frobenius_norm();
}

GroupElement swap_form(Complex c, const SquareMatrix& A) {
  if (std::abs(c) == 0.0) throw InvalidInputError("swap_form: c must be nonzero");
  const int block = A.dim();
  SquareMatrix check = A.adjoint() * A - SquareMatrix::identity(block);
  if (check.frobenius_norm() > 1e-10)
    throw InvalidInputError("swap_form: A is not unitary");
  const int dim = block + 2;
  SquareMatrix m(dim);
  m(0, dim - 1) = 1.0 / std::conj(c);
  m(dim - 1, 0) = c;
  for (int r = 0; r < block; ++r)
    for (int col = 0; col < block; ++col) m(r + 1, col + 1) = A(r, col);
  return GroupElement::validated(m, standard_form_for_dim(dim), 1e-10);
}

CommutatorTraceCheck commutator_trace_check(double t, const GroupElement& m) {
  const int dim = m.dim();
  const HermitianForm J = standard_form_for_dim(dim);
  const GroupElement g = vertical_translation(t, dim);
  const SquareMatrix commutator = g.matrix() * m.matrix() *
                                  inverse(g, J).matrix() *
                                  inverse(m, J).matrix();
  CommutatorTraceCheck out;
  out.trace_value = commutator.trace();
  const Complex c = m.matrix()(dim - 1, 0);
  out.predicted = dim + std::norm(0.5 * t * c);
  out.residual = std::abs(out.trace_value - Complex(out.predicted, 0.0));
  return out;
}

double u_product_bound(const GroupElement& g) {
  if (fixes_infinity(g))
    throw NotApplicableError(
        "u_product_bound: element stabilizes the cusp at infinity");
  const Complex c = g.matrix()(g.dim() - 1, 0);
  return 4.0 / std::norm(c);
}

}  // namespace cuspcert
