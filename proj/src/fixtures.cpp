#include "cuspcert/fixtures.hpp"

#include <Eigen/Dense>
#include <Eigen/QR>
#include <cmath>
#include <numbers>

namespace cuspcert::fixtures {

namespace {

Complex random_complex(Rng& rng, double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  return {dist(rng), dist(rng)};
}

Complex random_phase(Rng& rng) {
  std::uniform_real_distribution<double> dist(-std::numbers::pi,
                                              std::numbers::pi);
  const double phi = dist(rng);
  return {std::cos(phi), std::sin(phi)};
}

}  // namespace

SquareMatrix random_unitary(int dim, Rng& rng) {
  if (dim < 1) throw InvalidInputError("random_unitary: dim must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd a(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the column phases so Q is the unique factor with positive diag(R).
  for (int c = 0; c < dim; ++c) {
    Complex d = rmat(c, c);
    if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
  }
  SquareMatrix out(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) out(r, c) = q(r, c);
  return out;
}

GroupElement random_heisenberg(int n, Rng& rng, Cusp cusp,
                               const MemberOptions& opt) {
  HeisenbergElement h;
  h.cusp = cusp;
  h.tau.resize(n - 1);
  for (Complex& z : h.tau) z = random_complex(rng, opt.tau_scale);
  std::uniform_real_distribution<double> tdist(-opt.t_scale, opt.t_scale);
  h.t = tdist(rng);
  return heisenberg_to_matrix(h);
}

GroupElement random_swap(int n, Rng& rng, const MemberOptions& opt) {
  std::uniform_real_distribution<double> cdist(opt.c_lo, opt.c_hi);
  const Complex c = cdist(rng) * random_phase(rng);
  return swap_form(c, random_unitary(n - 1, rng));
}

GroupElement random_cusp_diagonal(int n, Rng& rng, const MemberOptions& opt) {
  std::uniform_real_distribution<double> adist(opt.a_lo, opt.a_hi);
  const Complex a = adist(rng) * random_phase(rng);
  SquareMatrix block = random_unitary(n - 1, rng);
  SquareMatrix m(n + 1);
  m(0, 0) = a;
  m(n, n) = 1.0 / std::conj(a);
  for (int r = 0; r < n - 1; ++r)
    for (int c = 0; c < n - 1; ++c) m(r + 1, c + 1) = block(r, c);
  return GroupElement::validated(m, HermitianForm::standard(n), 1e-10);
}

GroupElement random_member(int n, Rng& rng, const MemberOptions& opt) {
  const HermitianForm form = HermitianForm::standard(n);
  GroupElement out =
      GroupElement::validated(SquareMatrix::identity(n + 1), form);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int i = 0; i < opt.factors; ++i) {
    GroupElement factor = [&] {
      switch (pick(rng)) {
        case 0: return random_heisenberg(n, rng, Cusp::infinity, opt);
        case 1: return random_heisenberg(n, rng, Cusp::zero, opt);
        case 2: return random_swap(n, rng, opt);
        default: return random_cusp_diagonal(n, rng, opt);
      }
    }();
    out = product(out, factor, form);
  }
  return out;
}

GroupElement diagonal_dilation(double r, int n) {
  if (r <= 0.0) throw InvalidInputError("diagonal_dilation: r must be positive");
  SquareMatrix m = SquareMatrix::identity(n + 1);
  m(0, 0) = r;
  m(n, n) = 1.0 / r;
  return GroupElement::validated(m, HermitianForm::standard(n), 1e-12);
}

SiegelPoint random_point(int n, Rng& rng, double zeta_scale, double v_scale,
                         double log_u_scale) {
  SiegelPoint p;
  p.zeta.resize(n - 1);
  for (Complex& z : p.zeta) z = random_complex(rng, zeta_scale);
  std::uniform_real_distribution<double> vdist(-v_scale, v_scale);
  std::uniform_real_distribution<double> udist(-log_u_scale, log_u_scale);
  p.v = vdist(rng);
  p.u = std::exp(udist(rng));
  return p;
}

}  // namespace cuspcert::fixtures
