#include <doctest.h>

#include <cmath>
#include <random>

#include "cuspcert/fixtures.hpp"
#include "cuspcert/hermitian.hpp"

using namespace cuspcert;

namespace {

SquareMatrix diag3(Complex a, Complex b, Complex c) {
  SquareMatrix m(3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

ProjectivePoint pt(std::initializer_list<Complex> cs) {
  return ProjectivePoint{std::vector<Complex>(cs)};
}

}  // namespace

TEST_CASE("standard form has signature (n, 1)") {
  const HermitianForm j = HermitianForm::standard(2);
  CHECK(j.dim() == 3);
  CHECK(j.positive == 2);
  CHECK(j.negative == 1);
  // Hermitian: J equals its adjoint entrywise.
  CHECK((j.matrix.adjoint() - j.matrix).frobenius_norm() == 0.0);
}

TEST_CASE("form_value at the reference points") {
  const HermitianForm j = HermitianForm::standard(2);
  CHECK(form_value(j, pt({-0.5, 0.0, 1.0})) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(form_value(j, pt({0.0, 0.0, 1.0})) == doctest::Approx(0.0));
  CHECK(form_value(j, pt({1.0, 0.0, 0.0})) == doctest::Approx(0.0));
  CHECK_THROWS_AS(form_value(j, pt({0.0, 0.0, 0.0})), InvalidInputError);
}

TEST_CASE("membership residual separates members from non-members") {
  const HermitianForm j = HermitianForm::standard(2);
  CHECK(membership_residual(j, SquareMatrix::identity(3)) <= 1e-15);
  CHECK(membership_residual(j, diag3(2.0, 1.0, 0.5)) <= 1e-15);
  // diag(2, 1, 1): (J M* J) M - I = diag(1, 0, 1), Frobenius sqrt(2).
  CHECK(membership_residual(j, diag3(2.0, 1.0, 1.0)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(membership_residual(j, SquareMatrix::identity(4)),
                  DimensionMismatchError);
}

TEST_CASE("projective normalization") {
  const Complex i(0.0, 1.0);

  SUBCASE("scalar phase is removed") {
    const SquareMatrix m = projective_normalize(i * SquareMatrix::identity(3));
    CHECK((m - SquareMatrix::identity(3)).frobenius_norm() <= 1e-15);
  }

  SUBCASE("pinned example: diag(2i, i, i/2)") {
    const SquareMatrix m = projective_normalize(diag3(2.0 * i, i, 0.5 * i));
    CHECK(m(0, 0) == Complex(1.0, 0.0));
    CHECK(m(1, 1) == doctest::Approx(0.5));
    CHECK(m(2, 2) == doctest::Approx(0.25));
  }

  SUBCASE("idempotent bit for bit and invariant under -2") {
    fixtures::Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      SquareMatrix m(3);
      std::uniform_real_distribution<double> dist(-2.0, 2.0);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = Complex(dist(rng), dist(rng));
      const SquareMatrix once = projective_normalize(m);
      CHECK(projective_normalize(once) == once);
      CHECK(projective_normalize(Complex(-2.0, 0.0) * m) == once);
    }
  }

  SUBCASE("invariant under generic scalars, up to rounding") {
    fixtures::Rng rng(8);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
      SquareMatrix m(3);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = Complex(dist(rng), dist(rng));
      const Complex mu(dist(rng), dist(rng));
      if (std::abs(mu) < 0.1) continue;
      const SquareMatrix a = projective_normalize(m);
      const SquareMatrix b = projective_normalize(mu * m);
      CHECK((a - b).frobenius_norm() <= 1e-12);
    }
  }

  SUBCASE("zero matrix is rejected") {
    CHECK_THROWS_AS(projective_normalize(SquareMatrix(3)), InvalidInputError);
  }
}

TEST_CASE("eigenvalues") {
  SUBCASE("identity and diagonal") {
    const auto id = eigenvalues(SquareMatrix::identity(3));
    for (const Complex& z : id) CHECK(std::abs(z - 1.0) <= 1e-14);
    const auto d = eigenvalues(diag3(2.0, 1.0, 0.5));
    CHECK(std::abs(d[0] - 0.5) <= 1e-14);
    CHECK(std::abs(d[1] - 1.0) <= 1e-14);
    CHECK(std::abs(d[2] - 2.0) <= 1e-14);
  }

  SUBCASE("vertical translation is unipotent") {
    SquareMatrix m = SquareMatrix::identity(3);
    m(0, 2) = Complex(0.0, -1.0);
    for (const Complex& z : eigenvalues(m)) CHECK(std::abs(z - 1.0) <= 1e-8);
  }

  SUBCASE("similarity invariance") {
    fixtures::Rng rng(9);
    const HermitianForm j = HermitianForm::standard(2);
    for (int trial = 0; trial < 20; ++trial) {
      const GroupElement g = fixtures::random_member(2, rng);
      const SquareMatrix m = fixtures::random_member(2, rng).matrix();
      const auto a = eigenvalues(m);
      const auto b = eigenvalues(g.matrix() * m * inverse(g, j).matrix());
      for (int k = 0; k < 3; ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-8);
    }
  }

  SUBCASE("dimension cap") {
    CHECK_THROWS_AS(eigenvalues(SquareMatrix::identity(17)), InvalidInputError);
  }
}

TEST_CASE("group element validation and closure") {
  const HermitianForm j = HermitianForm::standard(2);

  SUBCASE("non-member rejected with its residual") {
    CHECK_THROWS_AS(GroupElement::validated(diag3(2.0, 1.0, 1.0), j),
                    MembershipError);
  }

  SUBCASE("products and inverses of members stay members") {
    fixtures::Rng rng(10);
    for (int trial = 0; trial < 25; ++trial) {
      fixtures::MemberOptions opt;
      opt.factors = 8;
      const GroupElement g = fixtures::random_member(2, rng, opt);
      CHECK(g.residual() <= 1e-8);
      CHECK(inverse(g, j).residual() <= 1e-8);
    }
  }

  SUBCASE("form values are preserved by members") {
    fixtures::Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
      const GroupElement g = fixtures::random_member(2, rng);
      std::uniform_real_distribution<double> dist(-2.0, 2.0);
      ProjectivePoint z{{Complex(dist(rng), dist(rng)),
                         Complex(dist(rng), dist(rng)),
                         Complex(dist(rng), dist(rng))}};
      double norm2 = 0.0;
      for (const Complex& c : z.coords) norm2 += std::norm(c);
      const double before = form_value(j, z);
      const double after = form_value(j, ProjectivePoint{g.matrix() * z.coords});
      CHECK(std::abs(after - before) <= 1e-8 * norm2);
    }
  }

  SUBCASE("words concatenate through products") {
    GroupElement a = GroupElement::validated(SquareMatrix::identity(3), j);
    a.set_word({0});
    GroupElement b = GroupElement::validated(SquareMatrix::identity(3), j);
    b.set_word({1, 2});
    const GroupElement ab = product(a, b, j);
    REQUIRE(ab.word().has_value());
    CHECK(*ab.word() == std::vector<std::int32_t>{0, 1, 2});
  }
}
