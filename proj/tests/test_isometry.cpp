#include <doctest.h>

#include <cmath>

#include "cuspcert/fixtures.hpp"
#include "cuspcert/isometry.hpp"
#include "cuspcert/siegel.hpp"

using namespace cuspcert;

TEST_CASE("classification of the reference isometries") {
  const HermitianForm j = HermitianForm::standard(2);

  SUBCASE("identity is elliptic") {
    const GroupElement id = GroupElement::validated(SquareMatrix::identity(3), j);
    CHECK(classify(id).kind == IsometryKind::elliptic);
  }

  SUBCASE("vertical translations are parabolic") {
    CHECK(classify(vertical_translation(2.0, 3)).kind == IsometryKind::parabolic);
    // A translation with nonzero zeta shift as well.
    HeisenbergElement h{{Complex(1.0, 0.5)}, 1.0, Cusp::infinity};
    CHECK(classify(heisenberg_to_matrix(h)).kind == IsometryKind::parabolic);
  }

  SUBCASE("the dilation is hyperbolic with r = 2, theta = 0") {
    const IsometryClass cls = classify(fixtures::diagonal_dilation(2.0, 2));
    CHECK(cls.kind == IsometryKind::hyperbolic);
    CHECK(cls.r == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(cls.theta) <= 1e-12);
  }

  SUBCASE("scale invariance of kind and r") {
    const SquareMatrix m = fixtures::diagonal_dilation(2.0, 2).matrix();
    for (Complex mu : {Complex(0.0, 2.0), Complex(-3.0, 0.0), Complex(0.5, -0.5)}) {
      const IsometryClass cls = classify(mu * m);
      CHECK(cls.kind == IsometryKind::hyperbolic);
      CHECK(cls.r == doctest::Approx(2.0).epsilon(1e-10));
    }
    SquareMatrix vt = vertical_translation(2.0, 3).matrix();
    CHECK(classify(Complex(0.0, 1.0) * vt).kind == IsometryKind::parabolic);
  }

  SUBCASE("conjugation invariance") {
    fixtures::Rng rng(31);
    const HermitianForm form = HermitianForm::standard(2);
    for (int trial = 0; trial < 10; ++trial) {
      const GroupElement g = fixtures::random_member(2, rng);
      const GroupElement ginv = inverse(g, form);

      const GroupElement hyp = fixtures::diagonal_dilation(1.7, 2);
      const IsometryClass conj_cls =
          classify(product(product(g, hyp, form), ginv, form));
      CHECK(conj_cls.kind == IsometryKind::hyperbolic);
      CHECK(conj_cls.r == doctest::Approx(1.7).epsilon(1e-6));

      // Conjugated unipotents scatter their eigenvalues by about eps^(1/3);
      // classify with a tolerance above that noise floor.
      const GroupElement par = vertical_translation(2.0, 3);
      const GroupElement conj_par = product(product(g, par, form), ginv, form);
      CHECK(classify(conj_par, 1e-4).kind == IsometryKind::parabolic);
    }
  }
}

TEST_CASE("translation length") {
  CHECK(translation_length(fixtures::diagonal_dilation(2.0, 2)) ==
        doctest::Approx(2.0 * std::acosh(25.0 / 16.0)).epsilon(1e-12));
  CHECK(translation_length(fixtures::diagonal_dilation(3.0, 2)) ==
        doctest::Approx(2.0 * std::acosh(100.0 / 36.0)).epsilon(1e-12));
  // Degenerate limit: the formula itself tends to zero as r -> 1.
  CHECK(length_from_dilation(1.0) == 0.0);
  CHECK(length_from_dilation(1.0 + 1e-8) <= 1e-3);

  const HermitianForm j = HermitianForm::standard(2);
  CHECK_THROWS_AS(
      translation_length(GroupElement::validated(SquareMatrix::identity(3), j)),
      NotApplicableError);
  CHECK_THROWS_AS(translation_length(vertical_translation(1.0, 3)),
                  NotApplicableError);
}

TEST_CASE("Heisenberg matrices match the printed forms") {
  SUBCASE("vertical translation t = 2 at infinity") {
    const SquareMatrix m = vertical_translation(2.0, 3).matrix();
    CHECK(m(0, 2) == Complex(0.0, -1.0));
    CHECK(m(0, 0) == Complex(1.0, 0.0));
    CHECK(m(1, 1) == Complex(1.0, 0.0));
    CHECK(m(2, 2) == Complex(1.0, 0.0));
    CHECK(m(0, 1) == Complex(0.0, 0.0));
    CHECK(m(2, 0) == Complex(0.0, 0.0));
  }

  SUBCASE("t = 0 with no shift is the identity") {
    HeisenbergElement h{{Complex(0.0, 0.0)}, 0.0, Cusp::infinity};
    CHECK((heisenberg_to_matrix(h).matrix() - SquareMatrix::identity(3))
              .frobenius_norm() == 0.0);
  }

  SUBCASE("the zero-cusp translation is the mirrored lower form") {
    HeisenbergElement h{{Complex(0.0, 0.0)}, 2.0, Cusp::zero};
    const SquareMatrix m = heisenberg_to_matrix(h).matrix();
    CHECK(m(2, 0) == Complex(0.0, -1.0));
    CHECK(m(0, 2) == Complex(0.0, 0.0));
  }

  SUBCASE("membership is exact") {
    fixtures::Rng rng(33);
    for (int i = 0; i < 50; ++i) {
      const GroupElement g =
          fixtures::random_heisenberg(3, rng, i % 2 ? Cusp::infinity : Cusp::zero);
      CHECK(g.residual() <= 1e-12);
    }
  }

  SUBCASE("general tau carries the conjugate row") {
    HeisenbergElement h{{Complex(1.0, 2.0)}, 3.0, Cusp::infinity};
    const SquareMatrix m = heisenberg_to_matrix(h).matrix();
    CHECK(m(0, 1) == Complex(-1.0, 2.0));       // -conj(tau)
    CHECK(m(1, 2) == Complex(1.0, 2.0));        // tau
    CHECK(m(0, 2) == Complex(-2.5, -1.5));      // -(|tau|^2 + i t)/2
  }
}

TEST_CASE("Heisenberg composition") {
  SUBCASE("vertical translations add") {
    HeisenbergElement a{{Complex(0, 0)}, 1.5, Cusp::infinity};
    HeisenbergElement b{{Complex(0, 0)}, -0.25, Cusp::infinity};
    const HeisenbergElement ab = heisenberg_compose(a, b);
    CHECK(ab.t == 1.25);
    CHECK(ab.tau[0] == Complex(0.0, 0.0));
  }

  SUBCASE("inverse pairs cancel exactly") {
    HeisenbergElement a{{Complex(0.7, -0.3)}, 0.0, Cusp::infinity};
    HeisenbergElement b{{-a.tau[0]}, 0.0, Cusp::infinity};
    const HeisenbergElement ab = heisenberg_compose(a, b);
    CHECK(ab.t == 0.0);
    CHECK(ab.tau[0] == Complex(0.0, 0.0));
  }

  SUBCASE("the cross term fixes the sign convention: (1,0) * (i,0)") {
    HeisenbergElement a{{Complex(1.0, 0.0)}, 0.0, Cusp::infinity};
    HeisenbergElement b{{Complex(0.0, 1.0)}, 0.0, Cusp::infinity};
    const HeisenbergElement ab = heisenberg_compose(a, b);
    CHECK(ab.tau[0] == Complex(1.0, 1.0));
    CHECK(ab.t == doctest::Approx(2.0));  // 2 Im<1, i> = 2
    // The matrix product agrees.
    const SquareMatrix lhs = heisenberg_to_matrix(ab).matrix();
    const SquareMatrix rhs =
        heisenberg_to_matrix(a).matrix() * heisenberg_to_matrix(b).matrix();
    CHECK((lhs - rhs).frobenius_norm() <= 1e-12);
  }

  SUBCASE("associative to rounding") {
    fixtures::Rng rng(34);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
      auto h = [&] {
        return HeisenbergElement{{Complex(dist(rng), dist(rng))}, dist(rng),
                                 Cusp::infinity};
      };
      const HeisenbergElement a = h(), b = h(), c = h();
      const HeisenbergElement left = heisenberg_compose(heisenberg_compose(a, b), c);
      const HeisenbergElement right = heisenberg_compose(a, heisenberg_compose(b, c));
      CHECK(std::abs(left.t - right.t) <= 1e-12);
      CHECK(std::abs(left.tau[0] - right.tau[0]) <= 1e-12);
    }
  }

  SUBCASE("cusp mismatch is rejected") {
    HeisenbergElement a{{Complex(0, 0)}, 1.0, Cusp::infinity};
    HeisenbergElement b{{Complex(0, 0)}, 1.0, Cusp::zero};
    CHECK_THROWS_AS(heisenberg_compose(a, b), InvalidInputError);
  }
}

TEST_CASE("cusp stabilizer detection") {
  CHECK(fixes_infinity(vertical_translation(2.0, 3)));
  CHECK(fixes_infinity(fixtures::diagonal_dilation(2.0, 2)));
  CHECK_FALSE(fixes_infinity(swap_form(1.0, SquareMatrix::identity(1))));

  fixtures::Rng rng(35);
  for (int i = 0; i < 20; ++i)
    CHECK(fixes_infinity(fixtures::random_heisenberg(2, rng, Cusp::infinity)));
}

TEST_CASE("swap form") {
  const GroupElement s = swap_form(1.0, SquareMatrix::identity(1));

  SUBCASE("c = 1 gives the anti-diagonal") {
    const SquareMatrix m = s.matrix();
    CHECK(m(0, 2) == Complex(1.0, 0.0));
    CHECK(m(1, 1) == Complex(1.0, 0.0));
    CHECK(m(2, 0) == Complex(1.0, 0.0));
    CHECK(m(0, 0) == Complex(0.0, 0.0));
    CHECK(s.residual() <= 1e-12);
  }

  SUBCASE("it swaps the two distinguished cusps") {
    const ProjectivePoint q_inf{{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}};
    const ProjectivePoint q_zero{{{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}};
    CHECK(projectively_close(ProjectivePoint{s.matrix() * q_inf.coords}, q_zero));
    CHECK(projectively_close(ProjectivePoint{s.matrix() * q_zero.coords}, q_inf));
  }

  SUBCASE("its square fixes both cusps") {
    const HermitianForm j = HermitianForm::standard(2);
    const GroupElement s2 = product(s, s, j);
    CHECK(fixes_infinity(s2));
    CHECK(std::abs(s2.matrix()(0, 2)) <= 1e-14);
  }

  SUBCASE("rejects c = 0 and non-unitary blocks") {
    CHECK_THROWS_AS(swap_form(0.0, SquareMatrix::identity(1)), InvalidInputError);
    SquareMatrix bad(1);
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(swap_form(1.0, bad), InvalidInputError);
  }
}

TEST_CASE("height product bound") {
  CHECK(u_product_bound(swap_form(1.0, SquareMatrix::identity(1))) ==
        doctest::Approx(4.0));
  CHECK(u_product_bound(swap_form(2.0, SquareMatrix::identity(1))) ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(u_product_bound(vertical_translation(1.0, 3)),
                  NotApplicableError);

  // Random sweep: u(z) u(gz) never exceeds the bound.
  fixtures::Rng rng(36);
  for (int trial = 0; trial < 10; ++trial) {
    fixtures::MemberOptions opt;
    opt.factors = 3;
    GroupElement g = fixtures::random_member(2, rng, opt);
    if (fixes_infinity(g)) continue;
    const double bound = u_product_bound(g);
    for (int i = 0; i < 50; ++i) {
      const SiegelPoint z = fixtures::random_point(2, rng, 2.0, 4.0, 2.0);
      CHECK(z.u * act(g, z).u <= bound + 1e-8);
    }
  }
}

TEST_CASE("commutator trace identity") {
  SUBCASE("stabilizers give the flat trace") {
    const CommutatorTraceCheck chk =
        commutator_trace_check(3.7, fixtures::diagonal_dilation(2.0, 2));
    CHECK(chk.predicted == doctest::Approx(3.0));
    CHECK(std::abs(chk.trace_value - Complex(3.0, 0.0)) <= 1e-12);
  }

  SUBCASE("pinned swap examples") {
    const CommutatorTraceCheck a =
        commutator_trace_check(2.0, swap_form(1.0, SquareMatrix::identity(1)));
    CHECK(a.predicted == doctest::Approx(4.0));
    CHECK(a.residual <= 1e-12);

    const CommutatorTraceCheck b =
        commutator_trace_check(4.0, swap_form(3.0, SquareMatrix::identity(1)));
    CHECK(b.predicted == doctest::Approx(39.0));
    CHECK(b.residual <= 1e-10);
  }
}
