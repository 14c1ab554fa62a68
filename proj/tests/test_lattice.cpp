#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cuspcert/fixtures.hpp"
#include "cuspcert/json_io.hpp"
#include "cuspcert/lattice.hpp"

using namespace cuspcert;
using nlohmann::json;

namespace {

LatticeSpec synthetic2() {
  return load_lattice(load_json_file("fixtures/synthetic-2.json"));
}

bool ball_contains(const WordBall& ball, const SquareMatrix& m) {
  const SquareMatrix nf = projective_normalize(m);
  for (const GroupElement& e : ball.elements)
    if ((e.normal_form() - nf).frobenius_norm() < 1e-7) return true;
  return false;
}

}  // namespace

TEST_CASE("loading the synthetic lattice") {
  const LatticeSpec spec = synthetic2();
  CHECK(spec.n == 2);
  CHECK(spec.cusp_at_infinity);
  // Three generators plus their formal inverses.
  CHECK(spec.generators.size() == 6);
  CHECK(spec.names[3] == "vt2^-1");
  CHECK(spec.names[4] == "swap^-1");
  for (const GroupElement& g : spec.generators) CHECK(g.residual() <= 1e-8);
}

TEST_CASE("lattice document validation errors") {
  SUBCASE("a non-member matrix is named in the error") {
    json doc = load_json_file("fixtures/synthetic-2.json");
    doc["generators"][0]["matrix"][0][0] = json::array({3.0, 0.0});
    CHECK_THROWS_WITH_AS(load_lattice(doc),
                         doctest::Contains("vt2"), MembershipError);
  }

  SUBCASE("empty generator list") {
    json doc = load_json_file("fixtures/synthetic-2.json");
    doc["generators"] = json::array();
    CHECK_THROWS_AS(load_lattice(doc), InvalidInputError);
  }

  SUBCASE("malformed matrix") {
    json doc = load_json_file("fixtures/synthetic-2.json");
    doc["generators"][1]["matrix"][2] = json::array();
    CHECK_THROWS_AS(load_lattice(doc), InvalidInputError);
  }
}

TEST_CASE("word ball enumeration on the synthetic lattice") {
  const LatticeSpec spec = synthetic2();

  SUBCASE("length 1: identity plus the distinct generators") {
    const WordBall ball = word_ball(spec, 1);
    // The swap is its own inverse, so the six formal generators collapse to
    // five projective classes; with the identity that makes six elements.
    CHECK(ball.elements.size() == 6);
    CHECK(ball.elements[0].normal_form() ==
          projective_normalize(SquareMatrix::identity(3)));
    for (const GroupElement& g : spec.generators)
      CHECK(ball_contains(ball, g.matrix()));
    // Each element carries a shortest witnessing word.
    for (const GroupElement& e : ball.elements) {
      REQUIRE(e.word().has_value());
      CHECK(e.word()->size() <= 1);
    }
  }

  SUBCASE("length 2: dedup trims the crude word count") {
    const WordBall ball = word_ball(spec, 2);
    CHECK(ball.elements.size() < 6 * 6 + 7);
    CHECK(ball.elements.size() > 6);

    // swap^2 = identity appears; swap * dil2 fixes infinity only after
    // squaring; the square of the swap fixes both cusps.
    const HermitianForm& j = spec.form;
    const GroupElement swap = spec.generators[1];
    const GroupElement swap2 = product(swap, swap, j);
    CHECK(fixes_infinity(swap2));
    CHECK(ball_contains(ball, swap2.matrix()));
  }

  SUBCASE("balls are nested and residuals stay within budget") {
    const WordBall small = word_ball(spec, 2);
    const WordBall large = word_ball(spec, 3);
    CHECK(small.elements.size() <= large.elements.size());
    for (const GroupElement& e : small.elements)
      CHECK(ball_contains(large, e.matrix()));
    for (const GroupElement& e : large.elements)
      CHECK(e.residual() <= kBallResidualBudget);
  }

  SUBCASE("cap overflow raises a partial result") {
    try {
      word_ball(spec, 3, 1e-8, 10);
      FAIL("expected BallCapExceededError");
    } catch (const BallCapExceededError& e) {
      CHECK(e.partial().elements.size() > 10);
      CHECK(e.completed_length() >= 1);
    }
  }

  SUBCASE("usage errors") {
    CHECK_THROWS_AS(word_ball(spec, 0), InvalidInputError);
    CHECK_THROWS_AS(word_ball(spec, 13), InvalidInputError);
  }
}

TEST_CASE("census of the synthetic lattice") {
  const LatticeSpec spec = synthetic2();
  const double axis_length = 2.0 * std::acosh(25.0 / 16.0);

  SUBCASE("length 1") {
    const WordBallCensus c = census(word_ball(spec, 1), spec);
    CHECK(c.element_count == 6);
    CHECK(c.hyperbolic_count == 2);  // dil2 and its inverse
    CHECK(c.indeterminate_count == 0);
    REQUIRE(c.sys_upper_estimate.has_value());
    CHECK(*c.sys_upper_estimate == doctest::Approx(axis_length).epsilon(1e-9));
    // |tr| = 3.5 for the dilation; the vertical translation sits at 3.
    REQUIRE(c.lambda_estimate.has_value());
    CHECK(*c.lambda_estimate == doctest::Approx(3.5).epsilon(1e-9));
  }

  SUBCASE("spectra grow and minima never increase") {
    std::optional<double> prev_sys;
    std::size_t prev_count = 0;
    for (int length = 1; length <= 4; ++length) {
      const WordBallCensus c = census(word_ball(spec, length), spec);
      CHECK(c.element_count >= prev_count);
      prev_count = c.element_count;
      REQUIRE(c.sys_upper_estimate.has_value());
      if (prev_sys) CHECK(*c.sys_upper_estimate <= *prev_sys + 1e-12);
      prev_sys = c.sys_upper_estimate;
      CHECK(*c.sys_upper_estimate <= axis_length + 1e-6);
    }
  }

  SUBCASE("the commutator of vt2 and swap shows up in the trace spectrum") {
    const WordBallCensus c = census(word_ball(spec, 4), spec);
    // tr[vt2, swap] = 3 + |2 * 1 / 2|^2 = 4.
    const bool found =
        std::any_of(c.trace_spectrum.begin(), c.trace_spectrum.end(),
                    [](double t) { return std::abs(t - 4.0) <= 1e-9; });
    CHECK(found);
  }

  SUBCASE("cusp statistics") {
    const WordBallCensus c1 = census(word_ball(spec, 1), spec);
    REQUIRE(c1.cusp_stats.t_min_vertical.has_value());
    CHECK(*c1.cusp_stats.t_min_vertical == doctest::Approx(2.0));
    REQUIRE(c1.cusp_stats.c_min_non_stabilizer.has_value());
    CHECK(*c1.cusp_stats.c_min_non_stabilizer == doctest::Approx(1.0));
    CHECK(*c1.cusp_stats.depth_estimate == doctest::Approx(1.0));

    // dil2 * swap has |c| = 1/2, so the minimum drops at length 2.
    const WordBallCensus c2 = census(word_ball(spec, 2), spec);
    CHECK(*c2.cusp_stats.c_min_non_stabilizer == doctest::Approx(0.5));
    CHECK(*c2.cusp_stats.t_min_vertical == doctest::Approx(2.0));
  }

  SUBCASE("determinism across worker counts") {
    for (int length : {1, 2, 3}) {
      const json a = census_to_json(census(word_ball(spec, length, 1e-8,
                                                     kDefaultBallCap, 1),
                                           spec, 1));
      const json b = census_to_json(census(word_ball(spec, length, 1e-8,
                                                     kDefaultBallCap, 2),
                                           spec, 2));
      const json c = census_to_json(census(word_ball(spec, length, 1e-8,
                                                     kDefaultBallCap, 8),
                                           spec, 8));
      CHECK(a.dump() == b.dump());
      CHECK(a.dump() == c.dump());
    }
  }
}

TEST_CASE("vertical translation recognition") {
  CHECK(vertical_translation_parameter(vertical_translation(2.0, 3)) ==
        doctest::Approx(2.0));
  CHECK(vertical_translation_parameter(vertical_translation(-3.5, 3)) ==
        doctest::Approx(-3.5));
  const HermitianForm j = HermitianForm::standard(2);
  CHECK_FALSE(vertical_translation_parameter(
                  GroupElement::validated(SquareMatrix::identity(3), j))
                  .has_value());
  CHECK_FALSE(vertical_translation_parameter(fixtures::diagonal_dilation(2.0, 2))
                  .has_value());
  // Projective rescaling does not fool the detector.
  const SquareMatrix scaled =
      Complex(0.0, 1.0) * vertical_translation(2.0, 3).matrix();
  const GroupElement g = GroupElement::validated(scaled, HermitianForm::standard(2));
  CHECK(vertical_translation_parameter(g) == doctest::Approx(2.0));
}

TEST_CASE("thin-part membership witness") {
  const LatticeSpec spec = synthetic2();
  const std::vector<GroupElement> stab = {spec.generators[0]};  // vt2

  SiegelPoint high{{Complex(0, 0)}, 0.0, 10.0};
  SiegelPoint low{{Complex(0, 0)}, 0.0, 0.1};
  // d((0,0,10), (0,±2,10)) = 2 acosh(|20 + 2i|^2 / 400) ~ 0.283.
  CHECK(thin_membership(high, stab, 1.0));
  CHECK_FALSE(thin_membership(low, stab, 1.0));
  CHECK_FALSE(thin_membership(high, {}, 1.0));

  const std::vector<GroupElement> bad = {spec.generators[1]};  // the swap
  CHECK_THROWS_AS(thin_membership(high, bad, 1.0), InvalidInputError);
}
