#include "cuspcert/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include "cuspcert/fixtures.hpp"
#include "cuspcert/isometry.hpp"
#include "cuspcert/json_io.hpp"
#include "cuspcert/lattice.hpp"
#include "cuspcert/siegel.hpp"

namespace cuspcert::verify {

namespace {

using fixtures::Rng;
using nlohmann::json;

// Tracks the worst discrepancy seen and keeps a description of the first
// fixture that broke the bound.
class Tracker {
 public:
  explicit Tracker(double bound) : bound_(bound) {}

  void observe(double discrepancy, const std::function<json()>& describe) {
    if (discrepancy > worst_) worst_ = discrepancy;
    if (discrepancy > bound_ && ce_.is_null()) ce_ = describe();
  }

  bool ok() const { return worst_ <= bound_; }
  double worst() const { return worst_; }
  double bound() const { return bound_; }
  const json& counterexample() const { return ce_; }

  SuiteCheck check(std::string name, std::string detail = "") const {
    return SuiteCheck{std::move(name), ok(), worst_, bound_, std::move(detail)};
  }

 private:
  double bound_;
  double worst_ = 0.0;
  json ce_;
};

void finish(SuiteResult& result) {
  result.passed = true;
  for (const SuiteCheck& c : result.checks) result.passed = result.passed && c.passed;
}

double point_error(const SiegelPoint& a, const SiegelPoint& b) {
  double err = std::abs(a.v - b.v) + std::abs(a.u - b.u);
  for (std::size_t i = 0; i < a.zeta.size(); ++i)
    err += std::abs(a.zeta[i] - b.zeta[i]);
  return err;
}

SiegelPoint axis_point(double u) { return SiegelPoint{{Complex(0, 0)}, 0.0, u}; }

SiegelPoint axis_origin(int n) {
  SiegelPoint p;
  p.zeta.assign(n - 1, Complex(0.0, 0.0));
  p.u = 1.0;
  return p;
}

SuiteResult metric_suite(std::uint64_t seed) {
  SuiteResult result{.suite = "metric", .seed = seed};
  Rng rng(seed);
  Tracker symmetry(1e-12), invariance(1e-8), roundtrip(1e-12), dominance(1e-10);
  const int pairs = 10000;
  for (int i = 0; i < pairs; ++i) {
    const int n = (i % 2) ? 3 : 2;
    const SiegelPoint z1 = fixtures::random_point(n, rng);
    const SiegelPoint z2 = fixtures::random_point(n, rng);
    const GroupElement m = fixtures::random_member(n, rng);
    auto describe = [&] {
      return json{{"index", i},
                  {"n", n},
                  {"z1", point_to_json(z1)},
                  {"z2", point_to_json(z2)},
                  {"matrix", matrix_to_json(m.matrix())}};
    };

    const double d12 = distance(z1, z2);
    symmetry.observe(std::abs(d12 - distance(z2, z1)), describe);
    dominance.observe(distance_lower_bound(z1.u, z2.u) - d12, describe);
    roundtrip.observe(point_error(unembed(embed(z1)), z1), describe);
    invariance.observe(std::abs(distance(act(m, z1), act(m, z2)) - d12),
                       describe);
  }
  result.checks.push_back(symmetry.check("symmetry", "10^4 random pairs"));
  result.checks.push_back(
      invariance.check("isometry invariance", "10^4 pairs under random members"));
  result.checks.push_back(roundtrip.check("unembed-of-embed round trip"));
  result.checks.push_back(
      dominance.check("height lower bound dominance", "d >= bound(u1, u2)"));

  // Pinned values: the axis pair (0,0,1) -> (0,0,4) against the closed form
  // and against the translation length of diag(2, 1, 1/2).
  const double d = distance(axis_point(1.0), axis_point(4.0));
  const double pinned = 2.0 * std::acosh(25.0 / 16.0);
  result.checks.push_back(SuiteCheck{"pinned axis distance",
                                     std::abs(d - pinned) <= 1e-10,
                                     std::abs(d - pinned), 1e-10,
                                     "distance((0,0,1),(0,0,4)) vs 2 acosh(25/16)"});
  const double len = translation_length(fixtures::diagonal_dilation(2.0, 2));
  result.checks.push_back(SuiteCheck{"distance matches translation length",
                                     std::abs(d - len) <= 1e-4,
                                     std::abs(d - len), 1e-4,
                                     "axis displacement of diag(2,1,1/2)"});

  for (const Tracker* t : {&symmetry, &invariance, &roundtrip, &dominance})
    if (!t->ok() && result.counterexample.is_null())
      result.counterexample = t->counterexample();
  finish(result);
  return result;
}

SuiteResult trace_suite(std::uint64_t seed) {
  SuiteResult result{.suite = "trace", .seed = seed};
  Rng rng(seed + 1);
  Tracker residual(1e-8);
  for (int i = 0; i < 100; ++i) {
    const int n = (i % 2) ? 3 : 2;
    std::uniform_real_distribution<double> tdist(-4.0, 4.0);
    const double t = tdist(rng);
    const GroupElement m = fixtures::random_member(n, rng);
    const CommutatorTraceCheck chk = commutator_trace_check(t, m);
    residual.observe(chk.residual, [&] {
      return json{{"index", i},
                  {"n", n},
                  {"t", t},
                  {"matrix", matrix_to_json(m.matrix())},
                  {"trace", {chk.trace_value.real(), chk.trace_value.imag()}},
                  {"predicted", chk.predicted}};
    });
  }
  result.checks.push_back(residual.check(
      "commutator trace identity", "100 fixtures, tr vs n+1+|tc/2|^2"));
  result.counterexample = residual.counterexample();
  finish(result);
  return result;
}

SuiteResult length_suite(std::uint64_t seed, int threads) {
  SuiteResult result{.suite = "length", .seed = seed};
  Rng rng(seed + 2);
  Tracker err(1e-4);
  const double ratios[] = {1.2, 1.5, 2.0, 3.0, 5.0};

  for (int n : {2, 3}) {
    const HermitianForm form = HermitianForm::standard(n);
    for (double r : ratios) {
      const GroupElement diag = fixtures::diagonal_dilation(r, n);

      // A conjugate whose axis passes well inside the sampling box.
      fixtures::MemberOptions opt;
      opt.factors = 3;
      GroupElement conjugator = fixtures::random_member(n, rng, opt);
      for (int attempts = 0; attempts < 64; ++attempts) {
        const SiegelPoint image = act(conjugator, axis_origin(n));
        double zeta_mag = 0.0;
        for (const Complex& z : image.zeta)
          zeta_mag = std::max(zeta_mag, std::abs(z));
        if (zeta_mag <= 2.0 && std::abs(image.v) <= 4.0 &&
            std::abs(std::log(image.u)) <= 1.5)
          break;
        conjugator = fixtures::random_member(n, rng, opt);
      }
      const GroupElement conjugated =
          product(product(conjugator, diag, form), inverse(conjugator, form),
                  form);

      for (const GroupElement* g : {&diag, &conjugated}) {
        const double len = translation_length(*g);
        const DisplacementEstimate est =
            min_displacement_oracle(*g, SamplingBudget{}, threads);
        err.observe(std::abs(est.value - len), [&] {
          return json{{"n", n},
                      {"r", r},
                      {"matrix", matrix_to_json(g->matrix())},
                      {"length", len},
                      {"oracle", est.value},
                      {"converged", est.converged}};
        });
      }
    }
  }
  result.checks.push_back(err.check(
      "translation length vs displacement search",
      "20 fixtures, r in {1.2, 1.5, 2, 3, 5}, diagonal and conjugated, n = 2, 3"));
  result.counterexample = err.counterexample();
  finish(result);
  return result;
}

SuiteResult heisenberg_suite(std::uint64_t seed) {
  SuiteResult result{.suite = "heisenberg", .seed = seed};
  Rng rng(seed + 3);
  Tracker law(1e-12);
  bool vertical_exact = true;
  json vertical_ce;

  for (int i = 0; i < 1000; ++i) {
    const int n = (i % 2) ? 3 : 2;
    const Cusp cusp = (i % 4 < 2) ? Cusp::infinity : Cusp::zero;
    auto draw = [&](double scale) {
      std::uniform_real_distribution<double> dist(-scale, scale);
      return dist(rng);
    };
    HeisenbergElement h1{{}, draw(4.0), cusp}, h2{{}, draw(4.0), cusp};
    for (int k = 0; k < n - 1; ++k) {
      h1.tau.emplace_back(draw(2.0), draw(2.0));
      h2.tau.emplace_back(draw(2.0), draw(2.0));
    }

    const SquareMatrix composed =
        heisenberg_to_matrix(heisenberg_compose(h1, h2)).matrix();
    const SquareMatrix multiplied =
        heisenberg_to_matrix(h1).matrix() * heisenberg_to_matrix(h2).matrix();
    double dist = 0.0;
    for (std::size_t k = 0; k < composed.entries().size(); ++k)
      dist += std::norm(composed.entries()[k] - multiplied.entries()[k]);
    dist = std::sqrt(dist) / (1.0 + multiplied.frobenius_norm());
    law.observe(dist, [&] {
      return json{{"index", i},
                  {"n", n},
                  {"cusp", cusp == Cusp::infinity ? "infinity" : "zero"},
                  {"composed", matrix_to_json(composed)},
                  {"multiplied", matrix_to_json(multiplied)}};
    });

    // Vertical translations commute on the nose.
    HeisenbergElement v1{std::vector<Complex>(n - 1, Complex(0, 0)), draw(4.0),
                         cusp};
    HeisenbergElement v2{std::vector<Complex>(n - 1, Complex(0, 0)), draw(4.0),
                         cusp};
    const HeisenbergElement ab = heisenberg_compose(v1, v2);
    const HeisenbergElement ba = heisenberg_compose(v2, v1);
    if (ab.t != ba.t || ab.t != v1.t + v2.t) {
      vertical_exact = false;
      if (vertical_ce.is_null())
        vertical_ce = json{{"t1", v1.t}, {"t2", v2.t}, {"ab", ab.t}, {"ba", ba.t}};
    }
  }
  result.checks.push_back(law.check("composition law vs matrix product",
                                    "1000 random pairs, both cusps"));
  result.checks.push_back(SuiteCheck{"vertical translations commute exactly",
                                     vertical_exact, vertical_exact ? 0.0 : 1.0,
                                     0.0, "bitwise t1 + t2"});
  result.counterexample =
      !law.ok() ? law.counterexample() : vertical_ce;
  finish(result);
  return result;
}

SuiteResult horoball_suite(std::uint64_t seed) {
  SuiteResult result{.suite = "horoball", .seed = seed};
  Tracker supremum(1e-3);
  bool agreement = true;
  json agreement_ce;

  SamplingBudget budget;
  budget.starts = 16;
  budget.sweeps = 8;
  budget.seed = seed + 4;

  const int grid = 15;
  auto height = [&](int k) { return 0.5 + k * (7.5 / (grid - 1)); };

  for (int j = 0; j < grid; ++j) {
    const double u_inf = height(j);
    const IntersectionProbe probe =
        horoball_intersection_probe(0.1, u_inf, budget);
    supremum.observe(std::abs(probe.best_height_at_zero - 4.0 / u_inf), [&] {
      return json{{"uInf", u_inf},
                  {"sampled", probe.best_height_at_zero},
                  {"supremum", 4.0 / u_inf}};
    });
    for (int i = 0; i < grid; ++i) {
      const double u0 = height(i);
      if (std::abs(u0 * u_inf - 4.0) < 0.1) continue;  // off the critical locus
      const bool sampler_hit = probe.best_height_at_zero > u0;
      const bool disjoint = horoballs_disjoint(u0, u_inf);
      if (sampler_hit == disjoint) {
        agreement = false;
        if (agreement_ce.is_null())
          agreement_ce = json{{"u0", u0},
                              {"uInf", u_inf},
                              {"sampled", probe.best_height_at_zero},
                              {"disjoint", disjoint}};
      }
      if (sampler_hit) {
        // The witness really sits in both horoballs.
        const bool inside =
            horoball_contains({Cusp::infinity, u_inf}, probe.witness) &&
            horoball_contains({Cusp::zero, u0}, probe.witness);
        if (!inside) {
          agreement = false;
          if (agreement_ce.is_null())
            agreement_ce = json{{"u0", u0},
                                {"uInf", u_inf},
                                {"witness", point_to_json(probe.witness)}};
        }
      }
    }
  }
  result.checks.push_back(supremum.check(
      "sampled supremum matches 4/uInf", "15 heights in [0.5, 8]"));
  result.checks.push_back(SuiteCheck{
      "disjointness test vs sampler", agreement, agreement ? 0.0 : 1.0, 0.0,
      "15x15 height grid, margin 0.1 off the product-4 locus"});
  result.counterexample =
      !supremum.ok() ? supremum.counterexample() : agreement_ce;
  finish(result);
  return result;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"metric", "trace", "length", "heisenberg", "horoball"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed,
                      int threads) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult result;
  if (name == "metric") result = metric_suite(seed);
  else if (name == "trace") result = trace_suite(seed);
  else if (name == "length") result = length_suite(seed, threads);
  else if (name == "heisenberg") result = heisenberg_suite(seed);
  else if (name == "horoball") result = horoball_suite(seed);
  else throw InvalidInputError("unknown suite: " + name);
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

nlohmann::json suite_result_to_json(const SuiteResult& result) {
  json checks = json::array();
  for (const SuiteCheck& c : result.checks)
    checks.push_back(json{{"name", c.name},
                          {"passed", c.passed},
                          {"observed", c.observed},
                          {"bound", c.bound},
                          {"detail", c.detail}});
  return json{{"suite", result.suite},
              {"seed", result.seed},
              {"passed", result.passed},
              {"checks", std::move(checks)},
              {"counterexample", result.counterexample},
              {"elapsedSeconds", result.elapsed_seconds}};
}

}  // namespace cuspcert::verify
