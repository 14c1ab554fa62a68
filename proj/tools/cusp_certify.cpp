#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "cuspcert/bounds.hpp"
#include "cuspcert/certificate.hpp"
#include "cuspcert/json_io.hpp"
#include "cuspcert/lattice.hpp"
#include "cuspcert/verify.hpp"

namespace {

using namespace cuspcert;
using nlohmann::json;

// Exit codes: 0 ok, 1 usage/parse, 2 membership failure, 3 indeterminate
// classification, 4 ball cap exceeded, 5 verification mismatch.
enum ExitCode {
  kOk = 0,
  kUsage = 1,
  kMembership = 2,
  kIndeterminate = 3,
  kCapExceeded = 4,
  kVerifyMismatch = 5,
};

void write_or_print(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw InvalidInputError("cannot write to " + out_path);
    out << j.dump(2) << "\n";
  }
}

int cmd_classify(const std::string& file, double tol, const std::string& format,
                 const std::string& out_path) {
  json doc;
  SquareMatrix m(2);
  try {
    doc = load_json_file(file);
    m = matrix_from_json(doc);
  } catch (const InvalidInputError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  }

  const HermitianForm form = standard_form_for_dim(m.dim());
  GroupElement g = [&] {
    try {
      return GroupElement::validated(m, form);
    } catch (const MembershipError& e) {
      std::cerr << "membership failure: residual = " << e.residual() << "\n";
      std::exit(kMembership);
    }
  }();

  IsometryClass cls;
  try {
    cls = classify(g, tol);
  } catch (const IndeterminateClassificationError& e) {
    std::cerr << "indeterminate classification: " << e.what() << " (candidates "
              << to_string(e.first_candidate()) << ", "
              << to_string(e.second_candidate()) << ")\n";
    return kIndeterminate;
  }

  Certificate cert = make_certificate(
      "classify", json{{"file", file}, {"tol", tol}}, isometry_to_json(cls),
      {}, digest_file(file));

  if (format == "json") {
    write_or_print(certificate_to_json(cert), out_path);
  } else {
    if (cls.kind == IsometryKind::hyperbolic)
      std::printf("hyperbolic r=%.6f theta=%.6f length=%.6f margin=%.3g\n",
                  cls.r, cls.theta, length_from_dilation(cls.r), cls.margin);
    else
      std::printf("%s margin=%.3g\n", to_string(cls.kind).c_str(), cls.margin);
    if (!out_path.empty()) write_or_print(certificate_to_json(cert), out_path);
  }
  return kOk;
}

int cmd_ball(const std::string& file, int length, int threads, double dedup_tol,
             std::size_t cap, const std::string& out_path,
             const std::string& cert_path) {
  json doc;
  LatticeSpec spec;
  try {
    doc = load_json_file(file);
    spec = load_lattice(doc);
  } catch (const MembershipError& e) {
    std::cerr << "membership failure: " << e.what() << "\n";
    return kMembership;
  } catch (const InvalidInputError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  }

  WordBallCensus result;
  try {
    const WordBall ball = word_ball(spec, length, dedup_tol, cap, threads);
    result = census(ball, spec, threads);
  } catch (const BallCapExceededError& e) {
    // Keep the partial work: census what we have and point at the resume
    // length.
    const WordBallCensus partial = census(e.partial(), spec, threads);
    json out = census_to_json(partial);
    out["partial"] = true;
    out["completeThroughLength"] = e.completed_length();
    const std::string partial_path =
        out_path.empty() ? "ball-partial.json" : out_path;
    write_or_print(out, partial_path);
    std::cerr << "cap exceeded: " << e.what() << "\npartial census written to "
              << partial_path << "\n";
    return kCapExceeded;
  }

  const json census_json = census_to_json(result);
  write_or_print(census_json, out_path);
  if (!cert_path.empty()) {
    Certificate cert = make_certificate(
        "ball",
        json{{"file", file}, {"length", length}, {"dedupTol", dedup_tol},
             {"cap", cap}},
        census_json, census_json["oneSided"].get<std::vector<std::string>>(),
        digest_file(file));
    write_or_print(certificate_to_json(cert), cert_path);
  }
  return kOk;
}

void print_bound_line(const char* label, const bounds::BoundValue& v,
                      std::optional<bool> certified = std::nullopt) {
  std::printf("  %-38s %-14.8g ln=%-14.10g", label, v.value, v.ln_value);
  if (certified) std::printf(" %s", *certified ? "[certified]" : "[not certified]");
  std::printf("\n");
}

int cmd_bounds(const bounds::BoundInputs& inputs, const std::string& format,
               const std::string& out_path, const std::string& cert_path) {
  bounds::BoundReport report;
  try {
    report = bounds::bound_report(inputs);
  } catch (const InvalidInputError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  const json report_json = bound_report_to_json(report);

  if (format == "json") {
    write_or_print(report_json, out_path);
  } else {
    std::printf("inputs: n=%d sys=%.6g m=%d s=%d", inputs.n, inputs.sys,
                inputs.m, inputs.s);
    if (inputs.sys_d) std::printf(" sysD=%.6g", *inputs.sys_d);
    if (inputs.field_degree) std::printf(" fieldDegree=%d", *inputs.field_degree);
    if (inputs.epsilon) std::printf(" epsilon=%.6g", *inputs.epsilon);
    std::printf("\n\nvolume and degree floors\n");
    print_bound_line("induced volume", report.induced_volume);
    print_bound_line("log-canonical degree", report.log_canonical_degree);
    print_bound_line("canonical degree", report.canonical_degree,
                     report.canonical_degree_certified);
    print_bound_line("canonical volume", report.canonical_volume,
                     report.canonical_volume_certified);

    std::printf("\ntrace and cusp depth\n");
    print_bound_line("trace floor", report.trace_floor);
    if (report.depth_floor)
      print_bound_line("uniform cusp depth", *report.depth_floor);
    else
      std::printf("  %-38s vacuous\n", "uniform cusp depth");

    std::printf("\nsystole thresholds\n");
    std::printf("  %-38s %.10g\n", "ample threshold", report.threshold_ample);
    std::printf("  %-38s %.10g\n", "canonical threshold",
                report.threshold_canonical);
    std::printf("  %-38s %.10g\n", "very-ampleness threshold (s=1)",
                report.very_ampleness_threshold_s1);
    std::printf("  %-38s %.10g\n", "very-ampleness threshold (s)",
                report.very_ampleness_threshold_s);
    std::printf("  %-38s %.10g\n", "thick Seshadri hypothesis",
                report.seshadri_thick_hypothesis);

    std::printf("\nbicanonical positivity\n");
    std::printf("  2K globally generated: %s\n",
                report.globally_generated_2k ? "yes" : "no");
    std::printf("  2K very ample off the boundary: %s\n",
                report.very_ample_mod_d_2k ? "yes" : "no");
    std::printf("  3K very ample: %s\n", report.very_ample_3k ? "yes" : "no");
    std::printf("  2K separates %d-jets: %s (Seshadri >= %.6g)\n", inputs.s,
                report.separates_jets_2k ? "yes" : "no", report.seshadri_jets_lb);

    std::printf("\nSeshadri constants\n");
    print_bound_line("thick-part Seshadri floor", report.seshadri_thick,
                     report.seshadri_thick_certified);
    print_bound_line("exceptional-locus threshold", report.seshadri_locus);
    if (report.boundary_seshadri) {
      std::printf("  %-38s %.10g\n", "boundary Seshadri floor",
                  *report.boundary_seshadri);
      std::printf("  2K very ample everywhere: %s (Seshadri >= %.6g)\n",
                  report.full_very_ample_2k ? "yes" : "no",
                  report.seshadri_full_lb);
    }

    if (report.sparsity) {
      std::printf("\nrational points\n");
      print_bound_line("sparsity exponent", *report.sparsity,
                       report.sparsity_certified);
    }

    std::printf("\nassumptions\n");
    for (const std::string& a : report.assumptions)
      std::printf("  - %s\n", a.c_str());
    if (!out_path.empty()) write_or_print(report_json, out_path);
  }

  if (!cert_path.empty()) {
    json params{{"n", inputs.n}, {"sys", inputs.sys}, {"m", inputs.m},
                {"s", inputs.s}};
    Certificate cert = make_certificate(
        "bounds", params, report_json,
        {"sys is a caller-supplied certified lower bound"},
        "fnv1a64:" + fnv1a64_hex(params.dump()));
    write_or_print(certificate_to_json(cert), cert_path);
  }
  return kOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int threads,
               const std::string& repro_path) {
  verify::SuiteResult result;
  try {
    result = verify::run_suite(suite, seed, threads);
  } catch (const InvalidInputError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  std::printf("suite %-12s seed %llu\n", result.suite.c_str(),
              static_cast<unsigned long long>(result.seed));
  for (const auto& check : result.checks)
    std::printf("  %-44s %s  observed %.3g (bound %.3g)\n", check.name.c_str(),
                check.passed ? "PASS" : "FAIL", check.observed, check.bound);
  std::printf("%s in %.2f s\n", result.passed ? "PASS" : "FAIL",
              result.elapsed_seconds);
  if (!result.passed) {
    const std::string path = repro_path.empty()
                                 ? "verify-" + suite + "-counterexample.json"
                                 : repro_path;
    write_or_print(verify::suite_result_to_json(result), path);
    std::cerr << "counterexample written to " << path << "\n";
    return kVerifyMismatch;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric invariants and effective-bound certificates for "
               "complex ball quotients"};
  app.require_subcommand(1);

  // classify
  std::string classify_file, classify_format = "text", classify_out;
  double classify_tol = kClassifyTol;
  auto* classify_cmd =
      app.add_subcommand("classify", "classify one matrix isometry");
  classify_cmd->add_option("file", classify_file, "matrix JSON file")->required();
  classify_cmd->add_option("--tol", classify_tol, "classification tolerance");
  classify_cmd->add_option("--format", classify_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  classify_cmd->add_option("--out", classify_out, "write certificate JSON here");

  // ball
  std::string ball_file, ball_out, ball_cert;
  int ball_length = 0, ball_threads = 0;
  double ball_dedup = 1e-8;
  std::size_t ball_cap = kDefaultBallCap;
  auto* ball_cmd = app.add_subcommand(
      "ball", "enumerate a generator word ball and print its census");
  ball_cmd->add_option("file", ball_file, "lattice JSON file")->required();
  ball_cmd->add_option("--length", ball_length, "maximum word length (1..12)")
      ->required();
  ball_cmd->add_option("--threads", ball_threads,
                       "worker threads (default: CUSP_CERTIFY_THREADS)");
  ball_cmd->add_option("--dedup-tol", ball_dedup, "projective dedup tolerance");
  ball_cmd->add_option("--cap", ball_cap, "element cap");
  ball_cmd->add_option("--out", ball_out, "write census JSON here");
  ball_cmd->add_option("--cert", ball_cert, "write certificate JSON here");

  // bounds
  bounds::BoundInputs inputs;
  double opt_sysd = -1.0;
  int opt_field_degree = 0;
  double opt_epsilon = -1.0;
  std::string bounds_format = "text", bounds_out, bounds_cert;
  auto* bounds_cmd =
      app.add_subcommand("bounds", "evaluate the effective bound chain");
  bounds_cmd->add_option("--n", inputs.n, "complex dimension")->required();
  bounds_cmd->add_option("--sys", inputs.sys, "certified systole lower bound")
      ->required();
  bounds_cmd->add_option("--m", inputs.m, "subvariety dimension (default 1)");
  bounds_cmd->add_option("--s", inputs.s, "jet order (default 1)");
  bounds_cmd->add_option("--sysD", opt_sysd, "boundary systole");
  bounds_cmd->add_option("--field-degree", opt_field_degree,
                         "number field degree [F:Q]");
  bounds_cmd->add_option("--epsilon", opt_epsilon, "sparsity epsilon");
  bounds_cmd->add_option("--format", bounds_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  bounds_cmd->add_option("--out", bounds_out, "write report JSON here");
  bounds_cmd->add_option("--cert", bounds_cert, "write certificate JSON here");

  // verify
  std::string verify_suite, verify_repro;
  std::uint64_t verify_seed = verify::kDefaultSeed;
  int verify_threads = 0;
  auto* verify_cmd =
      app.add_subcommand("verify", "run an oracle cross-check suite");
  verify_cmd->add_option("--suite", verify_suite,
                         "metric|trace|length|heisenberg|horoball")
      ->required()
      ->check(CLI::IsMember(verify::suite_names()));
  verify_cmd->add_option("--seed", verify_seed, "fixture seed");
  verify_cmd->add_option("--threads", verify_threads, "worker threads");
  verify_cmd->add_option("--repro", verify_repro,
                         "counterexample output path on failure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (classify_cmd->parsed())
      return cmd_classify(classify_file, classify_tol, classify_format,
                          classify_out);
    if (ball_cmd->parsed()) {
      if (ball_length < 1 || ball_length > kMaxWordLength) {
        std::cerr << "usage error: --length must be in 1.." << kMaxWordLength
                  << "\n";
        return kUsage;
      }
      return cmd_ball(ball_file, ball_length, ball_threads, ball_dedup,
                      ball_cap, ball_out, ball_cert);
    }
    if (bounds_cmd->parsed()) {
      if (opt_sysd >= 0.0) inputs.sys_d = opt_sysd;
      if (opt_field_degree > 0) inputs.field_degree = opt_field_degree;
      if (opt_epsilon >= 0.0) inputs.epsilon = opt_epsilon;
      return cmd_bounds(inputs, bounds_format, bounds_out, bounds_cert);
    }
    if (verify_cmd->parsed())
      return cmd_verify(verify_suite, verify_seed, verify_threads,
                        verify_repro);
  } catch (const MembershipError& e) {
    std::cerr << "membership failure: " << e.what() << "\n";
    return kMembership;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
