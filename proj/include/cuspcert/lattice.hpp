#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cuspcert/hermitian.hpp"
#include "cuspcert/isometry.hpp"
#include "cuspcert/siegel.hpp"

namespace cuspcert {

inline constexpr std::size_t kDefaultBallCap = 1'000'000;
inline constexpr int kMaxWordLength = 12;

// Residual budget for elements assembled from at most kMaxWordLength
// generator multiplications.
inline constexpr double kBallResidualBudget = 1e-7;

struct LatticeTolerances {
  double membership = kMembershipTol;
  double dedup = 1e-8;
  double classify = kClassifyTol;
  double vertical = 1e-8;
  double spectrum_resolution = 1e-9;
};

/// A generator presentation: matrices of a fixed dimension n+1 preserving
/// the standard form, closed under formal inversion (inverses are appended
/// at load time with derived names).
struct LatticeSpec {
  int n = 2;
  std::vector<std::string> names;
  std::vector<GroupElement> generators;
  bool cusp_at_infinity = false;
  LatticeTolerances tol;
  HermitianForm form;
};

/// Parses and validates the lattice document
///   {"n": int,
///    "generators": [{"name": str, "matrix": [[[re,im],...],...]}],
///    "cusp": "infinity"|null,
///    "tolerances": {...}}.
/// Throws InvalidInputError on malformed input and MembershipError (naming
/// the generator) when a matrix fails the residual tolerance.
LatticeSpec load_lattice(const nlohmann::json& doc);

struct WordBall {
  std::vector<GroupElement> elements;  // elements[0] is the identity
  int max_length = 0;
};

class BallCapExceededError : public Error {
 public:
  BallCapExceededError(const std::string& msg,
                       std::shared_ptr<const WordBall> partial,
                       int completed_length)
      : Error(msg), partial_(std::move(partial)),
        completed_length_(completed_length) {}

  /// Everything enumerated before the cap was hit.
  const WordBall& partial() const { return *partial_; }

  /// Resume token: the ball is complete through this word length.
  int completed_length() const { return completed_length_; }

 private:
  std::shared_ptr<const WordBall> partial_;
  int completed_length_;
};

/// Breadth-first enumeration of all words of length <= max_length, with
/// projective deduplication: elements are keyed by their canonical normal
/// form rounded to dedup_tol, and key collisions are confirmed by Frobenius
/// distance before merging.  Every element keeps a shortest witnessing
/// word.  Output is identical for any thread count.
WordBall word_ball(const LatticeSpec& spec, int max_length,
                   double dedup_tol = 1e-8, std::size_t cap = kDefaultBallCap,
                   int threads = 0);

/// Serial reference enumeration (same contract, single-threaded loop).
WordBall word_ball_serial(const LatticeSpec& spec, int max_length,
                          double dedup_tol = 1e-8,
                          std::size_t cap = kDefaultBallCap);

struct CuspStats {
  // Minima over the finite ball, hence one-sided: upper bounds for the
  // corresponding infima over the whole group.
  std::optional<double> t_min_vertical;
  std::optional<double> c_min_non_stabilizer;
  std::optional<double> depth_estimate;  // t*c/2; empirical, not a certificate
};

struct WordBallCensus {
  int max_length = 0;
  std::size_t element_count = 0;
  std::size_t elliptic_count = 0;
  std::size_t parabolic_count = 0;
  std::size_t hyperbolic_count = 0;
  std::size_t indeterminate_count = 0;
  std::vector<std::size_t> indeterminate_indices;
  std::vector<double> hyperbolic_length_spectrum;  // sorted, deduplicated
  std::vector<double> trace_spectrum;              // |tr| above n+1, sorted
  std::optional<double> sys_upper_estimate;  // min length: an UPPER bound
  std::optional<double> lambda_estimate;     // min |tr| over the spectrum
  CuspStats cusp_stats;
  double max_residual = 0.0;
};

/// Classifies every ball element and folds the spectra.  Indeterminate
/// classifications are counted and listed, never dropped.  Trace spectra
/// are computed on the unit-modulus-determinant representative.
WordBallCensus census(const WordBall& ball, const LatticeSpec& spec,
                      int threads = 0);

/// Shortest vertical translation and smallest non-stabilizer |c| found in
/// the ball; requires the lattice to designate the cusp at infinity.
CuspStats cusp_stats(const WordBall& ball, const LatticeSpec& spec);

/// If the element is projectively a vertical translation by t != 0 at the
/// cusp at infinity, returns t.
std::optional<double> vertical_translation_parameter(const GroupElement& g,
                                                     double tol = 1e-8);

/// True when some element of the stabilizer ball displaces p by less than
/// rho.  One-sided: a false only means no witness in this ball.
bool thin_membership(const SiegelPoint& p,
                     const std::vector<GroupElement>& stabilizer_ball,
                     double rho);

}  // namespace cuspcert
