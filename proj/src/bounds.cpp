#include "cuspcert/bounds.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace cuspcert::bounds {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * kPi;

double pow4(double x) { return (x * x) * (x * x); }

void require(bool ok, const char* msg) {
  if (!ok) throw InvalidInputError(msg);
}

void check_m(int m) { require(m >= 1 && m <= kFactorialCap, "m out of range"); }
void check_n(int n) { require(n >= 1 && n <= kFactorialCap, "n out of range"); }
void check_sys(double sys) { require(sys >= 0.0, "sys must be nonnegative"); }

// ln(sinh(x)) without overflow for large x.
double ln_sinh(double x) {
  require(x >= 0.0, "ln_sinh: negative argument");
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (x < 20.0) return std::log(std::sinh(x));
  return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x));
}

double guarded_log(double x) {
  return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
}

// Unsigned big integer, base 2^64, just enough for exact factorials and
// their small linear combinations.
class BigUInt {
 public:
  explicit BigUInt(std::uint64_t v) : limbs_{v} {}

  void mul_small(std::uint64_t m) {
    unsigned __int128 carry = 0;
    for (std::uint64_t& limb : limbs_) {
      unsigned __int128 cur = static_cast<unsigned __int128>(limb) * m + carry;
      limb = static_cast<std::uint64_t>(cur);
      carry = cur >> 64;
    }
    while (carry != 0) {
      limbs_.push_back(static_cast<std::uint64_t>(carry));
      carry >>= 64;
    }
  }

  void add_small(std::uint64_t a) {
    unsigned __int128 carry = a;
    for (std::uint64_t& limb : limbs_) {
      if (carry == 0) break;
      unsigned __int128 cur = static_cast<unsigned __int128>(limb) + carry;
      limb = static_cast<std::uint64_t>(cur);
      carry = cur >> 64;
    }
    if (carry != 0) limbs_.push_back(static_cast<std::uint64_t>(carry));
  }

  static BigUInt factorial(int n) {
    BigUInt f(1);
    for (int i = 2; i <= n; ++i) f.mul_small(static_cast<std::uint64_t>(i));
    return f;
  }

  // Natural log via a 64-bit mantissa window under the most significant
  // bit, plus bit-count * ln 2 for the dropped tail.
  double ln() const {
    int top = static_cast<int>(limbs_.size()) - 1;
    while (top > 0 && limbs_[top] == 0) --top;
    const std::uint64_t hi = limbs_[top];
    require(hi != 0 || top > 0, "BigUInt::ln of zero");
    const int hi_bits = 64 - std::countl_zero(hi);
    if (top == 0) return std::log(static_cast<double>(hi));
    unsigned __int128 window = static_cast<unsigned __int128>(hi)
                               << (64 - hi_bits);
    if (hi_bits < 64) window |= limbs_[top - 1] >> hi_bits;
    const long double mantissa =
        static_cast<long double>(static_cast<std::uint64_t>(window));
    const long double dropped_bits =
        static_cast<long double>((top - 1) * 64 + hi_bits);
    constexpr long double ln2 = 0.69314718055994530941723212145818L;
    return static_cast<double>(std::log(mantissa) + dropped_bits * ln2);
  }

 private:
  std::vector<std::uint64_t> limbs_;  // little-endian
};

// 1 + 2n + n! as an exact integer.
BigUInt jet_factor(int n) {
  BigUInt f = BigUInt::factorial(n);
  f.add_small(static_cast<std::uint64_t>(2 * n + 1));
  return f;
}

}  // namespace

double volume_lower_bound(int m, double sys) {
  check_m(m);
  check_sys(sys);
  return std::pow(kFourPi, m) / std::tgamma(m + 1.0) *
         std::pow(std::sinh(0.5 * sys), 2.0 * m);
}

double volume_lower_bound_ln(int m, double sys) {
  check_m(m);
  check_sys(sys);
  return m * std::log(kFourPi) - std::lgamma(m + 1.0) +
         2.0 * m * ln_sinh(0.5 * sys);
}

double ball_volume_bound(int m, double r, double mult) {
  check_m(m);
  require(r > 0.0, "ball_volume_bound: radius must be positive");
  require(mult >= 1.0, "ball_volume_bound: multiplicity must be >= 1");
  return std::pow(kFourPi, m) / std::tgamma(m + 1.0) *
         std::pow(std::sinh(r), 2.0 * m) * mult;
}

double ball_volume_bound_ln(int m, double r, double mult) {
  check_m(m);
  require(r > 0.0, "ball_volume_bound: radius must be positive");
  require(mult >= 1.0, "ball_volume_bound: multiplicity must be >= 1");
  return m * std::log(kFourPi) - std::lgamma(m + 1.0) + 2.0 * m * ln_sinh(r) +
         std::log(mult);
}

double log_canonical_degree_lower_bound(int m, int n, double sys) {
  check_m(m);
  check_n(n);
  check_sys(sys);
  return std::pow(n + 1.0, m) * std::pow(std::sinh(0.5 * sys), 2.0 * m);
}

double log_canonical_degree_lower_bound_ln(int m, int n, double sys) {
  check_m(m);
  check_n(n);
  check_sys(sys);
  return m * std::log(n + 1.0) + 2.0 * m * ln_sinh(0.5 * sys);
}

double trace_lower_bound(int n, double sys) {
  check_n(n);
  check_sys(sys);
  return 1.0 - n + std::numbers::sqrt2 * std::exp(0.25 * sys);
}

double trace_lower_bound_ln(int n, double sys) {
  check_n(n);
  check_sys(sys);
  const double tail = std::numbers::sqrt2 - (n - 1.0) * std::exp(-0.25 * sys);
  return 0.25 * sys + guarded_log(tail);
}

double depth_from_trace(double lambda, int n) {
  check_n(n);
  if (!(lambda > n + 1.0)) {
    std::ostringstream msg;
    msg << "depth_from_trace: vacuous bound, lambda = " << lambda
        << " does not exceed n + 1 = " << n + 1;
    throw NotApplicableError(msg.str());
  }
  const double x = lambda - n - 1.0;
  return std::min(std::pow(x, 0.25), std::sqrt(x));
}

double depth_lower_bound(int n, double sys) {
  return depth_from_trace(trace_lower_bound(n, sys), n);
}

double depth_lower_bound_ln(int n, double sys) {
  check_n(n);
  check_sys(sys);
  const double tail = std::numbers::sqrt2 - 2.0 * n * std::exp(-0.25 * sys);
  if (!(tail > 0.0))
    throw NotApplicableError("depth_lower_bound: vacuous bound, sqrt(2) e^{sys/4} <= 2n");
  const double ln_radicand = 0.25 * sys + std::log(tail);
  return ln_radicand > 0.0 ? 0.25 * ln_radicand : 0.5 * ln_radicand;
}

double threshold_ample(int n) {
  check_n(n);
  return 4.0 * std::log(5.0 * n + pow4(kFourPi));
}

double threshold_canonical(int n) {
  check_n(n);
  return 4.0 * std::log(5.0 * n + pow4(8.0 * kPi));
}

double degree_lower_bound(int m, int n, double sys) {
  check_m(m);
  check_n(n);
  check_sys(sys);
  return std::pow(n / kFourPi, m) * std::exp(m * sys / 16.0);
}

double degree_lower_bound_ln(int m, int n, double sys) {
  check_m(m);
  check_n(n);
  check_sys(sys);
  return m * (std::log(static_cast<double>(n)) - std::log(kFourPi)) +
         m * sys / 16.0;
}

double canonical_volume_lower_bound(int m, double sys) {
  check_m(m);
  check_sys(sys);
  return std::pow(m / kFourPi, m) * std::exp(m * sys / 16.0);
}

double canonical_volume_lower_bound_ln(int m, double sys) {
  check_m(m);
  check_sys(sys);
  return m * (std::log(static_cast<double>(m)) - std::log(kFourPi)) +
         m * sys / 16.0;
}

double very_ampleness_threshold(int n, int s) {
  check_n(n);
  require(s >= 1, "very_ampleness_threshold: s must be >= 1");
  BigUInt lhs = jet_factor(n);
  lhs.mul_small(static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(s));
  const double jets_branch = n * lhs.ln();
  const double depth_branch = std::log(5.0 * n + pow4(8.0 * kPi));
  return 20.0 * std::max(jets_branch, depth_branch);
}

BicanonicalReport bicanonical_report(int n, double sys) {
  check_n(n);
  check_sys(sys);
  BicanonicalReport out;
  out.threshold = very_ampleness_threshold(n, 1);
  const bool certified = sys >= out.threshold;
  out.globally_generated_2k = certified;
  out.very_ample_mod_d_2k = certified;
  out.very_ample_3k = certified;
  return out;
}

JetsSeshadri jets_and_seshadri(int n, double sys, int s) {
  check_n(n);
  check_sys(sys);
  require(s >= 1, "jets_and_seshadri: s must be >= 1");
  JetsSeshadri out;
  out.threshold = very_ampleness_threshold(n, s);
  out.separates_jets_2k = sys >= out.threshold;
  out.seshadri_lb = out.separates_jets_2k ? 0.5 * s : 0.0;
  return out;
}

double seshadri_thick_bound(int n, double sys) {
  check_n(n);
  check_sys(sys);
  return (n + 1.0) / (8.0 * kPi) * std::pow(std::sinh(0.5 * sys), 2.0);
}

double seshadri_thick_bound_ln(int n, double sys) {
  check_n(n);
  check_sys(sys);
  return std::log(n + 1.0) - std::log(8.0 * kPi) + 2.0 * ln_sinh(0.5 * sys);
}

double seshadri_locus_threshold(double sys) {
  check_sys(sys);
  return std::exp(sys / 20.0);
}

double seshadri_locus_threshold_ln(double sys) {
  check_sys(sys);
  return sys / 20.0;
}

double seshadri_thick_hypothesis(int n) {
  check_n(n);
  return 20.0 * std::log(5.0 * n + pow4(8.0 * kPi));
}

double sysd_threshold(int n) {
  check_n(n);
  return 2.0 * std::sqrt(2.0 * n / kPi);
}

double boundary_seshadri_bound(double sys_d) {
  require(sys_d >= 0.0, "boundary_seshadri_bound: sys(D) must be nonnegative");
  return 0.25 * kPi * sys_d * sys_d;
}

double full_very_ampleness_sys_threshold(int n) {
  check_n(n);
  BigUInt lhs = jet_factor(n);
  lhs.mul_small(static_cast<std::uint64_t>(5 * n));
  const double jets_branch = n * lhs.ln();
  const double depth_branch = std::log(5.0 * n + pow4(8.0 * kPi));
  return 20.0 * std::max(jets_branch, depth_branch);
}

FullVeryAmpleness full_very_ampleness(int n, double sys, double sys_d) {
  check_n(n);
  check_sys(sys);
  require(sys_d >= 0.0, "full_very_ampleness: sys(D) must be nonnegative");
  FullVeryAmpleness out;
  out.sys_d_threshold = sysd_threshold(n);
  out.sys_threshold = full_very_ampleness_sys_threshold(n);
  out.boundary_seshadri = boundary_seshadri_bound(sys_d);
  const bool certified =
      sys_d > out.sys_d_threshold && sys >= out.sys_threshold;
  out.very_ample_2k = certified;
  out.seshadri_lb = certified ? 2.0 * n : 0.0;
  return out;
}

double sparsity_exponent(int n, double sys, int field_degree, double epsilon) {
  check_n(n);
  check_sys(sys);
  require(field_degree >= 1, "sparsity_exponent: field degree must be >= 1");
  require(epsilon >= 0.0, "sparsity_exponent: epsilon must be nonnegative");
  return kFourPi * field_degree * (n + 3.0) * (1.0 + epsilon) /
         std::exp(sys / 16.0);
}

double sparsity_exponent_ln(int n, double sys, int field_degree,
                            double epsilon) {
  check_n(n);
  check_sys(sys);
  require(field_degree >= 1, "sparsity_exponent: field degree must be >= 1");
  require(epsilon >= 0.0, "sparsity_exponent: epsilon must be nonnegative");
  return std::log(kFourPi * field_degree * (n + 3.0) * (1.0 + epsilon)) -
         sys / 16.0;
}

BoundReport bound_report(const BoundInputs& in) {
  check_n(in.n);
  require(in.sys > 0.0, "bound_report: sys must be positive");
  require(in.m >= 1 && in.m <= in.n, "bound_report: need 1 <= m <= n");
  require(in.s >= 1, "bound_report: s must be >= 1");

  BoundReport r;
  r.inputs = in;
  auto note = [&](const std::string& line) { r.assumptions.push_back(line); };
  auto hypothesis = [&](const std::string& what, bool ok,
                        const std::string& detail) {
    note(std::string(what) + ": " + detail + (ok ? " [satisfied]" : " [NOT satisfied]"));
    return ok;
  };
  auto fmt = [](double x) {
    std::ostringstream s;
    s.precision(10);
    s << x;
    return s.str();
  };

  note("sys = " + fmt(in.sys) +
       " is interpreted as a certified lower bound supplied by the caller; "
       "enumeration estimates are upper bounds and are never used here");

  r.induced_volume = {volume_lower_bound(in.m, in.sys),
                      volume_lower_bound_ln(in.m, in.sys)};
  r.log_canonical_degree = {
      log_canonical_degree_lower_bound(in.m, in.n, in.sys),
      log_canonical_degree_lower_bound_ln(in.m, in.n, in.sys)};
  r.trace_floor = {trace_lower_bound(in.n, in.sys),
                   trace_lower_bound_ln(in.n, in.sys)};
  try {
    r.depth_floor = BoundValue{depth_lower_bound(in.n, in.sys),
                               depth_lower_bound_ln(in.n, in.sys)};
  } catch (const NotApplicableError&) {
    note("cusp depth bound: vacuous, sqrt(2) e^{sys/4} <= 2n");
  }

  r.threshold_ample = threshold_ample(in.n);
  r.threshold_canonical = threshold_canonical(in.n);

  r.canonical_degree = {degree_lower_bound(in.m, in.n, in.sys),
                        degree_lower_bound_ln(in.m, in.n, in.sys)};
  r.canonical_degree_certified = hypothesis(
      "canonical degree bound", in.sys >= r.threshold_ample,
      "requires sys >= 4 ln(5n + (4 pi)^4) = " + fmt(r.threshold_ample));

  r.canonical_volume = {canonical_volume_lower_bound(in.m, in.sys),
                        canonical_volume_lower_bound_ln(in.m, in.sys)};
  r.canonical_volume_certified = hypothesis(
      "canonical volume bound", in.sys >= r.threshold_canonical,
      "requires sys >= 4 ln(5n + (8 pi)^4) = " + fmt(r.threshold_canonical));

  const BicanonicalReport bi = bicanonical_report(in.n, in.sys);
  r.very_ampleness_threshold_s1 = bi.threshold;
  r.globally_generated_2k = bi.globally_generated_2k;
  r.very_ample_mod_d_2k = bi.very_ample_mod_d_2k;
  r.very_ample_3k = bi.very_ample_3k;
  hypothesis("bicanonical positivity", bi.globally_generated_2k,
             "requires sys >= 20 max{n ln((1+2n+n!)(n+1)), ln(5n+(8 pi)^4)} = " +
                 fmt(bi.threshold));

  const JetsSeshadri jets = jets_and_seshadri(in.n, in.sys, in.s);
  r.very_ampleness_threshold_s = jets.threshold;
  r.separates_jets_2k = jets.separates_jets_2k;
  r.seshadri_jets_lb = jets.seshadri_lb;
  hypothesis("jet separation (s = " + std::to_string(in.s) + ")",
             jets.separates_jets_2k,
             "requires sys >= 20 max{n ln((1+2n+n!)(n+s)), ln(5n+(8 pi)^4)} = " +
                 fmt(jets.threshold));

  r.seshadri_thick = {seshadri_thick_bound(in.n, in.sys),
                      seshadri_thick_bound_ln(in.n, in.sys)};
  r.seshadri_locus = {seshadri_locus_threshold(in.sys),
                      seshadri_locus_threshold_ln(in.sys)};
  r.seshadri_thick_hypothesis = seshadri_thick_hypothesis(in.n);
  r.seshadri_thick_certified = hypothesis(
      "thick-part Seshadri bound", in.sys >= r.seshadri_thick_hypothesis,
      "requires sys >= 20 ln(5n + (8 pi)^4) = " + fmt(r.seshadri_thick_hypothesis));

  r.sys_d_threshold = sysd_threshold(in.n);
  r.full_sys_threshold = full_very_ampleness_sys_threshold(in.n);
  if (in.sys_d) {
    const FullVeryAmpleness full = full_very_ampleness(in.n, in.sys, *in.sys_d);
    r.boundary_seshadri = full.boundary_seshadri;
    r.full_very_ample_2k = full.very_ample_2k;
    r.seshadri_full_lb = full.seshadri_lb;
    hypothesis("full very ampleness", full.very_ample_2k,
               "requires sys(D) > 2 sqrt(2n/pi) = " + fmt(full.sys_d_threshold) +
                   " and sys >= 20 max{n ln(5n(1+2n+n!)), ln(5n+(8 pi)^4)} = " +
                   fmt(full.sys_threshold));
  } else {
    note("full very ampleness: sys(D) not provided, not evaluated");
  }

  if (in.field_degree && in.epsilon) {
    r.sparsity = BoundValue{
        sparsity_exponent(in.n, in.sys, *in.field_degree, *in.epsilon),
        sparsity_exponent_ln(in.n, in.sys, *in.field_degree, *in.epsilon)};
    const bool sys_ok = in.sys >= r.threshold_ample;
    const bool eps_ok = *in.epsilon > 0.0;
    r.sparsity_certified = hypothesis(
        "sparsity exponent", sys_ok && eps_ok,
        "requires sys >= 4 ln(5n + (4 pi)^4) = " + fmt(r.threshold_ample) +
            " and epsilon > 0" +
            (eps_ok ? "" : " (epsilon = 0 reported as the infimum value)"));
  } else {
    note("sparsity exponent: field degree or epsilon not provided, not evaluated");
  }

  return r;
}

}  // namespace cuspcert::bounds
