#include "cuspcert/siegel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cuspcert {

namespace {

constexpr double kAcoshSlack = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double clamped_acosh(double arg, const char* where) {
  if (arg < 1.0 - kAcoshSlack) {
    std::ostringstream msg;
    msg << where << ": acosh argument " << arg << " below 1";
    throw Error(msg.str());
  }
  return std::acosh(std::max(arg, 1.0));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Golden-section line minimum; returns the best value, sets arg.
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double tol, double& arg) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  if (fc < fd) {
    arg = c;
    return fc;
  }
  arg = d;
  return fd;
}

}  // namespace

ProjectivePoint embed(const SiegelPoint& p) {
  if (p.u < 0.0) throw InvalidInputError("embed: negative height");
  double nz = 0.0;
  for (const Complex& z : p.zeta) nz += std::norm(z);
  ProjectivePoint out;
  out.coords.reserve(p.zeta.size() + 2);
  out.coords.push_back(Complex(-0.5 * (nz + p.u), 0.5 * p.v));
  out.coords.insert(out.coords.end(), p.zeta.begin(), p.zeta.end());
  out.coords.push_back(Complex(1.0, 0.0));
  return out;
}

SiegelPoint unembed(const ProjectivePoint& z) {
  const int dim = static_cast<int>(z.coords.size());
  if (dim < 2) throw InvalidInputError("unembed: need at least 2 coordinates");
  double scale = 0.0;
  for (const Complex& c : z.coords) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) throw InvalidInputError("unembed: zero point");
  const Complex last = z.coords.back();
  if (std::abs(last) <= 1e-13 * scale)
    throw PointAtInfinityError("unembed: the point is the cusp at infinity");

  SiegelPoint p;
  p.zeta.resize(dim - 2);
  const Complex w0 = z.coords.front() / last;
  double nz = 0.0;
  for (int i = 0; i < dim - 2; ++i) {
    p.zeta[i] = z.coords[i + 1] / last;
    nz += std::norm(p.zeta[i]);
  }
  p.v = 2.0 * w0.imag();
  const double u = -2.0 * w0.real() - nz;
  const double ref = 1.0 + std::abs(w0) + nz;
  if (u < -1e-9 * ref) {
    std::ostringstream msg;
    msg << "unembed: point lies outside the domain (u = " << u << ")";
    throw OutsideDomainError(msg.str());
  }
  p.u = std::max(u, 0.0);
  return p;
}

double distance(const SiegelPoint& z1, const SiegelPoint& z2) {
  if (z1.zeta.size() != z2.zeta.size())
    throw DimensionMismatchError("distance: dimension mismatch");
  if (z1.u <= 0.0 || z2.u <= 0.0)
    throw InvalidInputError("distance: heights must be positive");
  double dz = 0.0;
  Complex herm = 0.0;  // <z2, z1>, conjugate-linear in the first slot
  for (std::size_t i = 0; i < z1.zeta.size(); ++i) {
    dz += std::norm(z1.zeta[i] - z2.zeta[i]);
    herm += std::conj(z2.zeta[i]) * z1.zeta[i];
  }
  const Complex bracket(dz + z1.u + z2.u, (z1.v - z2.v) + 2.0 * herm.imag());
  const double arg = std::norm(bracket) / (4.0 * z1.u * z2.u);
  return 2.0 * clamped_acosh(arg, "distance");
}

double distance_lower_bound(double u1, double u2) {
  if (u1 <= 0.0 || u2 <= 0.0)
    throw InvalidInputError("distance_lower_bound: heights must be positive");
  const double s = u1 + u2;
  return 2.0 * clamped_acosh(s * s / (4.0 * u1 * u2), "distance_lower_bound");
}

SiegelPoint act(const GroupElement& g, const SiegelPoint& p) {
  if (g.residual() > kMembershipTol)
    throw MembershipError("act: element fails the membership tolerance",
                          g.residual());
  ProjectivePoint z = embed(p);
  if (g.dim() != static_cast<int>(z.coords.size()))
    throw DimensionMismatchError("act: dimension mismatch");
  return unembed(ProjectivePoint{g.matrix() * z.coords});
}

double height_at_zero_cusp(const SiegelPoint& p) {
  double nz = 0.0;
  for (const Complex& z : p.zeta) nz += std::norm(z);
  const double denom = std::norm(Complex(nz + p.u, -p.v));
  if (denom == 0.0) return kInf;  // the zero cusp itself
  return 4.0 * p.u / denom;
}

bool horoball_contains(const Horoball& b, const SiegelPoint& p) {
  if (b.height <= 0.0) throw InvalidInputError("horoball: height must be positive");
  if (p.u <= 0.0) return false;  // boundary points are never inside
  if (b.cusp == Cusp::infinity) return p.u > b.height;
  return height_at_zero_cusp(p) > b.height;
}

bool horoballs_disjoint(double u0, double uInf) {
  if (u0 <= 0.0 || uInf <= 0.0)
    throw InvalidInputError("horoballs_disjoint: heights must be positive");
  return u0 * uInf >= 4.0;
}

int default_thread_count() {
  if (const char* env = std::getenv("CUSP_CERTIFY_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

SiegelPoint point_from_coords(const std::vector<double>& x, int n) {
  SiegelPoint p;
  p.zeta.resize(n - 1);
  for (int i = 0; i < n - 1; ++i) p.zeta[i] = Complex(x[2 * i], x[2 * i + 1]);
  p.v = x[2 * (n - 1)];
  p.u = std::exp(x[2 * (n - 1) + 1]);
  return p;
}

double displacement_at(const GroupElement& g, const SiegelPoint& p) {
  try {
    return distance(p, act(g, p));
  } catch (const PointAtInfinityError&) {
    return kInf;
  } catch (const OutsideDomainError&) {
    return kInf;
  }
}

DisplacementEstimate run_displacement_start(const GroupElement& g,
                                            const SamplingBudget& b, int n,
                                            int start_index) {
  const int dims = 2 * (n - 1) + 2;
  std::vector<double> lo(dims), hi(dims);
  for (int i = 0; i < 2 * (n - 1); ++i) {
    lo[i] = -b.zeta_max;
    hi[i] = b.zeta_max;
  }
  lo[dims - 2] = -b.v_max;
  hi[dims - 2] = b.v_max;
  lo[dims - 1] = b.log_u_min;
  hi[dims - 1] = b.log_u_max;

  // One rng per start index: results do not depend on how many starts run.
  std::mt19937_64 rng(splitmix64(b.seed ^ (0x517cc1b727220a95ULL *
                                           (std::uint64_t(start_index) + 1))));
  std::vector<double> x(dims);
  for (int i = 0; i < dims; ++i)
    x[i] = std::uniform_real_distribution<double>(lo[i], hi[i])(rng);

  auto eval = [&](const std::vector<double>& y) {
    return displacement_at(g, point_from_coords(y, n));
  };
  double fx = eval(x);
  for (int sweep = 0; sweep < b.sweeps; ++sweep) {
    double improved = 0.0;
    for (int j = 0; j < dims; ++j) {
      const double span = hi[j] - lo[j];
      const double h = (sweep == 0) ? span : span * std::pow(0.5, sweep);
      const double a = std::max(lo[j], x[j] - h);
      const double c = std::min(hi[j], x[j] + h);
      auto line = [&](double t) {
        std::vector<double> y = x;
        y[j] = t;
        return eval(y);
      };
      double arg = x[j];
      const double fmin = golden_min(line, a, c, b.refine_tol, arg);
      if (fmin < fx) {
        improved += fx - fmin;
        x[j] = arg;
        fx = fmin;
      }
    }
    if (sweep > 1 && improved < 1e-14 * (1.0 + std::abs(fx))) break;
  }

  // The estimate only certifies an interior minimum: when the best point is
  // pinned against the box and the objective still decreases outward, the
  // infimum lies beyond the budgeted box (a cusp excursion).
  bool converged = true;
  for (int j = 0; j < dims && converged; ++j) {
    const double span = hi[j] - lo[j];
    const double edge_tol = 4.0 * b.refine_tol;
    for (double edge : {lo[j], hi[j]}) {
      if (std::abs(x[j] - edge) > edge_tol * span) continue;
      std::vector<double> y = x;
      y[j] = edge + (edge == lo[j] ? 1.0 : -1.0) * 64.0 * b.refine_tol * span;
      if (eval(y) - fx > 1e-9 * (1.0 + std::abs(fx))) converged = false;
    }
  }
  return DisplacementEstimate{fx, converged, point_from_coords(x, n)};
}

DisplacementEstimate run_displacement(const GroupElement& g,
                                      const SamplingBudget& b, int threads) {
  if (g.residual() > kMembershipTol)
    throw MembershipError("min_displacement_oracle: element fails membership",
                          g.residual());
  const int n = g.dim() - 1;
  std::vector<DisplacementEstimate> results(b.starts);
  if (threads == 1) {
    for (int i = 0; i < b.starts; ++i)
      results[i] = run_displacement_start(g, b, n, i);
  } else {
#pragma omp parallel for schedule(static) num_threads(threads)
    for (int i = 0; i < b.starts; ++i)
      results[i] = run_displacement_start(g, b, n, i);
  }
  // Deterministic reduction: lowest value, ties to the lowest start index.
  int best = 0;
  for (int i = 1; i < b.starts; ++i)
    if (results[i].value < results[best].value) best = i;
  return results[best];
}

}  // namespace

DisplacementEstimate min_displacement_oracle(const GroupElement& g,
                                             const SamplingBudget& budget,
                                             int threads) {
  if (budget.starts < 1)
    throw InvalidInputError("min_displacement_oracle: need at least one start");
  return run_displacement(g, budget,
                          threads > 0 ? threads : default_thread_count());
}

DisplacementEstimate min_displacement_oracle_serial(
    const GroupElement& g, const SamplingBudget& budget) {
  if (budget.starts < 1)
    throw InvalidInputError("min_displacement_oracle: need at least one start");
  return run_displacement(g, budget, 1);
}

IntersectionProbe horoball_intersection_probe(double u0, double uInf,
                                              const SamplingBudget& budget) {
  if (u0 <= 0.0 || uInf <= 0.0)
    throw InvalidInputError("horoball_intersection_probe: positive heights");

  // Coordinates: (Re zeta, Im zeta, v, w) with u = uInf + e^w, so every
  // sample lies strictly inside the horoball at infinity.
  const int dims = 4;
  std::vector<double> lo = {-budget.zeta_max, -budget.zeta_max, -budget.v_max,
                            -34.0};
  std::vector<double> hi = {budget.zeta_max, budget.zeta_max, budget.v_max,
                            std::log(8.0 * uInf)};
  auto make_point = [&](const std::vector<double>& x) {
    SiegelPoint p;
    p.zeta = {Complex(x[0], x[1])};
    p.v = x[2];
    p.u = uInf + std::exp(x[3]);
    return p;
  };
  auto objective = [&](const std::vector<double>& x) {
    return -height_at_zero_cusp(make_point(x));  // maximize the height at zero
  };

  double best_val = kInf;
  std::vector<double> best_x;
  for (int s = 0; s < budget.starts; ++s) {
    std::mt19937_64 rng(splitmix64(budget.seed ^ (0xd1342543de82ef95ULL *
                                                  (std::uint64_t(s) + 1))));
    std::vector<double> x(dims);
    for (int i = 0; i < dims; ++i)
      x[i] = std::uniform_real_distribution<double>(lo[i], hi[i])(rng);
    double fx = objective(x);
    for (int sweep = 0; sweep < budget.sweeps; ++sweep) {
      for (int j = 0; j < dims; ++j) {
        auto line = [&](double t) {
          std::vector<double> y = x;
          y[j] = t;
          return objective(y);
        };
        double arg = x[j];
        const double fmin = golden_min(line, lo[j], hi[j], budget.refine_tol, arg);
        if (fmin < fx) {
          x[j] = arg;
          fx = fmin;
        }
      }
    }
    if (fx < best_val) {
      best_val = fx;
      best_x = x;
    }
  }
  IntersectionProbe probe;
  probe.best_height_at_zero = -best_val;
  probe.witness = make_point(best_x);
  probe.found = probe.best_height_at_zero > u0;
  return probe;
}

}  // namespace cuspcert
