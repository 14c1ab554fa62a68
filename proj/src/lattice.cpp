#include "cuspcert/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <unordered_map>

namespace cuspcert {

namespace {

using Key = std::vector<std::int64_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t v : k) {
      std::uint64_t u = static_cast<std::uint64_t>(v);
      for (int b = 0; b < 8; ++b) {
        h ^= (u >> (8 * b)) & 0xffu;
        h *= 0x100000001b3ULL;
      }
    }
    return static_cast<std::size_t>(h);
  }
};

Key dedup_key(const SquareMatrix& normal_form, double tol) {
  Key k;
  k.reserve(2 * normal_form.entries().size());
  for (const Complex& z : normal_form.entries()) {
    k.push_back(std::llround(z.real() / tol));
    k.push_back(std::llround(z.imag() / tol));
  }
  return k;
}

double frobenius_distance(const SquareMatrix& a, const SquareMatrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    s += std::norm(a.entries()[i] - b.entries()[i]);
  return std::sqrt(s);
}

// Index store keyed by rounded normal forms; collisions are confirmed by
// Frobenius distance so a hash-rounding coincidence cannot merge two
// distinct elements.
class DedupStore {
 public:
  explicit DedupStore(double tol) : tol_(tol) {}

  // Returns the existing index, or nullopt when the element is new.
  std::optional<std::size_t> find(const Key& key, const SquareMatrix& nf,
                                  const std::vector<GroupElement>& elements) const {
    auto it = buckets_.find(key);
    if (it == buckets_.end()) return std::nullopt;
    for (std::size_t idx : it->second)
      if (frobenius_distance(elements[idx].normal_form(), nf) < 10.0 * tol_)
        return idx;
    return std::nullopt;
  }

  void insert(Key key, std::size_t index) {
    buckets_[std::move(key)].push_back(index);
  }

 private:
  double tol_;
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> buckets_;
};

WordBall build_ball(const LatticeSpec& spec, int max_length, double dedup_tol,
                    std::size_t cap, int threads) {
  if (max_length < 1)
    throw InvalidInputError("word_ball: max_length must be >= 1");
  if (max_length > kMaxWordLength)
    throw InvalidInputError("word_ball: max_length exceeds the word-length cap");
  if (spec.generators.empty())
    throw InvalidInputError("word_ball: no generators");
  if (dedup_tol <= 0.0)
    throw InvalidInputError("word_ball: dedup tolerance must be positive");

  const int gens = static_cast<int>(spec.generators.size());
  WordBall ball;
  ball.max_length = max_length;

  GroupElement identity =
      GroupElement::validated(SquareMatrix::identity(spec.form.dim()), spec.form);
  identity.set_word({});
  DedupStore store(dedup_tol);
  store.insert(dedup_key(identity.normal_form(), dedup_tol), 0);
  ball.elements.push_back(std::move(identity));

  std::vector<std::size_t> frontier = {0};
  for (int length = 1; length <= max_length; ++length) {
    const std::size_t total = frontier.size() * static_cast<std::size_t>(gens);
    std::vector<std::optional<std::pair<GroupElement, Key>>> candidates(total);

    // Products and keys in parallel; slot order is canonical, so the serial
    // insertion below is independent of the thread count.
    const std::int64_t count = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::int64_t i = 0; i < count; ++i) {
      const std::size_t parent = frontier[static_cast<std::size_t>(i) / gens];
      const int g = static_cast<int>(i % gens);
      GroupElement prod =
          product(ball.elements[parent], spec.generators[g], spec.form);
      std::vector<std::int32_t> word = *ball.elements[parent].word();
      word.push_back(g);
      prod.set_word(std::move(word));
      Key key = dedup_key(prod.normal_form(), dedup_tol);
      candidates[static_cast<std::size_t>(i)].emplace(std::move(prod),
                                                      std::move(key));
    }

    std::vector<std::size_t> next;
    for (auto& cand : candidates) {
      auto& [elem, key] = *cand;
      if (store.find(key, elem.normal_form(), ball.elements)) continue;
      const std::size_t index = ball.elements.size();
      store.insert(std::move(key), index);
      ball.elements.push_back(std::move(elem));
      next.push_back(index);
    }
    frontier = std::move(next);

    if (ball.elements.size() > cap) {
      auto partial = std::make_shared<WordBall>();
      partial->elements = std::move(ball.elements);
      partial->max_length = length;
      std::ostringstream msg;
      msg << "word_ball: element cap " << cap << " exceeded at word length "
          << length << " (" << partial->elements.size()
          << " elements found; complete through length " << length << ")";
      throw BallCapExceededError(msg.str(), std::move(partial), length);
    }
    if (frontier.empty()) break;  // the ball saturated early
  }
  return ball;
}

}  // namespace

WordBall word_ball(const LatticeSpec& spec, int max_length, double dedup_tol,
                   std::size_t cap, int threads) {
  return build_ball(spec, max_length, dedup_tol, cap,
                    threads > 0 ? threads : default_thread_count());
}

WordBall word_ball_serial(const LatticeSpec& spec, int max_length,
                          double dedup_tol, std::size_t cap) {
  return build_ball(spec, max_length, dedup_tol, cap, 1);
}

LatticeSpec load_lattice(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidInputError("lattice: document must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw InvalidInputError("lattice: missing integer field \"n\"");
  LatticeSpec spec;
  spec.n = doc["n"].get<int>();
  if (spec.n < 1 || spec.n + 1 > kMaxDim)
    throw InvalidInputError("lattice: n out of range");
  spec.form = HermitianForm::standard(spec.n);

  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    if (!t.is_object()) throw InvalidInputError("lattice: tolerances must be an object");
    if (t.contains("membership")) spec.tol.membership = t["membership"].get<double>();
    if (t.contains("dedup")) spec.tol.dedup = t["dedup"].get<double>();
    if (t.contains("classify")) spec.tol.classify = t["classify"].get<double>();
    if (t.contains("vertical")) spec.tol.vertical = t["vertical"].get<double>();
    if (t.contains("spectrumResolution"))
      spec.tol.spectrum_resolution = t["spectrumResolution"].get<double>();
  }

  if (doc.contains("cusp") && !doc["cusp"].is_null()) {
    if (doc["cusp"] != "infinity")
      throw InvalidInputError("lattice: \"cusp\" must be \"infinity\" or null");
    spec.cusp_at_infinity = true;
  }

  if (!doc.contains("generators") || !doc["generators"].is_array() ||
      doc["generators"].empty())
    throw InvalidInputError("lattice: \"generators\" must be a non-empty array");

  const int dim = spec.n + 1;
  for (const auto& g : doc["generators"]) {
    if (!g.is_object() || !g.contains("name") || !g.contains("matrix"))
      throw InvalidInputError("lattice: each generator needs \"name\" and \"matrix\"");
    const std::string name = g["name"].get<std::string>();
    const auto& rows = g["matrix"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
      throw InvalidInputError("lattice: generator \"" + name + "\" must be " +
                              std::to_string(dim) + "x" + std::to_string(dim));
    SquareMatrix m(dim);
    for (int r = 0; r < dim; ++r) {
      const auto& row = rows[r];
      if (!row.is_array() || static_cast<int>(row.size()) != dim)
        throw InvalidInputError("lattice: generator \"" + name + "\" row " +
                                std::to_string(r) + " has the wrong width");
      for (int c = 0; c < dim; ++c) {
        const auto& entry = row[c];
        if (!entry.is_array() || entry.size() != 2)
          throw InvalidInputError("lattice: entries must be [re, im] pairs");
        m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
      }
    }
    for (const std::string& existing : spec.names)
      if (existing == name)
        throw InvalidInputError("lattice: duplicate generator name \"" + name + "\"");
    GroupElement elem = [&] {
      try {
        return GroupElement::validated(m, spec.form, spec.tol.membership);
      } catch (const MembershipError& e) {
        std::ostringstream msg;
        msg << "lattice: generator \"" << name
            << "\" fails membership: residual " << e.residual() << " > "
            << spec.tol.membership;
        throw MembershipError(msg.str(), e.residual());
      }
    }();
    spec.names.push_back(name);
    spec.generators.push_back(std::move(elem));
  }

  // Close under formal inversion; the form inverse keeps residuals exact.
  const std::size_t originals = spec.generators.size();
  for (std::size_t i = 0; i < originals; ++i) {
    spec.names.push_back(spec.names[i] + "^-1");
    spec.generators.push_back(inverse(spec.generators[i], spec.form));
  }
  for (std::size_t i = 0; i < spec.generators.size(); ++i)
    spec.generators[i].set_word({static_cast<std::int32_t>(i)});
  return spec;
}

std::optional<double> vertical_translation_parameter(const GroupElement& g,
                                                     double tol) {
  const SquareMatrix& m = g.matrix();
  const int d = m.dim();
  const Complex corner = m(d - 1, d - 1);
  if (std::abs(corner) < 1e-9 * m.frobenius_norm()) return std::nullopt;
  double err = 0.0;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      if (r == 0 && c == d - 1) continue;
      const Complex expected = (r == c) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      err += std::norm(m(r, c) / corner - expected);
    }
  }
  if (std::sqrt(err) > tol * d) return std::nullopt;
  const Complex b = m(0, d - 1) / corner;
  if (std::abs(b.real()) > tol * (1.0 + std::abs(b))) return std::nullopt;
  const double t = -2.0 * b.imag();
  if (std::abs(t) <= tol) return std::nullopt;  // the identity is no translation
  return t;
}

CuspStats cusp_stats(const WordBall& ball, const LatticeSpec& spec) {
  if (!spec.cusp_at_infinity)
    throw NotApplicableError("cusp_stats: the lattice does not designate the cusp at infinity");
  CuspStats stats;
  const int d = spec.form.dim();
  for (const GroupElement& g : ball.elements) {
    if (auto t = vertical_translation_parameter(g, spec.tol.vertical)) {
      const double mag = std::abs(*t);
      if (!stats.t_min_vertical || mag < *stats.t_min_vertical)
        stats.t_min_vertical = mag;
    }
    if (!fixes_infinity(g)) {
      const double c = std::abs(g.matrix()(d - 1, 0));
      if (!stats.c_min_non_stabilizer || c < *stats.c_min_non_stabilizer)
        stats.c_min_non_stabilizer = c;
    }
  }
  if (stats.t_min_vertical && stats.c_min_non_stabilizer)
    stats.depth_estimate =
        0.5 * (*stats.t_min_vertical) * (*stats.c_min_non_stabilizer);
  return stats;
}

WordBallCensus census(const WordBall& ball, const LatticeSpec& spec,
                      int threads) {
  WordBallCensus out;
  out.max_length = ball.max_length;
  out.element_count = ball.elements.size();

  struct PerElement {
    int kind = -1;  // -1 indeterminate, else IsometryKind
    double length = 0.0;
    double abs_trace = 0.0;
    double residual = 0.0;
  };
  const std::int64_t count = static_cast<std::int64_t>(ball.elements.size());
  std::vector<PerElement> results(ball.elements.size());

  const int dim = spec.form.dim();
  const int workers = threads > 0 ? threads : default_thread_count();
#pragma omp parallel for schedule(static) num_threads(workers)
  for (std::int64_t i = 0; i < count; ++i) {
    const GroupElement& g = ball.elements[static_cast<std::size_t>(i)];
    PerElement r;
    r.residual = g.residual();
    const double det_mod = std::abs(g.matrix().determinant());
    r.abs_trace = std::abs(g.matrix().trace()) / std::pow(det_mod, 1.0 / dim);
    try {
      IsometryClass cls = classify(g, spec.tol.classify);
      r.kind = static_cast<int>(cls.kind);
      if (cls.kind == IsometryKind::hyperbolic)
        r.length = length_from_dilation(cls.r);
    } catch (const IndeterminateClassificationError&) {
      r.kind = -1;
    }
    results[static_cast<std::size_t>(i)] = r;
  }

  for (std::size_t i = 0; i < results.size(); ++i) {
    const PerElement& r = results[i];
    out.max_residual = std::max(out.max_residual, r.residual);
    if (r.kind < 0) {
      ++out.indeterminate_count;
      out.indeterminate_indices.push_back(i);
    } else {
      switch (static_cast<IsometryKind>(r.kind)) {
        case IsometryKind::elliptic: ++out.elliptic_count; break;
        case IsometryKind::parabolic: ++out.parabolic_count; break;
        case IsometryKind::hyperbolic:
          ++out.hyperbolic_count;
          out.hyperbolic_length_spectrum.push_back(r.length);
          break;
      }
    }
    if (r.abs_trace > dim + spec.tol.spectrum_resolution)
      out.trace_spectrum.push_back(r.abs_trace);
  }

  auto dedup_sorted = [&](std::vector<double>& xs) {
    std::sort(xs.begin(), xs.end());
    std::vector<double> merged;
    for (double x : xs)
      if (merged.empty() || x - merged.back() >= spec.tol.spectrum_resolution)
        merged.push_back(x);
    xs = std::move(merged);
  };
  dedup_sorted(out.hyperbolic_length_spectrum);
  dedup_sorted(out.trace_spectrum);
  if (!out.hyperbolic_length_spectrum.empty())
    out.sys_upper_estimate = out.hyperbolic_length_spectrum.front();
  if (!out.trace_spectrum.empty())
    out.lambda_estimate = out.trace_spectrum.front();
  if (spec.cusp_at_infinity) out.cusp_stats = cusp_stats(ball, spec);
  return out;
}

bool thin_membership(const SiegelPoint& p,
                     const std::vector<GroupElement>& stabilizer_ball,
                     double rho) {
  if (rho <= 0.0) throw InvalidInputError("thin_membership: rho must be positive");
  for (const GroupElement& g : stabilizer_ball) {
    if (!fixes_infinity(g))
      throw InvalidInputError(
          "thin_membership: stabilizer ball contains an element not fixing "
          "the cusp at infinity");
    if (distance(p, act(g, p)) < rho) return true;
  }
  return false;
}

}  // namespace cuspcert
