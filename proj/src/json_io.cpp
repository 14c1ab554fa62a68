#include "cuspcert/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace cuspcert {

using nlohmann::json;

json matrix_to_json(const SquareMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

SquareMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw InvalidInputError("matrix: expected a non-empty array of rows");
  const int dim = static_cast<int>(j.size());
  if (dim < 2 || dim > kMaxDim)
    throw InvalidInputError("matrix: dimension out of range");
  SquareMatrix m(dim);
  for (int r = 0; r < dim; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw InvalidInputError("matrix: row " + std::to_string(r) +
                              " has the wrong width");
    for (int c = 0; c < dim; ++c) {
      const auto& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw InvalidInputError("matrix: entries must be [re, im] pairs");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag()))
        throw InvalidInputError("matrix: entries must be finite");
    }
  }
  return m;
}

json point_to_json(const SiegelPoint& p) {
  json zeta = json::array();
  for (const Complex& z : p.zeta)
    zeta.push_back(json::array({z.real(), z.imag()}));
  return json{{"zeta", std::move(zeta)}, {"v", p.v}, {"u", p.u}};
}

SiegelPoint point_from_json(const json& j) {
  if (!j.is_object() || !j.contains("zeta") || !j.contains("v") || !j.contains("u"))
    throw InvalidInputError("point: expected {\"zeta\", \"v\", \"u\"}");
  SiegelPoint p;
  for (const auto& e : j["zeta"]) {
    if (!e.is_array() || e.size() != 2)
      throw InvalidInputError("point: zeta entries must be [re, im] pairs");
    p.zeta.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  p.v = j["v"].get<double>();
  p.u = j["u"].get<double>();
  return p;
}

json isometry_to_json(const IsometryClass& cls) {
  json out{{"kind", to_string(cls.kind)}, {"margin", cls.margin}};
  if (cls.kind == IsometryKind::hyperbolic) {
    out["r"] = cls.r;
    out["theta"] = cls.theta;
    out["translationLength"] = length_from_dilation(cls.r);
  }
  return out;
}

namespace {

json optional_to_json(const std::optional<double>& x) {
  if (x) return *x;
  return nullptr;
}

}  // namespace

json census_to_json(const WordBallCensus& c) {
  json out;
  out["maxLength"] = c.max_length;
  out["elementCount"] = c.element_count;
  out["counts"] = {{"elliptic", c.elliptic_count},
                   {"parabolic", c.parabolic_count},
                   {"hyperbolic", c.hyperbolic_count},
                   {"indeterminate", c.indeterminate_count}};
  out["indeterminateIndices"] = c.indeterminate_indices;
  out["hyperbolicLengthSpectrum"] = c.hyperbolic_length_spectrum;
  out["traceSpectrum"] = c.trace_spectrum;
  out["sysUpperEstimate"] = optional_to_json(c.sys_upper_estimate);
  out["lambdaEstimate"] = optional_to_json(c.lambda_estimate);
  out["cuspStats"] = {
      {"tMinVertical", optional_to_json(c.cusp_stats.t_min_vertical)},
      {"cMinNonStabilizer", optional_to_json(c.cusp_stats.c_min_non_stabilizer)},
      {"depthEstimate", optional_to_json(c.cusp_stats.depth_estimate)}};
  out["maxResidual"] = c.max_residual;
  out["oneSided"] = json::array(
      {"sysUpperEstimate is the minimum over a finite ball: an upper bound "
       "for the systole",
       "lambdaEstimate is an upper bound for the trace infimum",
       "tMinVertical and cMinNonStabilizer are upper bounds for their "
       "group-wide minima",
       "depthEstimate combines one-sided estimates and is empirical, not a "
       "certificate"});
  return out;
}

json extended_to_json(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) throw Error("extended_to_json: refusing to encode NaN");
  return x;
}

double extended_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw InvalidInputError("extended value: unknown string \"" + s + "\"");
  }
  return j.get<double>();
}

namespace {

void put_bound_value(json& values, json& ln_values, const char* name,
                     const bounds::BoundValue& v) {
  values[name] = extended_to_json(v.value);
  ln_values[name] = extended_to_json(v.ln_value);
}

bounds::BoundValue get_bound_value(const json& values, const json& ln_values,
                                   const char* name) {
  return {extended_from_json(values.at(name)),
          extended_from_json(ln_values.at(name))};
}

}  // namespace

json bound_report_to_json(const bounds::BoundReport& r) {
  json inputs{{"n", r.inputs.n}, {"sys", r.inputs.sys}, {"m", r.inputs.m},
              {"s", r.inputs.s}};
  inputs["sysD"] = optional_to_json(r.inputs.sys_d);
  inputs["fieldDegree"] =
      r.inputs.field_degree ? json(*r.inputs.field_degree) : json(nullptr);
  inputs["epsilon"] = optional_to_json(r.inputs.epsilon);

  json values, ln_values;
  put_bound_value(values, ln_values, "inducedVolumeLB", r.induced_volume);
  put_bound_value(values, ln_values, "logCanonicalDegreeLB",
                  r.log_canonical_degree);
  put_bound_value(values, ln_values, "traceFloor", r.trace_floor);
  if (r.depth_floor)
    put_bound_value(values, ln_values, "depthFloor", *r.depth_floor);
  put_bound_value(values, ln_values, "canonicalDegreeLB", r.canonical_degree);
  put_bound_value(values, ln_values, "canonicalVolumeLB", r.canonical_volume);
  put_bound_value(values, ln_values, "seshadriThickLB", r.seshadri_thick);
  put_bound_value(values, ln_values, "seshadriLocusThreshold", r.seshadri_locus);
  if (r.sparsity)
    put_bound_value(values, ln_values, "sparsityExponent", *r.sparsity);

  values["thresholdAmple"] = r.threshold_ample;
  values["thresholdCanonical"] = r.threshold_canonical;
  values["veryAmplenessThresholdS1"] = r.very_ampleness_threshold_s1;
  values["veryAmplenessThreshold"] = r.very_ampleness_threshold_s;
  values["seshadriThickHypothesis"] = r.seshadri_thick_hypothesis;
  values["seshadriJetsLB"] = r.seshadri_jets_lb;
  values["sysDThreshold"] = r.sys_d_threshold;
  values["fullSysThreshold"] = r.full_sys_threshold;
  values["seshadriFullLB"] = r.seshadri_full_lb;
  if (r.boundary_seshadri) values["boundarySeshadriLB"] = *r.boundary_seshadri;

  json certified{{"canonicalDegree", r.canonical_degree_certified},
                 {"canonicalVolume", r.canonical_volume_certified},
                 {"globallyGenerated2K", r.globally_generated_2k},
                 {"veryAmpleModD2K", r.very_ample_mod_d_2k},
                 {"veryAmple3K", r.very_ample_3k},
                 {"separatesJets2K", r.separates_jets_2k},
                 {"seshadriThick", r.seshadri_thick_certified},
                 {"fullVeryAmple2K", r.full_very_ample_2k},
                 {"sparsity", r.sparsity_certified}};

  return json{{"inputs", std::move(inputs)},
              {"values", std::move(values)},
              {"logValues", std::move(ln_values)},
              {"certified", std::move(certified)},
              {"assumptions", r.assumptions}};
}

bounds::BoundReport bound_report_from_json(const json& j) {
  bounds::BoundReport r;
  const json& in = j.at("inputs");
  r.inputs.n = in.at("n").get<int>();
  r.inputs.sys = in.at("sys").get<double>();
  r.inputs.m = in.at("m").get<int>();
  r.inputs.s = in.at("s").get<int>();
  if (!in.at("sysD").is_null()) r.inputs.sys_d = in.at("sysD").get<double>();
  if (!in.at("fieldDegree").is_null())
    r.inputs.field_degree = in.at("fieldDegree").get<int>();
  if (!in.at("epsilon").is_null())
    r.inputs.epsilon = in.at("epsilon").get<double>();

  const json& values = j.at("values");
  const json& ln_values = j.at("logValues");
  r.induced_volume = get_bound_value(values, ln_values, "inducedVolumeLB");
  r.log_canonical_degree =
      get_bound_value(values, ln_values, "logCanonicalDegreeLB");
  r.trace_floor = get_bound_value(values, ln_values, "traceFloor");
  if (values.contains("depthFloor"))
    r.depth_floor = get_bound_value(values, ln_values, "depthFloor");
  r.canonical_degree = get_bound_value(values, ln_values, "canonicalDegreeLB");
  r.canonical_volume = get_bound_value(values, ln_values, "canonicalVolumeLB");
  r.seshadri_thick = get_bound_value(values, ln_values, "seshadriThickLB");
  r.seshadri_locus =
      get_bound_value(values, ln_values, "seshadriLocusThreshold");
  if (values.contains("sparsityExponent"))
    r.sparsity = get_bound_value(values, ln_values, "sparsityExponent");

  r.threshold_ample = values.at("thresholdAmple").get<double>();
  r.threshold_canonical = values.at("thresholdCanonical").get<double>();
  r.very_ampleness_threshold_s1 =
      values.at("veryAmplenessThresholdS1").get<double>();
  r.very_ampleness_threshold_s =
      values.at("veryAmplenessThreshold").get<double>();
  r.seshadri_thick_hypothesis =
      values.at("seshadriThickHypothesis").get<double>();
  r.seshadri_jets_lb = values.at("seshadriJetsLB").get<double>();
  r.sys_d_threshold = values.at("sysDThreshold").get<double>();
  r.full_sys_threshold = values.at("fullSysThreshold").get<double>();
  r.seshadri_full_lb = values.at("seshadriFullLB").get<double>();
  if (values.contains("boundarySeshadriLB"))
    r.boundary_seshadri = values.at("boundarySeshadriLB").get<double>();

  const json& certified = j.at("certified");
  r.canonical_degree_certified = certified.at("canonicalDegree").get<bool>();
  r.canonical_volume_certified = certified.at("canonicalVolume").get<bool>();
  r.globally_generated_2k = certified.at("globallyGenerated2K").get<bool>();
  r.very_ample_mod_d_2k = certified.at("veryAmpleModD2K").get<bool>();
  r.very_ample_3k = certified.at("veryAmple3K").get<bool>();
  r.separates_jets_2k = certified.at("separatesJets2K").get<bool>();
  r.seshadri_thick_certified = certified.at("seshadriThick").get<bool>();
  r.full_very_ample_2k = certified.at("fullVeryAmple2K").get<bool>();
  r.sparsity_certified = certified.at("sparsity").get<bool>();

  r.assumptions = j.at("assumptions").get<std::vector<std::string>>();
  return r;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InvalidInputError("cannot parse " + path + ": " + e.what());
  }
  return j;
}

}  // namespace cuspcert
