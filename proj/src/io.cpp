#include "conekit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace conekit {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void schema_fail(const std::string& msg) { throw SchemaError(msg); }

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) schema_fail(where + ": unknown key '" + key + "'");
  }
}

int json_int(const json& j, const std::string& where) {
  const double d = json_number(j, where);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d) schema_fail(where + ": expected an integer");
  return i;
}

Vector parse_vector(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    schema_fail(where + ": expected an array of " + std::to_string(dim) + " numbers");
  }
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = json_number(j[i], where + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix parse_matrix(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    schema_fail(where + ": expected " + std::to_string(dim) + " rows");
  }
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    m.row(r) = parse_vector(j[r], dim, where + " row " + std::to_string(r)).transpose();
  }
  return m;
}

PolyhedralCone parse_cone(const json& j, int dim, const std::string& where) {
  if (!j.is_object()) schema_fail(where + ": expected an object");
  reject_unknown_keys(j, {"generators", "facets"}, where);
  const bool has_g = j.contains("generators"), has_f = j.contains("facets");
  if (has_g == has_f) {
    schema_fail(where + ": give exactly one of 'generators' or 'facets'");
  }
  const json& rows = has_g ? j.at("generators") : j.at("facets");
  if (!rows.is_array() || rows.empty()) {
    schema_fail(where + ": expected a nonempty array of vectors");
  }
  std::vector<Vector> vs;
  vs.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    vs.push_back(parse_vector(rows[i], dim, where + "[" + std::to_string(i) + "]"));
  }
  try {
    return has_g ? PolyhedralCone::from_generators(vs)
                 : PolyhedralCone::from_facets(vs);
  } catch (const std::exception& e) {
    schema_fail(where + ": " + e.what());
  }
}

std::string str_at(const json& j, const std::string& where) {
  if (!j.is_string()) schema_fail(where + ": expected a string");
  return j.get<std::string>();
}

json number_or_string(double v) {
  // JSON has no inf/nan literals; encode them as strings.
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json witness_to_json(const InclusionWitness& w) {
  ordered_json out;
  out["generator_index"] = w.generator_index;
  out["facet_index"] = w.facet_index;
  out["generator"] = std::vector<double>(w.generator.data(),
                                         w.generator.data() + w.generator.size());
  out["facet"] = std::vector<double>(w.facet.data(), w.facet.data() + w.facet.size());
  out["margin"] = w.margin;
  return out;
}

std::vector<std::vector<double>> rows_of(const std::vector<Vector>& vs) {
  std::vector<std::vector<double>> rows;
  rows.reserve(vs.size());
  for (const Vector& v : vs) rows.emplace_back(v.data(), v.data() + v.size());
  return rows;
}

}  // namespace

double json_number(const nlohmann::json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      schema_fail(where + ": '" + s + "' is not a decimal number");
    }
    if (used != s.size()) schema_fail(where + ": '" + s + "' is not a decimal number");
    return v;
  }
  schema_fail(where + ": expected a number or decimal string");
}

Problem parse_problem(const nlohmann::json& j) {
  if (!j.is_object()) schema_fail("problem: expected a JSON object");
  reject_unknown_keys(j, {"dim", "matrices", "automaton", "cones", "config"},
                      "problem");
  if (!j.contains("dim")) schema_fail("problem: missing 'dim'");
  if (!j.contains("matrices")) schema_fail("problem: missing 'matrices'");

  Problem p;
  p.system.dim = json_int(j.at("dim"), "dim");
  if (p.system.dim < 1) schema_fail("dim: must be a positive integer");

  const json& mats = j.at("matrices");
  if (!mats.is_object() || mats.empty()) {
    schema_fail("matrices: expected a nonempty object of named matrices");
  }
  for (const auto& [sym, rows] : mats.items()) {
    p.system.matrices[sym] = parse_matrix(rows, p.system.dim, "matrices." + sym);
  }

  if (j.contains("automaton")) {
    const json& a = j.at("automaton");
    if (!a.is_object()) schema_fail("automaton: expected an object");
    reject_unknown_keys(a, {"states", "alphabet", "transitions"}, "automaton");
    for (const char* key : {"states", "alphabet", "transitions"}) {
      if (!a.contains(key) || !a.at(key).is_array()) {
        schema_fail(std::string("automaton.") + key + ": expected an array");
      }
    }
    std::vector<std::string> states, alphabet;
    for (std::size_t i = 0; i < a.at("states").size(); ++i) {
      states.push_back(str_at(a.at("states")[i], "automaton.states"));
    }
    for (std::size_t i = 0; i < a.at("alphabet").size(); ++i) {
      alphabet.push_back(str_at(a.at("alphabet")[i], "automaton.alphabet"));
    }
    std::vector<Transition> ts;
    for (std::size_t i = 0; i < a.at("transitions").size(); ++i) {
      const json& t = a.at("transitions")[i];
      const std::string where = "automaton.transitions[" + std::to_string(i) + "]";
      if (!t.is_array() || t.size() != 3) schema_fail(where + ": expected [from, symbol, to]");
      ts.push_back({str_at(t[0], where), str_at(t[1], where), str_at(t[2], where)});
    }
    try {
      p.automaton = Automaton::validate(std::move(states), std::move(alphabet),
                                        std::move(ts));
    } catch (const std::exception& e) {
      schema_fail(std::string("automaton: ") + e.what());
    }
    for (const auto& sym : p.automaton->alphabet()) {
      if (!p.system.matrices.count(sym)) {
        schema_fail("automaton.alphabet: symbol '" + sym + "' has no matrix");
      }
    }
  }

  if (j.contains("cones")) {
    const json& cs = j.at("cones");
    if (!cs.is_object()) schema_fail("cones: expected an object keyed by state");
    ConeAssignment assignment;
    for (const auto& [state, body] : cs.items()) {
      assignment.emplace(state, parse_cone(body, p.system.dim, "cones." + state));
    }
    p.cones = std::move(assignment);
  }

  if (j.contains("config")) {
    const json& c = j.at("config");
    if (!c.is_object()) schema_fail("config: expected an object");
    reject_unknown_keys(c,
                        {"gamma", "tol", "strict_eps", "max_iters", "seed_depth",
                         "steps", "seed", "pairs", "max_cycle_len"},
                        "config");
    if (c.contains("gamma")) p.config.gamma = json_number(c.at("gamma"), "config.gamma");
    if (c.contains("tol")) p.config.tol = json_number(c.at("tol"), "config.tol");
    if (c.contains("strict_eps")) {
      p.config.strict_eps = json_number(c.at("strict_eps"), "config.strict_eps");
    }
    if (c.contains("max_iters")) p.config.max_iters = json_int(c.at("max_iters"), "config.max_iters");
    if (c.contains("seed_depth")) p.config.seed_depth = json_int(c.at("seed_depth"), "config.seed_depth");
    if (c.contains("steps")) p.config.steps = json_int(c.at("steps"), "config.steps");
    if (c.contains("pairs")) p.config.pairs = json_int(c.at("pairs"), "config.pairs");
    if (c.contains("max_cycle_len")) {
      p.config.max_cycle_len = json_int(c.at("max_cycle_len"), "config.max_cycle_len");
    }
    if (c.contains("seed")) {
      const double s = json_number(c.at("seed"), "config.seed");
      if (s < 0 || s != std::floor(s)) schema_fail("config.seed: expected a nonnegative integer");
      p.config.seed = static_cast<std::uint64_t>(s);
    }
  }
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema_fail("cannot open problem file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    schema_fail("problem file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_problem(j);
}

nlohmann::ordered_json cone_to_json(const PolyhedralCone& K) {
  ordered_json out;
  out["generators"] = rows_of(K.generators());
  return out;
}

nlohmann::ordered_json certificate_to_json(const PositivityCertificate& cert,
                                           const ConeAssignment& cones) {
  ordered_json out;
  switch (cert.verdict) {
    case PathVerdict::StrictlyPathPositive: out["verdict"] = "StrictlyPathPositive"; break;
    case PathVerdict::PathPositive: out["verdict"] = "PathPositive"; break;
    case PathVerdict::NotPathPositive: out["verdict"] = "NotPathPositive"; break;
  }
  out["global_gamma"] = cert.global_gamma;
  out["transitions"] = ordered_json::array();
  for (const auto& tc : cert.transitions) {
    ordered_json t;
    t["from"] = tc.transition.from;
    t["sym"] = tc.transition.symbol;
    t["to"] = tc.transition.to;
    t["inclusion"] = tc.inclusion == Inclusion::Strict      ? "Strict"
                     : tc.inclusion == Inclusion::NonStrict ? "NonStrict"
                                                            : "No";
    t["diameter"] = number_or_string(tc.diameter);
    t["gamma"] = tc.gamma;
    if (tc.witness) t["witness"] = witness_to_json(*tc.witness);
    out["transitions"].push_back(std::move(t));
  }
  out["cones"] = ordered_json::object();
  for (const auto& [state, K] : cones) out["cones"][state] = cone_to_json(K);
  return out;
}

nlohmann::ordered_json outcome_to_json(const SearchOutcome& res,
                                       double target_gamma,
                                       const std::vector<std::string>& symbols) {
  ordered_json out;
  switch (res.status) {
    case SearchStatus::FoundGammaContracting: out["status"] = "FoundGammaContracting"; break;
    case SearchStatus::FoundDeltaInvariant: out["status"] = "FoundDeltaInvariant"; break;
    case SearchStatus::No: out["status"] = "No"; break;
    case SearchStatus::Inconclusive: out["status"] = "Inconclusive"; break;
  }
  out["gamma"] = target_gamma;
  out["gamma_achieved"] = number_or_string(res.gamma_achieved);
  if (res.delta) out["delta"] = *res.delta;
  out["iterations"] = res.iterations;
  if (!res.reason.empty()) out["reason"] = res.reason;
  if (!res.warning.empty()) out["warning"] = res.warning;
  if (res.cone) out["cone"] = cone_to_json(*res.cone);
  if (res.witness_cone) {
    ordered_json w;
    w["matrix_index"] = res.witness_index;
    if (res.witness_index >= 0 &&
        res.witness_index < static_cast<int>(symbols.size())) {
      w["symbol"] = symbols[res.witness_index];
    }
    w["cone"] = cone_to_json(*res.witness_cone);
    out["witness"] = std::move(w);
  }
  return out;
}

nlohmann::ordered_json cycles_to_json(const std::vector<CyclePF>& cycles) {
  ordered_json out;
  out["cycles"] = ordered_json::array();
  for (const CyclePF& c : cycles) {
    ordered_json rec;
    rec["states"] = c.states;
    rec["labels"] = c.labels;
    if (c.error.empty()) {
      rec["eigenvalue"] = c.eigenvalue;
      rec["rays"] = rows_of(c.rays);
      if (!std::isnan(c.rotation_residual)) {
        rec["rotation_residual"] = c.rotation_residual;
      }
    } else {
      rec["error"] = c.error;
    }
    out["cycles"].push_back(std::move(rec));
  }
  return out;
}

std::string trajectories_csv(const std::vector<TrajectoryPair>& pairs) {
  std::string out = "pair,step,symbol,state,hilbert_d,normalized_gap,log_scale\n";
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const TrajectoryPair& tp = pairs[p];
    for (std::size_t k = 0; k < tp.q.size(); ++k) {
      out += std::to_string(p);
      out += ',';
      out += std::to_string(k);
      out += ',';
      if (k < tp.symbols.size()) out += tp.symbols[k];
      out += ',';
      out += tp.q[k];
      out += ',';
      if (!tp.hilbert_d.empty()) out += csv_double(tp.hilbert_d[k]);
      out += ',';
      out += csv_double(tp.normalized_gap[k]);
      out += ',';
      out += csv_double(tp.log_scale[k]);
      out += '\n';
    }
  }
  return out;
}

std::string trace_csv(const std::vector<IterationRecord>& trace) {
  std::string out = "iter,generator_count,best_gamma,verdict_flags\n";
  for (const IterationRecord& r : trace) {
    std::string flags;
    if (r.level > 0) flags += "L" + std::to_string(r.level);
    if (!r.note.empty()) {
      if (!flags.empty()) flags += '+';
      flags += r.note;
    }
    out += std::to_string(r.iter) + ',' + std::to_string(r.generators) + ',' +
           csv_double(r.contraction) + ',' + flags + '\n';
  }
  return out;
}

}  // namespace conekit
