#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "conekit/search.hpp"
#include "conekit/sim.hpp"
#include "conekit/verify.hpp"

namespace conekit {

struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// Optional overrides carried inside a problem file; command-line flags win.
struct ProblemConfig {
  std::optional<double> gamma, tol, strict_eps;
  std::optional<int> max_iters, seed_depth, steps, pairs, max_cycle_len;
  std::optional<std::uint64_t> seed;
};

struct Problem {
  SwitchedSystem system;
  std::optional<Automaton> automaton;
  std::optional<ConeAssignment> cones;
  ProblemConfig config;
};

// Accepts a JSON number or a decimal string ("1.3636"); anything else is a
// SchemaError mentioning `where`.
double json_number(const nlohmann::json& j, const std::string& where);

// Parses and validates one problem document:
// { "dim": n, "matrices": {sym: [[...], ...]},
//   "automaton"?: {"states": [...], "alphabet": [...],
//                  "transitions": [[from, sym, to], ...]},
//   "cones"?: {state: {"generators": [[...]]} | {"facets": [[...]]}},
//   "config"?: {...} }
// Unknown keys and cross-reference failures are SchemaErrors.
Problem parse_problem(const nlohmann::json& j);
Problem load_problem(const std::string& path);

nlohmann::ordered_json cone_to_json(const PolyhedralCone& K);

// Certificate document: {verdict, global_gamma,
//   transitions: [{from, sym, to, inclusion, diameter, gamma, witness?}],
//   cones: {state: {generators: [[...]]}}}. Infinite diameters serialize as
// the string "inf".
nlohmann::ordered_json certificate_to_json(const PositivityCertificate& cert,
                                           const ConeAssignment& cones);

// Search outcome document; `symbols` names the matrix family in the order
// it was passed to the search, so witness indices resolve to symbols.
nlohmann::ordered_json outcome_to_json(const SearchOutcome& res,
                                       double target_gamma,
                                       const std::vector<std::string>& symbols);

nlohmann::ordered_json cycles_to_json(const std::vector<CyclePF>& cycles);

// CSV with columns pair,step,symbol,state,hilbert_d,normalized_gap,log_scale;
// hilbert_d is blank when the run carried no cones.
std::string trajectories_csv(const std::vector<TrajectoryPair>& pairs);

// CSV with columns iter,generator_count,best_gamma,verdict_flags.
std::string trace_csv(const std::vector<IterationRecord>& trace);

}  // namespace conekit
