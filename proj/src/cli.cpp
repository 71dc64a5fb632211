#include "conekit/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conekit/automaton.hpp"
#include "conekit/cone.hpp"
#include "conekit/hilbert.hpp"
#include "conekit/io.hpp"
#include "conekit/search.hpp"
#include "conekit/sim.hpp"
#include "conekit/verify.hpp"

namespace conekit {
namespace {

struct CliOptions {
  std::string problem;
  std::string out;
  std::string trace;
  double gamma = 0.9;
  double tol = kTol;
  double strict_eps = kStrictEps;
  int max_iters = 200;
  int seed_depth = 2;
  int steps = 50;
  int pairs = 1;
  std::uint64_t seed = 0;
};

// Flag beats problem-file config beats built-in default.
template <class T, class U>
T effective(const CLI::Option* opt, T flag_value, const std::optional<U>& cfg,
            T fallback) {
  if (opt != nullptr && opt->count() > 0) return flag_value;
  if (cfg) return static_cast<T>(*cfg);
  return fallback;
}

void write_text(const std::string& out_path, const std::string& body) {
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw SchemaError("cannot open output file '" + out_path + "'");
  f << body;
}

void write_json(const std::string& out_path, const nlohmann::ordered_json& j) {
  write_text(out_path, j.dump(2) + "\n");
}

struct VerifyCmd {
  CliOptions o;
  CLI::Option *tol_opt = nullptr, *eps_opt = nullptr;

  int run() const {
    Problem p = load_problem(o.problem);
    if (!p.automaton) throw SchemaError("verify requires an 'automaton' section");
    if (!p.cones) throw SchemaError("verify requires a 'cones' section");
    const double tol = effective(tol_opt, o.tol, p.config.tol, kTol);
    const double eps = effective(eps_opt, o.strict_eps, p.config.strict_eps, kStrictEps);
    const PositivityCertificate cert =
        check_path_positive(p.system, *p.automaton, *p.cones, tol, eps);
    write_json(o.out, certificate_to_json(cert, *p.cones));
    switch (cert.verdict) {
      case PathVerdict::StrictlyPathPositive: return 0;
      case PathVerdict::PathPositive: return 2;
      case PathVerdict::NotPathPositive: return 1;
    }
    return 70;
  }
};

struct FindConeCmd {
  CliOptions o;
  CLI::Option *gamma_opt = nullptr, *tol_opt = nullptr, *eps_opt = nullptr,
              *iters_opt = nullptr, *depth_opt = nullptr;

  int run() const {
    Problem p = load_problem(o.problem);
    SearchConfig cfg;
    cfg.gamma = effective(gamma_opt, o.gamma, p.config.gamma, 0.9);
    cfg.tol = effective(tol_opt, o.tol, p.config.tol, kTol);
    cfg.strict_eps = effective(eps_opt, o.strict_eps, p.config.strict_eps, kStrictEps);
    cfg.max_iters = effective(iters_opt, o.max_iters, p.config.max_iters, 200);
    cfg.seed_depth = effective(depth_opt, o.seed_depth, p.config.seed_depth, 2);
    if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) {
      throw SchemaError("--gamma must lie in the open interval (0, 1)");
    }

    // Deterministic family order: matrices sorted by symbol (std::map order).
    std::vector<std::string> symbols;
    std::vector<Matrix> mats;
    for (const auto& [sym, m] : p.system.matrices) {
      symbols.push_back(sym);
      mats.push_back(m);
    }

    const SearchOutcome res = find_contracting_cone(mats, cfg);
    write_json(o.out, outcome_to_json(res, cfg.gamma, symbols));
    if (!o.trace.empty()) write_text(o.trace, trace_csv(res.trace));
    switch (res.status) {
      case SearchStatus::FoundGammaContracting: return 0;
      case SearchStatus::FoundDeltaInvariant: return 3;
      case SearchStatus::No: return 1;
      case SearchStatus::Inconclusive: return 4;
    }
    return 70;
  }
};

struct SimulateCmd {
  CliOptions o;
  CLI::Option *steps_opt = nullptr, *seed_opt = nullptr, *pairs_opt = nullptr;

  // Strictly positive combination of every generator: interior of a solid cone.
  static Vector interior_point(const PolyhedralCone& K, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> weight(0.3, 1.0);
    Vector x = Vector::Zero(K.dim());
    for (const Vector& g : K.generators()) x += weight(rng) * g.normalized();
    return x;
  }

  static Vector free_point(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Vector x(dim);
    do {
      for (int i = 0; i < dim; ++i) x(i) = gauss(rng);
    } while (x.norm() < 1e-6);
    return x;
  }

  int run() const {
    Problem p = load_problem(o.problem);
    if (!p.automaton) throw SchemaError("simulate requires an 'automaton' section");
    const int steps = effective(steps_opt, o.steps, p.config.steps, 50);
    const int pairs = effective(pairs_opt, o.pairs, p.config.pairs, 1);
    const std::uint64_t seed = effective(seed_opt, o.seed, p.config.seed,
                                         std::uint64_t{0});
    if (pairs < 1) throw SchemaError("pairs must be at least 1");

    std::vector<TrajectoryPair> results;
    results.reserve(pairs);
    for (int pr = 0; pr < pairs; ++pr) {
      const std::uint64_t seed_p = seed + static_cast<std::uint64_t>(pr);
      // Walks are seed-deterministic, so drawing here tells us the start state
      // that simulate_pair will use for the same (steps, seed).
      const auto walk = p.automaton->random_walk(steps, seed_p);
      std::mt19937_64 rng(seed_p);
      Vector x0, y0;
      if (p.cones) {
        const auto it = p.cones->find(walk.states.front());
        if (it == p.cones->end()) {
          throw MissingCone("no cone for state '" + walk.states.front() + "'");
        }
        x0 = interior_point(it->second, rng);
        y0 = interior_point(it->second, rng);
      } else {
        x0 = free_point(p.system.dim, rng);
        y0 = free_point(p.system.dim, rng);
      }
      results.push_back(
          simulate_pair(p.system, *p.automaton, p.cones, x0, y0, steps, seed_p));
    }
    write_text(o.out, trajectories_csv(results));
    return 0;
  }
};

struct PfCyclesCmd {
  CliOptions o;
  CLI::Option* tol_opt = nullptr;

  int run() const {
    Problem p = load_problem(o.problem);
    if (!p.automaton) throw SchemaError("pf-cycles requires an 'automaton' section");
    const int max_len = p.config.max_cycle_len ? *p.config.max_cycle_len : 6;
    if (max_len < 1) throw SchemaError("config.max_cycle_len must be at least 1");
    const double tol = effective(tol_opt, o.tol, p.config.tol, 1e-10);
    write_json(o.out, cycles_to_json(cycle_pf(p.system, *p.automaton, max_len, tol)));
    return 0;
  }
};

void add_common(CLI::App* sub, CliOptions& o) {
  sub->add_option("problem", o.problem, "Problem file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "Write the result here instead of stdout");
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Cone-based positivity analysis for constrained switching systems"};
  app.require_subcommand(1);

  VerifyCmd verify_cmd;
  auto* verify_sub = app.add_subcommand(
      "verify", "Check path-complete positivity of a cone assignment");
  add_common(verify_sub, verify_cmd.o);
  verify_cmd.tol_opt =
      verify_sub->add_option("--tol", verify_cmd.o.tol, "Numerical tolerance");
  verify_cmd.eps_opt = verify_sub->add_option(
      "--strict-eps", verify_cmd.o.strict_eps, "Interior margin for strictness");

  FindConeCmd find_cmd;
  auto* find_sub = app.add_subcommand(
      "find-cone", "Search for a common contracting cone for all matrices");
  add_common(find_sub, find_cmd.o);
  find_cmd.gamma_opt =
      find_sub->add_option("--gamma", find_cmd.o.gamma, "Target contraction ratio");
  find_cmd.tol_opt = find_sub->add_option("--tol", find_cmd.o.tol, "Numerical tolerance");
  find_cmd.eps_opt = find_sub->add_option("--strict-eps", find_cmd.o.strict_eps,
                                          "Interior margin for strictness");
  find_cmd.iters_opt =
      find_sub->add_option("--max-iters", find_cmd.o.max_iters, "Iteration budget");
  find_cmd.depth_opt = find_sub->add_option("--seed-depth", find_cmd.o.seed_depth,
                                            "Word length for the seed cone");
  find_sub->add_option("--trace", find_cmd.o.trace,
                       "Write the per-iteration search trace (CSV) here");

  SimulateCmd sim_cmd;
  auto* sim_sub = app.add_subcommand(
      "simulate", "Sample admissible trajectory pairs and report their gaps");
  add_common(sim_sub, sim_cmd.o);
  sim_cmd.steps_opt = sim_sub->add_option("--steps", sim_cmd.o.steps, "Walk length");
  sim_cmd.seed_opt = sim_sub->add_option("--seed", sim_cmd.o.seed, "Base RNG seed");
  sim_cmd.pairs_opt =
      sim_sub->add_option("--pairs", sim_cmd.o.pairs, "Number of trajectory pairs");

  PfCyclesCmd cycles_cmd;
  auto* cycles_sub = app.add_subcommand(
      "pf-cycles", "Dominant eigenstructure along every simple automaton cycle");
  add_common(cycles_sub, cycles_cmd.o);
  cycles_cmd.tol_opt =
      cycles_sub->add_option("--tol", cycles_cmd.o.tol, "Eigensolver tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  }

  try {
    if (verify_sub->parsed()) return verify_cmd.run();
    if (find_sub->parsed()) return find_cmd.run();
    if (sim_sub->parsed()) return sim_cmd.run();
    if (cycles_sub->parsed()) return cycles_cmd.run();
    std::cerr << app.help();
    return 64;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const MissingCone& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const InconsistentDimensions& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const DanglingReference& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const DeadState& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const NotSolid& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const NotPointed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const NotInCone& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}

}  // namespace conekit
