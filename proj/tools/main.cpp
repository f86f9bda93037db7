// chieq: batch front-end for the quadratized Runge-Kutta Cahn-Hilliard
// solver. Subcommands: simulate, verify-tableau, convergence,
// compare-midpoint. Flags override any config key.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chieq/config.hpp"
#include "chieq/diagnostics.hpp"
#include "chieq/io.hpp"
#include "chieq/midpoint.hpp"
#include "chieq/stepper.hpp"

namespace {

using namespace chieq;

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct CommandContext {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_common_options(CLI::App* cmd, CommandContext& ctx) {
  cmd->add_option("config", ctx.config_path, "Path to a key = value config file");
  for (const auto& key : config_keys()) {
    std::string flag = "--" + key;
    cmd->add_option_function<std::string>(
        flag,
        [&ctx, key](const std::string& value) {
          ctx.overrides.emplace_back(key, value);
        },
        "Override config key " + key);
  }
}

RunConfig load_config(const CommandContext& ctx) {
  RunConfig config;
  if (!ctx.config_path.empty()) {
    config = parse_config_file(ctx.config_path);
  }
  for (const auto& [key, value] : ctx.overrides) {
    apply_config_value(config, key, value);
  }
  return config;
}

struct Problem {
  GridPtr grid;
  CHParams params;
  ButcherTableau tableau;
  ScalarField phi0;
  SolverOptions solver;
};

Problem build_problem(const RunConfig& config) {
  auto tableau = tableau_by_name(config.tableau);
  if (!tableau) {
    throw ConfigError("unknown tableau '" + config.tableau + "'");
  }
  auto grid = make_grid(config.dim, config.n, config.length);
  CHParams params(config.mobility, config.eps, config.stabilization, grid);
  auto phi0 = make_initial_field(grid, config.initial, config.seed);
  SolverOptions solver;
  solver.tol = config.tol;
  solver.max_iter = config.max_iter;
  return Problem{grid, std::move(params), std::move(*tableau), std::move(phi0),
                 solver};
}

std::vector<Verdict> run_verdicts(const TimeSeries& ts) {
  std::vector<Verdict> verdicts;
  verdicts.push_back(check_q_consistency(ts, 100.0 * ts.meta.solver.tol));
  auto dissipation = check_energy_dissipation(ts, 1e-9);
  verdicts.push_back(dissipation.monotone);
  verdicts.push_back(dissipation.balance);
  verdicts.push_back(check_energy_equivalence(ts, 1e-9));
  verdicts.push_back(check_mass_conservation(ts, 1e-10));
  return verdicts;
}

void write_outputs(const std::filesystem::path& out_dir, const TimeSeries& ts,
                   const std::vector<Verdict>& verdicts) {
  std::filesystem::create_directories(out_dir);
  write_timeseries_csv(out_dir / "timeseries.csv", ts);
  if (ts.final_state) {
    write_field_csv(out_dir / "final_field.csv", ts.final_state->phi);
  }
  write_verdicts_json(out_dir / "verdicts.json", ts, verdicts);
}

int cmd_simulate(const CommandContext& ctx) {
  const RunConfig config = load_config(ctx);
  Problem problem = build_problem(config);
  const std::filesystem::path out_dir = config.out_dir;

  TimeSeries ts;
  try {
    ts = integrate(problem.phi0, problem.tableau, config.dt, config.n_steps,
                   problem.params, problem.solver);
  } catch (IntegrationError& e) {
    e.partial.meta.seed = config.seed;
    std::cerr << "simulate: " << e.what() << "\n";
    write_outputs(out_dir, e.partial, {});  // flush the partial trajectory
    return kExitSolver;
  }
  ts.meta.seed = config.seed;

  const auto verdicts = run_verdicts(ts);
  write_outputs(out_dir, ts, verdicts);

  std::cout << "tableau " << ts.meta.tableau << ", dt " << format_double(ts.meta.dt)
            << ", " << config.n_steps << " steps, grid " << config.dim << "D n="
            << config.n << "\n";
  std::cout << "E0 = " << format_double(ts.records.front().energy)
            << "  E_final = " << format_double(ts.records.back().energy) << "\n";
  std::cout << format_verdicts(verdicts);
  std::cout << "wrote " << (out_dir / "timeseries.csv").string() << "\n";
  return 0;
}

int cmd_verify_tableau(const std::string& name) {
  auto tableau = tableau_by_name(name);
  if (!tableau) {
    std::cerr << "unknown tableau '" << name << "'; available:";
    for (const auto& known : tableau_names()) std::cerr << " " << known;
    std::cerr << "\n";
    return kExitConfig;
  }
  const double tol = 1e-13;
  std::cout << format_butcher_table(*tableau);

  const auto defect = symplectic_defect(*tableau);
  if (tableau->stages <= 2) {
    std::cout << "S =";
    for (double v : defect) std::cout << " " << format_double(v);
    std::cout << "\n";
  }
  double min_b = tableau->b.front();
  for (double v : tableau->b) min_b = std::min(min_b, v);
  const double max_defect = max_symplectic_defect(*tableau);
  std::cout << "max |S_ij| = " << format_double(max_defect) << "\n";
  std::cout << "min b_i    = " << format_double(min_b) << "\n";

  const bool pass = is_symplectic(*tableau, tol);
  std::cout << "symplectic: " << (pass ? "PASS" : "FAIL") << " (tol "
            << format_double(tol) << ")\n";
  return pass ? 0 : kExitFailure;
}

struct LadderSpec {
  std::vector<int> steps;
  int ref_steps = 0;
  double expected_order = 0.0;
  double band = 0.0;
};

std::optional<LadderSpec> ladder_for(const RunConfig& config,
                                     const std::string& tableau) {
  if (tableau == "gauss2") {
    return LadderSpec{config.conv_steps_gauss2, config.conv_ref_steps_gauss2, 2.0, 0.2};
  }
  if (tableau == "gauss4") {
    return LadderSpec{config.conv_steps_gauss4, config.conv_ref_steps_gauss4, 4.0, 0.2};
  }
  if (tableau == "gauss6") {
    return LadderSpec{config.conv_steps_gauss6, config.conv_ref_steps_gauss6, 6.0, 0.3};
  }
  return std::nullopt;
}

int cmd_convergence(const CommandContext& ctx) {
  RunConfig config = load_config(ctx);
  if (!config.initial_explicit) {
    // Order studies need smooth data; unresolved random transients swamp
    // the temporal error. Users can still force any initial condition.
    config.initial = InitialCondition::parse("sine:0.1:1");
    std::cout << "initial not set; using " << config.initial.to_string()
              << " for the order study\n";
  }
  auto grid = make_grid(config.dim, config.n, config.length);
  CHParams params(config.mobility, config.eps, config.stabilization, grid);
  auto phi0 = make_initial_field(grid, config.initial, config.seed);
  SolverOptions solver;
  solver.tol = config.tol;
  solver.max_iter = config.max_iter;
  const double t_final = config.conv_t_final;

  bool all_pass = true;
  std::printf("%-8s %-9s %-28s %7s %9s %6s\n", "tableau", "dt", "errors", "slope",
              "expected", "flag");
  for (const auto& name : config.conv_tableaus) {
    auto tableau = tableau_by_name(name);
    if (!tableau) {
      std::cerr << "unknown tableau '" << name << "'\n";
      return kExitConfig;
    }
    auto ladder = ladder_for(config, name);
    if (!ladder) {
      std::cerr << "no refinement ladder configured for '" << name << "'\n";
      return kExitConfig;
    }

    try {
      std::vector<TimeSeries> runs;
      for (int steps : ladder->steps) {
        runs.push_back(
            integrate(phi0, *tableau, t_final / steps, steps, params, solver));
      }
      TimeSeries reference = integrate(
          phi0, *tableau, t_final / ladder->ref_steps, ladder->ref_steps, params,
          solver);
      auto est = estimate_order(runs, reference);

      const bool in_band = std::abs(est.slope - ladder->expected_order) <= ladder->band;
      const bool floor_ok =
          est.floor_limited && est.slope >= ladder->expected_order - 1.0;
      const bool pass = in_band || floor_ok;
      all_pass = all_pass && pass;

      std::string dts, errors;
      for (std::size_t i = 0; i < est.dts.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.1e%s", est.dts[i],
                      i + 1 < est.dts.size() ? "," : "");
        dts += buf;
        std::snprintf(buf, sizeof(buf), "%.2e%s", est.errors[i],
                      i + 1 < est.errors.size() ? "," : "");
        errors += buf;
      }
      std::printf("%-8s %-9s %-28s %7.3f %6.1f+-%.1f %6s %s\n", name.c_str(),
                  dts.c_str(), errors.c_str(), est.slope, ladder->expected_order,
                  ladder->band, est.floor_limited ? "floor" : "-",
                  pass ? "PASS" : "FAIL");
    } catch (const IntegrationError& e) {
      std::cerr << "convergence run failed for " << name << ": " << e.what() << "\n";
      return kExitSolver;
    }
  }
  return all_pass ? 0 : kExitFailure;
}

int cmd_compare_midpoint(const CommandContext& ctx) {
  RunConfig config = load_config(ctx);
  config.tableau = "gauss2";  // the 1-stage Gauss method is the one compared
  Problem problem = build_problem(config);

  CHState state{problem.phi0, initial_q(problem.phi0, problem.params), 0.0};
  ScalarField reference = problem.phi0;
  double worst = 0.0;
  bool within = true;

  std::printf("%6s %14s %14s\n", "step", "max|diff|", "bound");
  try {
    for (int i = 1; i <= config.n_steps; ++i) {
      auto result = step(state, problem.tableau, config.dt, problem.params,
                         problem.solver);
      state = std::move(result.state);
      reference = step_midpoint(reference, config.dt, problem.params,
                                problem.solver);
      const double diff = max_abs_diff(state.phi, reference);
      const double bound = 100.0 * problem.solver.tol * i;
      worst = std::max(worst, diff);
      within = within && diff <= bound;
      std::printf("%6d %14.6e %14.6e\n", i, diff, bound);
    }
  } catch (const SolverError& e) {
    std::cerr << "compare-midpoint: " << e.what() << "\n";
    return kExitSolver;
  }
  std::printf("max discrepancy over %d steps: %.6e\n", config.n_steps, worst);
  std::cout << (within ? "PASS" : "FAIL")
            << " (per-step bound 100 * tol * step)\n";
  return within ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-preserving quadratized Runge-Kutta solver for the "
               "Cahn-Hilliard equation"};
  app.require_subcommand(1);

  CommandContext simulate_ctx, convergence_ctx, midpoint_ctx;
  std::string tableau_name;

  auto* simulate = app.add_subcommand("simulate", "Run a simulation and emit CSV + verdicts");
  add_common_options(simulate, simulate_ctx);

  auto* verify = app.add_subcommand("verify-tableau", "Check a tableau against the symplectic condition");
  verify->add_option("name", tableau_name, "Tableau name")->required();

  auto* convergence = app.add_subcommand("convergence", "Temporal self-convergence study");
  add_common_options(convergence, convergence_ctx);

  auto* compare = app.add_subcommand("compare-midpoint", "Cross-validate Gauss-1 against the implicit midpoint oracle");
  add_common_options(compare, midpoint_ctx);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(simulate_ctx);
    if (verify->parsed()) return cmd_verify_tableau(tableau_name);
    if (convergence->parsed()) return cmd_convergence(convergence_ctx);
    if (compare->parsed()) return cmd_compare_midpoint(midpoint_ctx);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
