#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "chieq/diagnostics.hpp"
#include "chieq/stepper.hpp"
#include "oracles.hpp"

using namespace chieq;
using namespace chieq::testing;

namespace {

// Synthetic refinement run whose final field sits at a prescribed L2
// distance from the reference; the oracle for the slope estimator.
TimeSeries synthetic_run(const GridPtr& grid, const ScalarField& phi_ref,
                         const ScalarField& unit_direction, double dt,
                         double error, double t_final) {
  TimeSeries ts;
  ts.meta.dt = dt;
  ts.meta.dim = grid->dim();
  ts.meta.n = grid->points_per_dim();
  ts.meta.length = grid->length();
  std::vector<double> values(phi_ref.values().begin(), phi_ref.values().end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] += error * unit_direction[i];
  }
  ScalarField phi(grid, std::move(values));
  ts.final_state = CHState{phi, phi, t_final};
  ts.records.push_back(StepRecord{});
  return ts;
}

ScalarField unit_l2_field(const GridPtr& grid, std::uint64_t seed) {
  auto f = random_smooth_field(grid, seed, 1.0);
  const double norm = l2_norm(f);
  for (double& v : f.values()) v /= norm;
  return f;
}

}  // namespace

TEST_CASE("q-consistency verdict on real trajectories") {
  auto grid = make_grid(1, 32, two_pi);
  CHParams p(1.0, 0.5, 0.0, grid);
  auto phi0 = random_rough_field(grid, 17, 0.05);

  SUBCASE("gauss run passes") {
    auto ts = integrate(phi0, gauss_tableau(4), 1e-3, 100, p);
    CHECK(check_q_consistency(ts, 1e-10).pass);
  }
  SUBCASE("forward-Euler run fails at the same tolerance") {
    // CFL-stable explicit step: the run completes, the identity still
    // drifts by (dt k)^2 per step, far beyond the symplectic tolerance.
    auto ts = integrate(phi0, forward_euler(), 2e-5, 50, p);
    auto v = check_q_consistency(ts, 1e-10);
    CHECK_FALSE(v.pass);
    CHECK(v.observed > 1e-10);
  }
  SUBCASE("zero-step series passes by construction") {
    TimeSeries ts;
    ts.records.push_back(StepRecord{});
    CHECK(check_q_consistency(ts, 1e-12).pass);
  }
}

TEST_CASE("energy dissipation verdicts") {
  auto grid = make_grid(1, 32, two_pi);
  CHParams p(1.0, 0.5, 0.0, grid);

  SUBCASE("gauss run passes both sub-verdicts") {
    auto phi0 = random_rough_field(grid, 18, 0.05);
    auto ts = integrate(phi0, gauss_tableau(6), 1e-3, 100, p);
    auto v = check_energy_dissipation(ts, 1e-9);
    CHECK(v.monotone.pass);
    CHECK(v.balance.pass);
    CHECK(v.pass());
  }
  SUBCASE("constant state has increments at roundoff") {
    ScalarField phi0(grid, std::vector<double>(grid->total_points(), 1.0));
    auto ts = integrate(phi0, gauss_tableau(2), 1e-2, 10, p);
    auto v = check_energy_dissipation(ts, 1e-13);
    CHECK(v.monotone.pass);
    CHECK(v.balance.pass);
  }
  SUBCASE("forward Euler with a large step breaks monotonicity") {
    auto grid16 = make_grid(1, 16, two_pi);
    CHParams p16(1.0, 0.5, 0.0, grid16);
    auto phi0 = random_rough_field(grid16, 19, 0.05);
    auto ts = integrate(phi0, forward_euler(), 1.5e-3, 30, p16);
    auto v = check_energy_dissipation(ts, 1e-9);
    CHECK_FALSE(v.monotone.pass);
  }
}

TEST_CASE("E stays equal to F along symplectic runs") {
  auto grid = make_grid(1, 32, two_pi);
  CHParams p(1.0, 0.5, 1.0, grid);
  auto ts = integrate(random_rough_field(grid, 20, 0.05), gauss_tableau(4),
                      1e-3, 100, p);
  CHECK(check_energy_equivalence(ts, 1e-9).pass);
  CHECK(check_mass_conservation(ts, 1e-10).pass);
}

TEST_CASE("order estimation recovers prescribed slopes") {
  auto grid = make_grid(1, 32, two_pi);
  auto phi_ref = random_smooth_field(grid, 30, 0.2);
  auto direction = unit_l2_field(grid, 31);
  const double t_final = 0.1;

  TimeSeries reference = synthetic_run(grid, phi_ref, direction, 1e-5, 0.0, t_final);
  reference.meta.solver.tol = 1e-12;

  SUBCASE("clean power law gives the exact slope") {
    // Step sizes of order one keep the injected perturbations far above
    // the representable resolution of the base field.
    for (double order : {2.0, 4.0, 6.0}) {
      std::vector<TimeSeries> runs;
      for (double dt : {0.4, 0.2, 0.1}) {
        const double error = std::pow(dt, order);
        runs.push_back(synthetic_run(grid, phi_ref, direction, dt, error, t_final));
      }
      auto est = estimate_order(runs, reference, 1e-300);
      CHECK(est.slope == doctest::Approx(order).epsilon(1e-3));
      CHECK_FALSE(est.floor_limited);
      CHECK(est.levels_used == 3);
    }
  }
  SUBCASE("levels at the floor are dropped and flagged") {
    std::vector<TimeSeries> runs;
    runs.push_back(synthetic_run(grid, phi_ref, direction, 4e-3, 1e-2, t_final));
    runs.push_back(synthetic_run(grid, phi_ref, direction, 2e-3, 2.5e-3, t_final));
    runs.push_back(synthetic_run(grid, phi_ref, direction, 1e-3, 1e-13, t_final));
    auto est = estimate_order(runs, reference, 1e-10);
    CHECK(est.floor_limited);
    CHECK(est.levels_used == 2);
    CHECK(est.slope == doctest::Approx(2.0).epsilon(1e-3));
  }
  SUBCASE("everything at the floor keeps the flag and reports a fallback") {
    std::vector<TimeSeries> runs;
    for (double dt : {4e-3, 2e-3, 1e-3}) {
      runs.push_back(synthetic_run(grid, phi_ref, direction, dt, 1e-13, t_final));
    }
    auto est = estimate_order(runs, reference, 1e-10);
    CHECK(est.floor_limited);
    CHECK(est.levels_used == 0);
  }
  SUBCASE("insufficient levels are rejected") {
    std::vector<TimeSeries> runs;
    runs.push_back(synthetic_run(grid, phi_ref, direction, 4e-3, 1e-2, t_final));
    runs.push_back(synthetic_run(grid, phi_ref, direction, 2e-3, 1e-3, t_final));
    CHECK_THROWS_AS(estimate_order(runs, reference), std::invalid_argument);
  }
  SUBCASE("mismatched final times are rejected") {
    std::vector<TimeSeries> runs;
    runs.push_back(synthetic_run(grid, phi_ref, direction, 4e-3, 1e-2, t_final));
    runs.push_back(synthetic_run(grid, phi_ref, direction, 2e-3, 1e-3, t_final));
    runs.push_back(synthetic_run(grid, phi_ref, direction, 1e-3, 1e-4, 0.2));
    CHECK_THROWS_AS(estimate_order(runs, reference), std::invalid_argument);
  }
  SUBCASE("mismatched parameters are rejected") {
    std::vector<TimeSeries> runs;
    for (double dt : {4e-3, 2e-3, 1e-3}) {
      runs.push_back(synthetic_run(grid, phi_ref, direction, dt, 1e-3, t_final));
    }
    runs[1].meta.eps = 0.25;
    reference.meta.eps = 0.5;
    CHECK_THROWS_AS(estimate_order(runs, reference), std::invalid_argument);
  }
}

TEST_CASE("self-convergence of the integrator hits the design orders") {
  // Small desk-scale study: gauss2 at three step sizes against a fine
  // reference of the same scheme.
  auto grid = make_grid(1, 32, two_pi);
  CHParams p(1.0, 0.5, 0.0, grid);
  auto phi0 = ScalarField::sampled(
      grid, [](double x, double) { return 0.2 * std::sin(x); });
  const double t_final = 0.1;

  std::vector<TimeSeries> runs;
  for (int steps : {25, 50, 100}) {
    runs.push_back(integrate(phi0, gauss_tableau(2), t_final / steps, steps, p));
  }
  auto reference = integrate(phi0, gauss_tableau(2), t_final / 5000, 5000, p);
  auto est = estimate_order(runs, reference);
  CHECK(est.slope == doctest::Approx(2.0).epsilon(0.1));
  CHECK_FALSE(est.floor_limited);
}

TEST_CASE("verdict formatting is one line per verdict") {
  Verdict a{"alpha", true, 1.0, 2.0, "fine"};
  Verdict b{"beta", false, 3.0, 2.0, "broken"};
  const std::vector<Verdict> vs{a, b};
  auto text = format_verdicts(vs);
  CHECK(text.find("alpha") != std::string::npos);
  CHECK(text.find("PASS") != std::string::npos);
  CHECK(text.find("FAIL") != std::string::npos);
  int lines = 0;
  for (char ch : text) {
    if (ch == '\n') ++lines;
  }
  CHECK(lines == 2);
}
