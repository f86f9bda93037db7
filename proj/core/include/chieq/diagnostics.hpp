#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chieq/timeseries.hpp"

namespace chieq {

/// Machine-checkable outcome of one trajectory property.
struct Verdict {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Exact q-slaving: passes iff the recorded max-norm residual of
/// q - (phi^2 - 1 - C) stays within kappa_tol at every step.
Verdict check_q_consistency(const TimeSeries& ts, double kappa_tol);

struct DissipationVerdict {
  Verdict monotone;  // every energy increment <= tol * max(1, |E0|)
  Verdict balance;   // every |balance defect| <= tol * max(1, |E0|)
  bool pass() const { return monotone.pass && balance.pass; }
};

/// Original-energy dissipation, checked as an equality (balance) and as
/// monotonicity; `tol` is relative to max(1, |E0|).
DissipationVerdict check_energy_dissipation(const TimeSeries& ts, double tol);

/// |E - F| at every recorded step, relative to max(1, |E0|).
Verdict check_energy_equivalence(const TimeSeries& ts, double tol);

/// Mass drift |m_n - m_0| relative to the domain measure.
Verdict check_mass_conservation(const TimeSeries& ts, double tol);

/// Self-convergence slope with floor detection.
struct OrderEstimate {
  double slope = 0.0;
  bool floor_limited = false;  // some levels sat below the error floor
  int levels_used = 0;         // levels retained for the fit
  double floor = 0.0;
  std::vector<double> dts;     // all levels
  std::vector<double> errors;  // discrete L2 error at final time vs reference
};

/// Least-squares slope of log(error) against log(dt) over >= 3 refinement
/// levels, with errors measured against `reference` at the common final
/// time. Levels whose error sits at or below the floor (default
/// 100 * solver tol * max(1, |phi_ref|_L2)) are excluded from the fit and
/// flagged rather than failed. Throws std::invalid_argument for fewer than
/// three levels, mismatched final times, or mismatched grids/parameters.
OrderEstimate estimate_order(const std::vector<TimeSeries>& runs,
                             const TimeSeries& reference,
                             std::optional<double> floor = std::nullopt);

/// Plain-text verdict block, one line per verdict.
std::string format_verdicts(std::span<const Verdict> verdicts);

}  // namespace chieq
