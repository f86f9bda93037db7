#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include "chieq/diagnostics.hpp"
#include "chieq/field.hpp"
#include "chieq/timeseries.hpp"

namespace chieq {

/// Shortest round-trippable decimal form of v; deterministic.
std::string format_double(double v);

/// CSV with header step,t,E,F,q_residual_inf,mass,balance_defect,iters.
void write_timeseries_csv(std::ostream& os, const TimeSeries& ts);
void write_timeseries_csv(const std::filesystem::path& path, const TimeSeries& ts);

/// Grid dump with header x,phi (1D) or x,y,phi (2D), one row per point.
void write_field_csv(const std::filesystem::path& path, const ScalarField& f);

/// Machine-readable run summary: metadata, status, and verdicts.
void write_verdicts_json(const std::filesystem::path& path, const TimeSeries& ts,
                         std::span<const Verdict> verdicts);

}  // namespace chieq
