#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "chieq/field.hpp"

namespace chieq {

/// Initial-condition descriptor, parsed from strings of the form
///   constant:<value>
///   sine:<amplitude>:<mode>
///   spinodal:<amplitude>[:<seed>]
/// A spinodal descriptor without an explicit seed uses the run seed.
struct InitialCondition {
  enum class Kind { Constant, Sine, Spinodal };

  Kind kind = Kind::Spinodal;
  double value = 0.0;      // constant level
  double amplitude = 0.05; // sine / spinodal
  int mode = 1;            // sine wavenumber
  std::optional<std::uint64_t> seed;

  static InitialCondition parse(std::string_view text);
  std::string to_string() const;
};

/// Samples the initial condition on `grid`. Spinodal data draws iid
/// uniform perturbations in [-amplitude, amplitude) from mt19937_64 with
/// the 53-bit mantissa mapping u = (g() >> 11) * 2^-53, so trajectories
/// reproduce across platforms for a given seed.
ScalarField make_initial_field(GridPtr grid, const InitialCondition& ic,
                               std::uint64_t run_seed);

}  // namespace chieq
