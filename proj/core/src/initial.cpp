#include "chieq/initial.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "chieq/errors.hpp"

namespace chieq {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto pos = text.find(sep);
    parts.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return parts;
}

double parse_double(std::string_view text, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("invalid " + what + ": '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_u64(std::string_view text, const std::string& what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("invalid " + what + ": '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

InitialCondition InitialCondition::parse(std::string_view text) {
  const auto parts = split(text, ':');
  InitialCondition ic;
  if (parts.empty()) throw ConfigError("empty initial condition");
  const std::string_view kind = parts[0];
  if (kind == "constant") {
    if (parts.size() != 2) {
      throw ConfigError("constant initial condition wants constant:<value>");
    }
    ic.kind = Kind::Constant;
    ic.value = parse_double(parts[1], "constant value");
  } else if (kind == "sine") {
    if (parts.size() != 3) {
      throw ConfigError("sine initial condition wants sine:<amplitude>:<mode>");
    }
    ic.kind = Kind::Sine;
    ic.amplitude = parse_double(parts[1], "sine amplitude");
    const double mode = parse_double(parts[2], "sine mode");
    if (mode < 1.0 || mode != std::floor(mode)) {
      throw ConfigError("sine mode must be a positive integer");
    }
    ic.mode = static_cast<int>(mode);
  } else if (kind == "spinodal") {
    if (parts.size() != 2 && parts.size() != 3) {
      throw ConfigError("spinodal initial condition wants spinodal:<amplitude>[:<seed>]");
    }
    ic.kind = Kind::Spinodal;
    ic.amplitude = parse_double(parts[1], "spinodal amplitude");
    if (parts.size() == 3) ic.seed = parse_u64(parts[2], "spinodal seed");
  } else {
    throw ConfigError("unknown initial condition kind '" + std::string(kind) + "'");
  }
  return ic;
}

std::string InitialCondition::to_string() const {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return std::string(buf);
  };
  switch (kind) {
    case Kind::Constant:
      return "constant:" + num(value);
    case Kind::Sine:
      return "sine:" + num(amplitude) + ":" + std::to_string(mode);
    case Kind::Spinodal: {
      std::string out = "spinodal:" + num(amplitude);
      if (seed) out += ":" + std::to_string(*seed);
      return out;
    }
  }
  return {};
}

ScalarField make_initial_field(GridPtr grid, const InitialCondition& ic,
                               std::uint64_t run_seed) {
  switch (ic.kind) {
    case InitialCondition::Kind::Constant: {
      std::vector<double> values(grid->total_points(), ic.value);
      return ScalarField(std::move(grid), std::move(values));
    }
    case InitialCondition::Kind::Sine: {
      const double wavenumber =
          2.0 * std::numbers::pi * ic.mode / grid->length();
      const double amplitude = ic.amplitude;
      if (grid->dim() == 1) {
        return ScalarField::sampled(std::move(grid), [=](double x, double) {
          return amplitude * std::sin(wavenumber * x);
        });
      }
      return ScalarField::sampled(std::move(grid), [=](double x, double y) {
        return amplitude * std::sin(wavenumber * x) * std::sin(wavenumber * y);
      });
    }
    case InitialCondition::Kind::Spinodal: {
      std::mt19937_64 gen(ic.seed.value_or(run_seed));
      std::vector<double> values(grid->total_points());
      for (double& v : values) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        v = ic.amplitude * (2.0 * u - 1.0);
      }
      return ScalarField(std::move(grid), std::move(values));
    }
  }
  throw ConfigError("unhandled initial condition kind");
}

}  // namespace chieq
