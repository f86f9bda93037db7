#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "chieq/initial.hpp"

namespace chieq {

/// Run configuration shared by the CLI commands. Parsed from flat
/// key = value text; [section] headers are accepted for organization but
/// keys live in one namespace. Unknown keys are an error.
struct RunConfig {
  int dim = 1;
  int n = 128;
  double length = 6.283185307179586;  // 2*pi
  double eps = 0.5;
  double mobility = 1.0;
  double stabilization = 0.0;
  double dt = 1e-3;
  int n_steps = 1000;
  std::string tableau = "gauss4";
  double tol = 1e-12;
  int max_iter = 200;
  std::uint64_t seed = 1;
  InitialCondition initial{};     // spinodal:0.05, seeded by `seed`
  bool initial_explicit = false;  // true once `initial` was assigned
  std::string out_dir = "out";

  // Convergence-study knobs: step-count ladders at a fixed final time, so
  // every level lands on conv_t_final exactly.
  double conv_t_final = 0.1;
  std::vector<std::string> conv_tableaus = {"gauss2", "gauss4", "gauss6"};
  std::vector<int> conv_steps_gauss2 = {25, 50, 100};
  int conv_ref_steps_gauss2 = 10000;
  std::vector<int> conv_steps_gauss4 = {5, 7, 10};
  int conv_ref_steps_gauss4 = 2000;
  std::vector<int> conv_steps_gauss6 = {3, 4, 6, 9};
  int conv_ref_steps_gauss6 = 200;
};

/// Keys understood by the parser and by CLI overrides.
std::vector<std::string> config_keys();

/// Applies one key = value assignment. Throws ConfigError for unknown keys
/// or unparsable values.
void apply_config_value(RunConfig& config, const std::string& key,
                        const std::string& value);

/// Parses a config file. Throws ConfigError on I/O or syntax problems.
RunConfig parse_config_file(const std::filesystem::path& path);

/// The config serialized back to parseable key = value text.
std::string format_config(const RunConfig& config);

}  // namespace chieq
