#include "chieq/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "chieq/errors.hpp"

namespace chieq {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "': invalid number '" + value + "'");
  }
  return v;
}

int to_int(const std::string& key, const std::string& value) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("key '" + key + "': invalid integer '" + value + "'");
  }
  return v;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("key '" + key + "': invalid unsigned integer '" + value + "'");
  }
  return v;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> to_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  for (const auto& item : split_list(value)) out.push_back(to_int(key, item));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

}  // namespace

std::vector<std::string> config_keys() {
  return {"dim",
          "n",
          "length",
          "eps",
          "M",
          "C",
          "dt",
          "n_steps",
          "tableau",
          "tol",
          "max_iter",
          "seed",
          "initial",
          "out_dir",
          "conv_t_final",
          "conv_tableaus",
          "conv_steps_gauss2",
          "conv_ref_steps_gauss2",
          "conv_steps_gauss4",
          "conv_ref_steps_gauss4",
          "conv_steps_gauss6",
          "conv_ref_steps_gauss6"};
}

void apply_config_value(RunConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "dim") {
    config.dim = to_int(key, value);
  } else if (key == "n") {
    config.n = to_int(key, value);
  } else if (key == "length") {
    config.length = to_double(key, value);
  } else if (key == "eps") {
    config.eps = to_double(key, value);
  } else if (key == "M") {
    config.mobility = to_double(key, value);
  } else if (key == "C") {
    config.stabilization = to_double(key, value);
  } else if (key == "dt") {
    config.dt = to_double(key, value);
  } else if (key == "n_steps") {
    config.n_steps = to_int(key, value);
  } else if (key == "tableau") {
    config.tableau = value;
  } else if (key == "tol") {
    config.tol = to_double(key, value);
  } else if (key == "max_iter") {
    config.max_iter = to_int(key, value);
  } else if (key == "seed") {
    config.seed = to_u64(key, value);
  } else if (key == "initial") {
    config.initial = InitialCondition::parse(value);
    config.initial_explicit = true;
  } else if (key == "out_dir") {
    config.out_dir = value;
  } else if (key == "conv_t_final") {
    config.conv_t_final = to_double(key, value);
  } else if (key == "conv_tableaus") {
    config.conv_tableaus = split_list(value);
    if (config.conv_tableaus.empty()) {
      throw ConfigError("key 'conv_tableaus': empty list");
    }
  } else if (key == "conv_steps_gauss2") {
    config.conv_steps_gauss2 = to_int_list(key, value);
  } else if (key == "conv_ref_steps_gauss2") {
    config.conv_ref_steps_gauss2 = to_int(key, value);
  } else if (key == "conv_steps_gauss4") {
    config.conv_steps_gauss4 = to_int_list(key, value);
  } else if (key == "conv_ref_steps_gauss4") {
    config.conv_ref_steps_gauss4 = to_int(key, value);
  } else if (key == "conv_steps_gauss6") {
    config.conv_steps_gauss6 = to_int_list(key, value);
  } else if (key == "conv_ref_steps_gauss6") {
    config.conv_ref_steps_gauss6 = to_int(key, value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path.string() + "'");
  }
  RunConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                          ": unterminated section header");
      }
      continue;  // sections only organize the file
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": empty key");
    }
    try {
      apply_config_value(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  return config;
}

std::string format_config(const RunConfig& c) {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  auto int_list = [](const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(v[i]);
    }
    return out;
  };
  auto str_list = [](const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ",";
      out += v[i];
    }
    return out;
  };

  std::string out;
  out += "[grid]\n";
  out += "dim = " + std::to_string(c.dim) + "\n";
  out += "n = " + std::to_string(c.n) + "\n";
  out += "length = " + num(c.length) + "\n";
  out += "\n[model]\n";
  out += "eps = " + num(c.eps) + "\n";
  out += "M = " + num(c.mobility) + "\n";
  out += "C = " + num(c.stabilization) + "\n";
  out += "\n[time]\n";
  out += "dt = " + num(c.dt) + "\n";
  out += "n_steps = " + std::to_string(c.n_steps) + "\n";
  out += "tableau = " + c.tableau + "\n";
  out += "\n[solver]\n";
  out += "tol = " + num(c.tol) + "\n";
  out += "max_iter = " + std::to_string(c.max_iter) + "\n";
  out += "\n[run]\n";
  out += "seed = " + std::to_string(c.seed) + "\n";
  out += "initial = " + c.initial.to_string() + "\n";
  out += "out_dir = " + c.out_dir + "\n";
  out += "\n[convergence]\n";
  out += "conv_t_final = " + num(c.conv_t_final) + "\n";
  out += "conv_tableaus = " + str_list(c.conv_tableaus) + "\n";
  out += "conv_steps_gauss2 = " + int_list(c.conv_steps_gauss2) + "\n";
  out += "conv_ref_steps_gauss2 = " + std::to_string(c.conv_ref_steps_gauss2) + "\n";
  out += "conv_steps_gauss4 = " + int_list(c.conv_steps_gauss4) + "\n";
  out += "conv_ref_steps_gauss4 = " + std::to_string(c.conv_ref_steps_gauss4) + "\n";
  out += "conv_steps_gauss6 = " + int_list(c.conv_steps_gauss6) + "\n";
  out += "conv_ref_steps_gauss6 = " + std::to_string(c.conv_ref_steps_gauss6) + "\n";
  return out;
}

}  // namespace chieq
