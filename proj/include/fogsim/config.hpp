#pragma once
// Flat `key = value` configuration files. The key set mirrors the simulator's
// parameter list one to one; unknown keys are rejected, `#` starts a comment,
// and an empty file yields the built-in defaults. Range violations are
// reported with the name of the violated invariant, malformed lines with
// their line number.

#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fogsim/scenarios.hpp"
#include "fogsim/text.hpp"

namespace fogsim {

struct ConfigError : std::runtime_error {
  int line;
  ConfigError(int line_no, const std::string& message)
      : std::runtime_error("config line " + std::to_string(line_no) + ": " + message),
        line(line_no) {}
};

namespace config_detail {

struct KeyBinding {
  double SimConfig::*field = nullptr;
  std::uint32_t SimConfig::*int_field = nullptr;
  const char* range_help = "";
  bool (*in_range)(double) = nullptr;
};

inline const std::map<std::string, KeyBinding, std::less<>>& key_table() {
  auto positive = [](double v) { return v > 0.0; };
  auto ge_one = [](double v) { return v >= 1.0; };
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  auto unit_open = [](double v) { return v >= 0.0 && v < 1.0; };
  auto exponent = [](double v) { return v > 0.0 && v <= 2.0; };
  static const std::map<std::string, KeyBinding, std::less<>> table = {
      {"M", {nullptr, &SimConfig::fog_count, "integer >= 1", ge_one}},
      {"L_ba_mbps", {&SimConfig::backhaul_mbps, nullptr, "> 0", positive}},
      {"L_wi_mbps", {&SimConfig::wireless_mbps, nullptr, "> 0", positive}},
      {"C_vr_ghz", {&SimConfig::device_cpu_ghz, nullptr, "> 0", positive}},
      {"C_fg_ghz", {&SimConfig::fog_cpu_ghz, nullptr, "> 0", positive}},
      {"C_cl_ghz", {&SimConfig::cloud_cpu_ghz, nullptr, "> 0", positive}},
      {"T_max_ms", {&SimConfig::horizon_ms, nullptr, "> 0", positive}},
      {"T_ms", {&SimConfig::dwell_ms, nullptr, "> 0", positive}},
      {"mu_tasks", {&SimConfig::task_mean, nullptr, ">= 1", ge_one}},
      {"alpha", {&SimConfig::alpha, nullptr, "in (0, 2]", exponent}},
      {"mu_co_gcycles", {&SimConfig::compute_mean_gcycles, nullptr, "> 0", positive}},
      {"alpha_co", {&SimConfig::compute_exponent, nullptr, "in (0, 2]", exponent}},
      {"mu_de_mbit", {&SimConfig::delivery_mean_mbit, nullptr, "> 0", positive}},
      {"alpha_de", {&SimConfig::delivery_exponent, nullptr, "in (0, 2]", exponent}},
      {"mu_dl_ms", {&SimConfig::deadline_mean_ms, nullptr, "> 0", positive}},
      {"alpha_dl", {&SimConfig::deadline_exponent, nullptr, "in (0, 2]", exponent}},
      {"catalog_n", {nullptr, &SimConfig::catalog_size, "integer >= 1", ge_one}},
      {"pareto_ratio", {&SimConfig::pareto_ratio, nullptr, ">= 1", ge_one}},
      {"cache_s", {&SimConfig::cache_fraction, nullptr, "in [0, 1]", unit}},
      {"congestion", {&SimConfig::congestion, nullptr, "in [0, 1)", unit_open}},
      {"p_local", {&SimConfig::p_local, nullptr, "probability in [0, 1]", unit}},
      {"p_fog", {&SimConfig::p_fog, nullptr, "probability in [0, 1]", unit}},
      {"p_cloud", {&SimConfig::p_cloud, nullptr, "probability in [0, 1]", unit}},
  };
  return table;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace config_detail

// Parses overrides on top of the built-in defaults. Cross-field invariants
// (the placement split summing to 1, dwell <= horizon) are checked once all
// lines are applied.
inline SimConfig parse_config(std::string_view text) {
  using config_detail::key_table;
  using config_detail::trim;

  SimConfig config;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(line_no, "expected `key = value`");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key before `=`");
    if (value.empty()) throw ConfigError(line_no, "missing value after `=`");

    const auto it = key_table().find(key);
    if (it == key_table().end())
      throw ConfigError(line_no, "unknown key `" + std::string(key) + "`");

    char* end = nullptr;
    const std::string value_str(value);
    const double v = std::strtod(value_str.c_str(), &end);
    if (end != value_str.c_str() + value_str.size() || !std::isfinite(v))
      throw ConfigError(line_no, "`" + value_str + "` is not a number");

    const config_detail::KeyBinding& bind = it->second;
    if (!bind.in_range(v))
      throw ConfigError(line_no, "`" + std::string(key) + "` must be " +
                                     bind.range_help);
    if (bind.int_field) {
      if (v != std::floor(v))
        throw ConfigError(line_no, "`" + std::string(key) + "` must be an integer");
      config.*(bind.int_field) = static_cast<std::uint32_t>(v);
    } else {
      config.*(bind.field) = v;
    }
  }

  config.validate();  // names the violated invariant
  return config;
}

// One `key = value` line per key, in the key table's order. Values use %.17g
// so serialize -> parse reproduces the configuration exactly.
inline std::string serialize_config(const SimConfig& config) {
  std::string out;
  auto emit = [&out](const std::string& key, double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += key + " = " + buf + "\n";
  };
  for (const auto& [key, bind] : config_detail::key_table()) {
    if (bind.int_field)
      out += key + " = " + std::to_string(config.*(bind.int_field)) + "\n";
    else
      emit(key, config.*(bind.field));
  }
  return out;
}

}  // namespace fogsim
