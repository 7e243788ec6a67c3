#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drisim/simulate.hpp"

namespace drisim {

/// Parses the flat key=value run configuration. Unknown keys and malformed
/// values are rejected with the offending key and line number. Values use
/// dB where the key name says so; conversion to linear ratios happens
/// inside the sweep.
SweepConfig parse_config_text(const std::string& text,
                              const std::string& source_name = "<config>");

SweepConfig parse_config_file(const std::string& path);

/// Canonical serialization: every key in a fixed order with fully resolved
/// values. parse_config_text(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const SweepConfig& config);

/// Settings for the optimizer property suite (the `appendix-props` preset).
struct PropsConfig {
  int instances = 1000;
  std::vector<int> m_list = {1, 2, 4, 8, 16};
  std::uint64_t seed = 1;
  double slack = 1e-9;
};

enum class PresetKind { Sweep, Props };

struct Preset {
  PresetKind kind;
  std::string config_text;
};

std::vector<std::string> preset_names();
std::optional<Preset> find_preset(const std::string& name);

PropsConfig parse_props_text(const std::string& text,
                             const std::string& source_name = "<config>");

}  // namespace drisim
