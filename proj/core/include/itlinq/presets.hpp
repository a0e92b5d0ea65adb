#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace itlinq {

struct Preset {
  std::string name;
  std::string description;
  nlohmann::json config;
};

// Embedded experiment presets, in listing order.
const std::vector<Preset>& presets();

// nullptr when the name is unknown.
const Preset* find_preset(const std::string& name);

}  // namespace itlinq
