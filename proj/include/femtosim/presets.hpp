#pragma once

#include <string_view>
#include <vector>

#include "femtosim/simulator.hpp"

namespace femtosim {

struct Preset {
  SimConfig config;
  std::vector<double> sweep_betas;
};

/// Named experiment presets: "fig3" (n = 2500 cache-size sweep, uncapped
/// chain measurement with theory overlay) and "smoke" (small geometric run
/// for CI). Throws on unknown names.
Preset preset(std::string_view name);

}  // namespace femtosim
