#pragma once

#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "femtosim/analysis.hpp"
#include "femtosim/simulator.hpp"

namespace femtosim {

/// Decimal-point, 17-significant-digit rendering; round-trips any double.
std::string format_g17(double value);

/// Canonical key=value rendering of a config, the input to config_hash.
std::string config_canonical(const SimConfig& config);

/// FNV-1a over the canonical rendering.
std::uint64_t config_hash(const SimConfig& config);

nlohmann::json config_to_json(const SimConfig& config);
SimConfig config_from_json(const nlohmann::json& j);

/// Applies a "key=value" override; throws std::invalid_argument on unknown
/// keys or malformed values.
void apply_override(SimConfig& config, std::string_view key, std::string_view value);

std::string summaries_to_csv(std::span<const SimSummary> rows);
std::string summaries_to_json(std::span<const SimSummary> rows);

std::string theory_to_csv(std::span<const TheoryPoint> rows);
std::string theory_to_json(std::span<const TheoryPoint> rows);

const char* policy_name(CachePolicy policy);
const char* relay_mode_name(RelayMode mode);

}  // namespace femtosim
