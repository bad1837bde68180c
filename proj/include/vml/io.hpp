#pragma once

#include "vml/equilibrium.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace vml {

inline constexpr const char* kVersion = "1.0.0";

// %.17g, with nan / inf spelled out.
std::string fmt17(double x);

// Header row plus one row per sample; all columns must have equal length.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);
void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& columns);

nlohmann::json equilibrium_json(const EquilibriumConfig& cfg);
// FNV-1a over the canonical dump of equilibrium_json, as 16 hex digits.
std::string equilibrium_hash(const EquilibriumConfig& cfg);
// {equilibrium, equilibrium_hash, version, tolerances}
nlohmann::json metadata(const EquilibriumConfig& cfg, const nlohmann::json& tolerances);

void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace vml
