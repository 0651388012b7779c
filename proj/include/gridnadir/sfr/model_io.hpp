#pragma once

#include <filesystem>
#include <string>

#include "gridnadir/sfr/units.hpp"

// vendored nlohmann/json
#include "json.hpp"

namespace gridnadir::sfr {

AreaDynamicModel area_model_from_json(const nlohmann::json& j);
nlohmann::ordered_json area_model_to_json(const AreaDynamicModel& m);

AreaDynamicModel load_area_model(const std::filesystem::path& file);

/// Two-column CSV: time_s, delta_f_hz (one header line).
void write_trace_csv(const FrequencyTrace& trace, const std::filesystem::path& file);

}  // namespace gridnadir::sfr
