#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wsnsim/config.hpp"

namespace wsnsim {

/// Names accepted by apply_preset.
const std::vector<std::string>& preset_names();

/// Overlays a named scenario (n50, n100, n150) onto `config`. Returns false
/// for an unknown name.
bool apply_preset(std::string_view name, SimConfig& config);

/// Overlays the keys present in `json` onto `config`. Keys mirror the
/// SimConfig field names; `radio` and `harvest` are nested objects, and
/// positions are [x, y] arrays. Unknown keys or mistyped values throw
/// InvalidConfig listing every problem.
void apply_json(const nlohmann::json& json, SimConfig& config);

/// Reads a JSON file and overlays it. Throws IoError if unreadable.
void apply_json_file(const std::filesystem::path& path, SimConfig& config);

nlohmann::json to_json(const SimConfig& config);

std::string_view to_string(TourSolver solver) noexcept;
std::optional<TourSolver> parse_tour_solver(std::string_view text) noexcept;

}  // namespace wsnsim
