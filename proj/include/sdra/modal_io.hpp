#pragma once

// Geometry and mode documents.
//
// Geometry JSON (all four keys required, no others allowed):
//   {"radius_mm": 12, "height_mm": 2.54, "sector_deg": 90, "eps_r": 12.85}
//
// Mode JSON: {"family": "TE"|"EH", "m": int | "v": number, "n": int, "p": int}
// Mode string: "TE:m=1,n=1,p=0" or "EH:v=1,n=1,p=0"; p defaults to 0.
// When both m and v are present, v wins.

#include <filesystem>
#include <json.hpp>
#include <string>

#include "sdra/modal.hpp"

namespace sdra {

SectorGeometry geometry_from_json(const nlohmann::json& doc);
nlohmann::json geometry_to_json(const SectorGeometry& geom);
SectorGeometry load_geometry(const std::filesystem::path& path);

ModeSpec mode_from_json(const nlohmann::json& doc);
nlohmann::json mode_to_json(const ModeSpec& mode);
ModeSpec parse_mode(const std::string& text);

}  // namespace sdra
