#include "sdra/modal_io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "sdra/errors.hpp"

namespace sdra {

namespace {

void reject_unknown_keys(const nlohmann::json& doc, const std::set<std::string>& allowed,
                         const char* what) {
  if (!doc.is_object()) throw DomainError(std::string(what) + " must be a JSON object");
  for (const auto& item : doc.items()) {
    if (!allowed.contains(item.key())) {
      throw DomainError(std::string(what) + ": unknown key '" + item.key() + "'");
    }
  }
}

double number_at(const nlohmann::json& doc, const char* key, const char* what) {
  if (!doc.contains(key)) throw DomainError(std::string(what) + ": missing key '" + key + "'");
  const auto& value = doc.at(key);
  if (!value.is_number()) {
    throw DomainError(std::string(what) + ": key '" + key + "' must be a number");
  }
  return value.get<double>();
}

int integer_at(const nlohmann::json& doc, const char* key, const char* what) {
  const double value = number_at(doc, key, what);
  if (value != std::floor(value)) {
    throw DomainError(std::string(what) + ": key '" + key + "' must be an integer");
  }
  return static_cast<int>(value);
}

int parse_int(const std::string& text, const std::string& field) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw DomainError("mode field '" + field + "' expects an integer, got '" + text + "'");
  }
  return value;
}

double parse_double(const std::string& text, const std::string& field) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw DomainError("mode field '" + field + "' expects a number, got '" + text + "'");
  }
  return value;
}

}  // namespace

SectorGeometry geometry_from_json(const nlohmann::json& doc) {
  constexpr const char* what = "geometry";
  reject_unknown_keys(doc, {"radius_mm", "height_mm", "sector_deg", "eps_r"}, what);
  return {number_at(doc, "radius_mm", what) * 1e-3, number_at(doc, "height_mm", what) * 1e-3,
          number_at(doc, "sector_deg", what) * std::numbers::pi / 180.0,
          number_at(doc, "eps_r", what)};
}

nlohmann::json geometry_to_json(const SectorGeometry& geom) {
  return {{"radius_mm", geom.radius() * 1e3},
          {"height_mm", geom.height() * 1e3},
          {"sector_deg", geom.sector_angle() * 180.0 / std::numbers::pi},
          {"eps_r", geom.eps_r()}};
}

SectorGeometry load_geometry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open geometry file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse geometry file " + path.string() + ": " + e.what());
  }
  return geometry_from_json(doc);
}

ModeSpec mode_from_json(const nlohmann::json& doc) {
  constexpr const char* what = "mode";
  reject_unknown_keys(doc, {"family", "m", "v", "n", "p"}, what);
  if (!doc.contains("family") || !doc.at("family").is_string()) {
    throw DomainError("mode: 'family' must be the string TE or EH");
  }
  const ModeFamily family = parse_family(doc.at("family").get<std::string>());
  const int n = integer_at(doc, "n", what);
  const int p = doc.contains("p") ? integer_at(doc, "p", what) : 0;
  if (doc.contains("v")) return ModeSpec::with_order(family, number_at(doc, "v", what), n, p);
  if (doc.contains("m")) return ModeSpec::from_index(family, integer_at(doc, "m", what), n, p);
  throw DomainError("mode: one of 'm' or 'v' is required");
}

nlohmann::json mode_to_json(const ModeSpec& mode) {
  nlohmann::json doc = {{"family", to_string(mode.family())}, {"n", mode.n()}, {"p", mode.p()}};
  if (auto m = mode.m()) {
    doc["m"] = *m;
  } else {
    doc["v"] = std::get<ExplicitOrder>(mode.source()).v;
  }
  return doc;
}

ModeSpec parse_mode(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw DomainError("mode '" + text + "' must look like FAMILY:m=..,n=..,p=..");
  }
  const ModeFamily family = parse_family(text.substr(0, colon));
  std::optional<int> m;
  std::optional<double> v;
  std::optional<int> n;
  int p = 0;

  std::size_t pos = colon + 1;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("mode field '" + item + "' lacks '='");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "m") {
      m = parse_int(value, key);
    } else if (key == "v") {
      v = parse_double(value, key);
    } else if (key == "n") {
      n = parse_int(value, key);
    } else if (key == "p") {
      p = parse_int(value, key);
    } else {
      throw DomainError("unknown mode field '" + key + "' in '" + text + "'");
    }
    pos = comma + 1;
  }
  if (!n) throw DomainError("mode '" + text + "' is missing n=");
  if (v) return ModeSpec::with_order(family, *v, *n, p);
  if (m) return ModeSpec::from_index(family, *m, *n, p);
  throw DomainError("mode '" + text + "' needs m= or v=");
}

}  // namespace sdra
