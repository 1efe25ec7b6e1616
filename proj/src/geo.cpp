#include "landuse/geo.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace landuse {

using nlohmann::json;

namespace {

enum class Location { Outside, Inside, Boundary };

bool on_segment(GeoPoint p, GeoPoint a, GeoPoint b) {
  const double cross = (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon);
  if (cross != 0.0) return false;
  return p.lon >= std::min(a.lon, b.lon) && p.lon <= std::max(a.lon, b.lon) &&
         p.lat >= std::min(a.lat, b.lat) && p.lat <= std::max(a.lat, b.lat);
}

Location locate(GeoPoint p, const Ring& ring) {
  if (ring.size() < 3) throw std::invalid_argument("polygon ring needs at least 3 vertices");
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const GeoPoint& a = ring[i];
    const GeoPoint& b = ring[j];
    if (on_segment(p, a, b)) return Location::Boundary;
    if ((a.lat > p.lat) != (b.lat > p.lat)) {
      const double x = a.lon + (p.lat - a.lat) * (b.lon - a.lon) / (b.lat - a.lat);
      if (p.lon < x) inside = !inside;
    }
  }
  return inside ? Location::Inside : Location::Outside;
}

std::string feature_loc(const std::string& source, std::size_t index) {
  return source + ": feature " + std::to_string(index);
}

Ring parse_ring(const json& positions, const std::string& loc) {
  if (!positions.is_array()) throw InputError(loc + ": ring must be an array of positions");
  Ring ring;
  for (const auto& pos : positions) {
    if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
      throw InputError(loc + ": malformed position");
    }
    GeoPoint p{pos[1].get<double>(), pos[0].get<double>()};
    if (!p.valid()) throw InputError(loc + ": position out of range");
    ring.push_back(p);
  }
  if (ring.size() >= 2 && ring.front() == ring.back()) ring.pop_back();
  if (ring.size() < 3) throw InputError(loc + ": ring has fewer than 3 distinct vertices");
  return ring;
}

Polygon parse_polygon(const json& rings, const std::string& loc) {
  if (!rings.is_array() || rings.empty()) throw InputError(loc + ": polygon needs at least one ring");
  Polygon poly;
  poly.exterior = parse_ring(rings[0], loc);
  for (std::size_t i = 1; i < rings.size(); ++i) poly.holes.push_back(parse_ring(rings[i], loc));
  return poly;
}

std::vector<Polygon> parse_geometry(const json& geometry, const std::string& loc) {
  if (!geometry.is_object()) throw InputError(loc + ": missing geometry");
  const auto type = geometry.value("type", std::string());
  const auto coords = geometry.find("coordinates");
  if (coords == geometry.end()) throw InputError(loc + ": geometry has no coordinates");
  if (type == "Polygon") return {parse_polygon(*coords, loc)};
  if (type == "MultiPolygon") {
    if (!coords->is_array() || coords->empty()) throw InputError(loc + ": empty MultiPolygon");
    std::vector<Polygon> parts;
    for (const auto& rings : *coords) parts.push_back(parse_polygon(rings, loc));
    return parts;
  }
  throw InputError(loc + ": unsupported geometry type '" + type + "'");
}

}  // namespace

bool point_in_polygon(GeoPoint p, const Polygon& poly) {
  switch (locate(p, poly.exterior)) {
    case Location::Outside: return false;
    case Location::Boundary: return true;
    case Location::Inside: break;
  }
  for (const auto& hole : poly.holes) {
    if (locate(p, hole) == Location::Inside) return false;
  }
  return true;
}

const Block* BlockMap::find(const std::string& block_id) const {
  for (const auto& b : blocks) {
    if (b.block_id == block_id) return &b;
  }
  return nullptr;
}

std::vector<CleanPost> filter_by_region(std::span<const CleanPost> posts, const Polygon& region) {
  std::vector<CleanPost> kept;
  for (const auto& post : posts) {
    if (point_in_polygon(post.point, region)) kept.push_back(post);
  }
  return kept;
}

std::vector<BlockAssignment> assign_blocks(std::span<const CleanPost> posts, const BlockMap& blocks) {
  std::vector<BlockAssignment> out;
  for (const auto& post : posts) {
    for (const auto& block : blocks.blocks) {
      if (point_in_polygon(post.point, block.polygon)) {
        out.push_back({post, block.block_id});
        break;
      }
    }
  }
  return out;
}

BlockMap parse_geojson(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": malformed JSON (" + e.what() + ")");
  }
  if (!doc.is_object() || doc.value("type", std::string()) != "FeatureCollection") {
    throw InputError(source + ": expected a GeoJSON FeatureCollection");
  }
  const auto features = doc.find("features");
  if (features == doc.end() || !features->is_array()) throw InputError(source + ": FeatureCollection has no features array");

  BlockMap map;
  bool have_region = false;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < features->size(); ++i) {
    const json& f = (*features)[i];
    const std::string loc = feature_loc(source, i);
    if (!f.is_object()) throw InputError(loc + ": not an object");
    const json props = f.contains("properties") && f["properties"].is_object() ? f["properties"] : json::object();
    const std::string role = props.value("role", std::string());
    if (role == "region") {
      if (have_region) throw InputError(loc + ": more than one region feature");
      auto parts = parse_geometry(f.value("geometry", json()), loc);
      if (parts.size() != 1) throw InputError(loc + ": region must be a single polygon");
      map.region = std::move(parts.front());
      have_region = true;
    } else if (role == "block") {
      if (!props.contains("block_id") || !props["block_id"].is_string() || props["block_id"].get<std::string>().empty()) {
        throw InputError(loc + ": block feature without block_id");
      }
      const std::string id = props["block_id"].get<std::string>();
      if (!ids.insert(id).second) throw InputError(loc + ": duplicate block_id '" + id + "'");

      std::optional<LandUseClass> label;
      if (auto it = props.find("cadastre_label"); it != props.end() && !it->is_null()) {
        auto parent = it->is_string() ? parse_parent(it->get<std::string>()) : std::nullopt;
        if (!parent) throw InputError(loc + ": unknown cadastre_label");
        std::optional<SubClass> sub;
        if (auto s = props.find("cadastre_sub"); s != props.end() && !s->is_null()) {
          sub = s->is_string() ? parse_sub(s->get<std::string>()) : std::nullopt;
          if (!sub) throw InputError(loc + ": unknown cadastre_sub");
        }
        try {
          label = LandUseClass::make(*parent, sub);
        } catch (const InputError& e) {
          throw InputError(loc + ": " + e.what());
        }
      }

      auto parts = parse_geometry(f.value("geometry", json()), loc);
      if (parts.size() == 1) {
        map.blocks.push_back({id, std::move(parts.front()), label});
      } else {
        for (std::size_t k = 0; k < parts.size(); ++k) {
          map.blocks.push_back({id + "/" + std::to_string(k), std::move(parts[k]), label});
        }
      }
    } else {
      throw InputError(loc + ": properties.role must be \"region\" or \"block\"");
    }
  }
  if (!have_region) throw InputError(source + ": no region feature");
  return map;
}

BlockMap load_geojson(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_geojson(buf.str(), path.string());
}

double signed_area(const Ring& ring) {
  double twice = 0.0;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    twice += ring[j].lon * ring[i].lat - ring[i].lon * ring[j].lat;
  }
  return twice / 2.0;
}

std::vector<std::vector<double>> ring_to_positions(const Ring& ring, bool ccw) {
  std::vector<std::vector<double>> out;
  out.reserve(ring.size() + 1);
  const bool flip = (signed_area(ring) > 0.0) != ccw;
  for (std::size_t k = 0; k < ring.size(); ++k) {
    const GeoPoint& p = flip ? ring[(ring.size() - k) % ring.size()] : ring[k];
    out.push_back({p.lon, p.lat});
  }
  out.push_back(out.front());
  return out;
}

}  // namespace landuse
