#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "landuse/core.hpp"
#include "landuse/textprep.hpp"

namespace landuse {

using Ring = std::vector<GeoPoint>;

/// Planar polygon over (lon, lat). Rings are implicitly closed: the first
/// vertex is not repeated at the end.
struct Polygon {
  Ring exterior;
  std::vector<Ring> holes;
};

/// Ray-casting containment. Points on an edge or vertex (of the exterior or
/// of a hole) count as inside. Throws std::invalid_argument for a ring with
/// fewer than 3 vertices.
bool point_in_polygon(GeoPoint p, const Polygon& poly);

struct Block {
  std::string block_id;
  Polygon polygon;
  std::optional<LandUseClass> cadastre_label;
};

/// Study region and its blocks, in file order.
struct BlockMap {
  Polygon region;
  std::vector<Block> blocks;

  const Block* find(const std::string& block_id) const;
};

std::vector<CleanPost> filter_by_region(std::span<const CleanPost> posts, const Polygon& region);

struct BlockAssignment {
  CleanPost post;
  std::string block_id;
};

/// First block in file order containing each post; posts in no block are
/// dropped.
std::vector<BlockAssignment> assign_blocks(std::span<const CleanPost> posts, const BlockMap& blocks);

/// GeoJSON FeatureCollection with one feature whose `role` is "region" and
/// any number of `role: "block"` features carrying `block_id` and optional
/// `cadastre_label` (parent name) / `cadastre_sub`. MultiPolygon blocks become
/// one entry per part, with ids `<block_id>/<part>`.
BlockMap parse_geojson(std::string_view text, const std::string& source = "<geojson>");
BlockMap load_geojson(const std::filesystem::path& path);

/// Ring as GeoJSON positions: [lon, lat] pairs, closed, counter-clockwise
/// when `ccw` is set and clockwise otherwise.
std::vector<std::vector<double>> ring_to_positions(const Ring& ring, bool ccw);

double signed_area(const Ring& ring);

}  // namespace landuse
