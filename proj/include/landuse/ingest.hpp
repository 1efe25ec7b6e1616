#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "landuse/core.hpp"

namespace landuse {

/// One geo-tagged message as captured from the social network.
struct RawPost {
  std::string id;
  std::string user_id;
  std::string text;
  std::string timestamp;
  double lat = 0.0;
  double lon = 0.0;
  std::optional<std::string> lang;

  GeoPoint point() const { return {lat, lon}; }
  bool operator==(const RawPost&) const = default;
};

struct LabeledPost {
  RawPost post;
  LandUseClass label;
};

/// Records parsed from a JSONL stream plus the non-fatal problems found
/// along the way (rejected coordinates, over-long texts).
struct LoadedPosts {
  std::vector<RawPost> posts;
  std::vector<std::string> warnings;
};

/// Parses JSONL posts. A malformed line throws InputError naming the line;
/// an out-of-range coordinate only drops that record with a warning.
LoadedPosts parse_posts(std::istream& in, const std::string& source = "<stream>");
LoadedPosts load_posts(const std::filesystem::path& path);

void write_post(std::ostream& out, const RawPost& post);
void write_posts(const std::filesystem::path& path, std::span<const RawPost> posts);

/// Drops blanks, single-token texts, texts made only of digits and
/// punctuation, and repeated texts (trimmed, case-insensitive). Keeps first
/// occurrences in order.
std::vector<RawPost> dedupe_and_filter(std::span<const RawPost> posts);

/// Label file: JSONL with keys id, parent and (optional) sub.
std::map<std::string, LandUseClass> parse_labels(std::istream& in, const std::string& source = "<stream>");
std::map<std::string, LandUseClass> load_labels(const std::filesystem::path& path);

/// Pairs posts with their labels. Posts without a label are skipped and
/// reported in `warnings`. Training labels must carry a subcategory.
std::vector<LabeledPost> attach_labels(std::span<const RawPost> posts,
                                       const std::map<std::string, LandUseClass>& labels,
                                       std::vector<std::string>& warnings);

struct CorpusSplit {
  std::vector<LabeledPost> train;
  std::vector<LabeledPost> test;
};

/// Stratified by subcategory. Each subcategory sends round(fraction * n)
/// members to test, clamped to [1, n - 1]. Both halves keep input order.
CorpusSplit split_corpus(std::span<const LabeledPost> data, double test_fraction, std::uint64_t seed);

}  // namespace landuse
