#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "landuse/features.hpp"
#include "landuse/textprep.hpp"

namespace landuse {

/// Every knob of a run. Loaded from a flat `section.key = value` file and
/// overridable key by key from the command line.
struct RunConfig {
  struct Paths {
    std::filesystem::path posts;
    std::filesystem::path corpus_posts;
    std::filesystem::path corpus_labels;
    std::filesystem::path nonlocation_posts;
    std::filesystem::path geojson;
    std::filesystem::path dictionary;
    std::filesystem::path lexicon;
    std::filesystem::path stoplist;
    std::filesystem::path suggestions;
    std::filesystem::path vocabulary;
    std::filesystem::path model;
  } paths;

  FeatureConfig features;

  struct Classifier {
    double alpha = 1.0;
    double threshold = 0.5;
    int top_i = 50;
    int pos_ngram_min = 2;
    int pos_ngram_max = 3;
  } classifier;

  struct Split {
    double test_fraction = 0.2;
    std::optional<std::uint64_t> seed;
  } split;

  double spell_threshold = SpellResources::kDefaultThreshold;

  struct Eval {
    bool subcategory_report = false;
    bool include_nonclassified = false;
    bool weighted = false;
  } eval;

  /// Keys assigned through `set`, from a file or the command line.
  std::set<std::string> assigned;

  /// Sets one `section.key`. Relative paths resolve against `base_dir`.
  /// Throws ConfigError for unknown keys or unparsable values.
  void set(std::string_view key, std::string_view value, const std::filesystem::path& base_dir = {});

  /// Range checks across modules; throws ConfigError.
  void validate() const;

  ResourcePaths resource_paths() const;

  /// Keys `set` understands, in a stable order.
  static const std::vector<std::string>& keys();
};

/// Parses a config file; relative paths resolve against its directory.
RunConfig load_config(const std::filesystem::path& path);
void parse_config_text(RunConfig& config, std::string_view text, const std::filesystem::path& base_dir,
                       const std::string& source = "<config>");

}  // namespace landuse
