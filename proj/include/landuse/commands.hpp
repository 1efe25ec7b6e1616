#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "landuse/classifier.hpp"
#include "landuse/config.hpp"
#include "landuse/eval.hpp"
#include "landuse/geo.hpp"
#include "landuse/ingest.hpp"
#include "landuse/textprep.hpp"

namespace landuse {

// ---- file formats -------------------------------------------------------

/// CleanPost as a JSONL row; `block_id` is written when non-empty.
void write_clean_post(std::ostream& out, const CleanPost& post, const std::string& block_id = {});
void write_clean_posts(const std::filesystem::path& path, std::span<const CleanPost> posts);
void write_block_assignments(const std::filesystem::path& path, std::span<const BlockAssignment> rows);

struct CleanRow {
  CleanPost post;
  std::string block_id;
};
std::vector<CleanRow> read_clean_posts(const std::filesystem::path& path);

/// One classified post, as exported for mapping.
struct LabeledRow {
  std::string id;
  LandUseClass label = LandUseClass::non_classified();
  std::optional<SubClass> sub_label;
  double confidence = 0.0;
  GeoPoint point;
  std::string block_id;
};
void write_labeled_rows(const std::filesystem::path& path, std::span<const LabeledRow> rows);
std::vector<LabeledRow> read_labeled_rows(const std::filesystem::path& path);

// ---- training -----------------------------------------------------------

/// One evaluated feature configuration.
struct EvaluationRow {
  std::string name;
  FeatureConfig config;
  MetricsReport metrics;
  std::vector<std::string> classes;
  std::vector<std::vector<long>> confusion;
};

/// The ten feature configurations of the comparison table, derived from
/// `base` (which supplies PoS and min_df settings).
std::vector<std::pair<std::string, FeatureConfig>> sweep_configs(const FeatureConfig& base);

struct TrainedPipeline {
  MnbModel model;
  PosSequenceFilter filter;
  std::vector<EvaluationRow> rows;
  std::size_t corpus_size = 0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::vector<std::string> warnings;
};

/// Loads and cleans the labeled corpus, splits it, trains MNB on the train
/// part and evaluates on the test part (without the location prefilter).
/// With `sweep`, every comparison configuration is evaluated as well; the
/// returned model always uses `config.features`.
TrainedPipeline train_from_config(const RunConfig& config, const TextResources& resources, bool sweep);

/// Scores MNB predictions on already cleaned test documents.
EvaluationRow evaluate(const MnbModel& model, std::span<const CleanPost> docs, std::span<const LandUseClass> truth,
                       const RunConfig::Eval& options, std::string name);

std::string report_to_json(const TrainedPipeline& trained, const RunConfig& config);
std::string report_to_table(std::span<const EvaluationRow> rows);

// ---- commands -----------------------------------------------------------

struct IngestSummary {
  std::size_t loaded = 0;
  std::size_t retained = 0;
  std::size_t removed = 0;
  std::vector<std::string> warnings;
};
IngestSummary cmd_ingest(const std::filesystem::path& input, const std::filesystem::path& output);

std::size_t cmd_preprocess(const RunConfig& config, const std::filesystem::path& input,
                           const std::filesystem::path& output);

struct GeofilterSummary {
  std::size_t input = 0;
  std::size_t in_region = 0;
  std::size_t in_blocks = 0;
};
GeofilterSummary cmd_geofilter(const RunConfig& config, const std::filesystem::path& input,
                               const std::filesystem::path& output);

TrainedPipeline cmd_train(const RunConfig& config, const std::filesystem::path& model_out,
                          const std::filesystem::path& report_out, bool sweep);

/// Counts per parent label (NonClassified included), in label order.
using LabelCounts = std::map<ParentClass, std::size_t>;
std::vector<LabeledRow> classify_rows(const MnbModel& model, const PosSequenceFilter& filter,
                                      std::span<const CleanRow> rows);
LabelCounts count_labels(std::span<const LabeledRow> rows);
LabelCounts cmd_classify(const std::filesystem::path& input, const std::filesystem::path& model_path,
                         const std::filesystem::path& output);

/// Point features for the posts plus one polygon per block with its
/// cadastre label, majority prediction and post count.
std::string export_geojson(std::span<const LabeledRow> rows, const BlockMap& blocks);
std::size_t cmd_export_geojson(const std::filesystem::path& labeled, const std::filesystem::path& geojson,
                               const std::filesystem::path& output);

struct RunSummary {
  IngestSummary ingest;
  std::size_t preprocessed = 0;
  GeofilterSummary geofilter;
  LabelCounts labels;
  std::vector<EvaluationRow> evaluation;
};
/// Full pipeline into `workdir`: ingest, preprocess, geofilter, train,
/// classify and export.
RunSummary cmd_run(const RunConfig& config, const std::filesystem::path& workdir, bool sweep);

}  // namespace landuse
