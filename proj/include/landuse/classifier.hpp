#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "landuse/core.hpp"
#include "landuse/features.hpp"

namespace landuse {

/// Multinomial Naive Bayes over subcategories.
struct MnbModel {
  std::vector<SubClass> classes;
  std::vector<double> log_prior;
  /// classes x vocabulary, log P(term | class).
  std::vector<std::vector<double>> log_likelihood;
  /// Per class, the log-likelihood of a term never seen with that class.
  std::vector<double> log_unseen;
  double alpha = 1.0;
  double threshold = 0.5;
  Vocabulary vocab;
  FeatureConfig config;
};

struct TrainingExample {
  FeatureVector features;
  SubClass label;
};

/// Laplace-smoothed MNB. Classes are ordered as in SubClass. Throws
/// ConfigError for an empty training set, alpha <= 0 or a threshold
/// outside (0, 1].
MnbModel train_mnb(std::span<const TrainingExample> train, double alpha, Vocabulary vocab,
                   const FeatureConfig& config, double threshold);

struct PredictionResult {
  LandUseClass label = LandUseClass::non_classified();
  std::optional<SubClass> sub_label;
  /// Normalized posterior per model class; empty when the location
  /// prefilter rejected the post.
  std::vector<std::pair<SubClass, double>> posterior;
  double confidence = 0.0;
};

/// Posterior from a ready feature vector. Below-threshold confidence yields
/// NonClassified with no sub_label; the posterior is still reported.
PredictionResult predict_vector(const MnbModel& model, const FeatureVector& features);
PredictionResult predict(const MnbModel& model, const CleanPost& doc);

/// Frequent PoS n-grams of location posts versus other posts. Sequences are
/// stored as plain space-joined tags (no "POS:" prefix).
struct PosSequenceFilter {
  std::set<std::string> location_sequences;
  std::set<std::string> nonlocation_sequences;
  int top_i = 50;
  int n_min = 2;
  int n_max = 3;
};

/// Top-i sequences of each corpus by total occurrence count (ties broken
/// lexicographically), with the shared ones removed from both sets.
PosSequenceFilter fit_pos_filter(std::span<const CleanPost> location_docs, std::span<const CleanPost> other_docs,
                                 int i, int n_min, int n_max);

/// Location matches minus non-location matches, counted with repetition.
int location_score(const PosSequenceFilter& filter, std::span<const std::string> tags, int n_min, int n_max);
bool is_location_post(const PosSequenceFilter& filter, std::span<const std::string> tags, int n_min, int n_max);
bool is_location_post(const PosSequenceFilter& filter, std::span<const std::string> tags);

/// Prefilter, then MNB.
PredictionResult classify_pipeline(const MnbModel& model, const PosSequenceFilter& filter, const CleanPost& doc);

inline constexpr int kModelFormatVersion = 1;

std::string model_to_json(const MnbModel& model, const PosSequenceFilter& filter);
/// Throws ConfigError on a format version mismatch and InputError when the
/// document is corrupt.
std::pair<MnbModel, PosSequenceFilter> model_from_json(std::string_view text, const std::string& source = "<model>");

void save_model(const MnbModel& model, const PosSequenceFilter& filter, const std::filesystem::path& path);
std::pair<MnbModel, PosSequenceFilter> load_model(const std::filesystem::path& path);

}  // namespace landuse
