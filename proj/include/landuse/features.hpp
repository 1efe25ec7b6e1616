#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "landuse/textprep.hpp"

namespace landuse {

struct FeatureConfig {
  int ngram_min = 1;
  int ngram_max = 1;
  bool use_lemmas = true;
  bool use_tfidf = false;
  bool include_pos_ngrams = false;
  int pos_ngram_min = 2;
  int pos_ngram_max = 3;
  int min_df = 1;

  /// Throws ConfigError when a range is empty or below 1.
  void validate() const;
  bool operator==(const FeatureConfig&) const = default;
};

inline constexpr std::string_view kPosPrefix = "POS:";

/// Contiguous windows of every size in [n_min, n_max], joined by a single
/// space. A list of m tokens yields max(0, m - n + 1) windows per size.
std::vector<std::string> extract_ngrams(std::span<const std::string> tokens, int n_min, int n_max);

/// Same windows over PoS tags, each prefixed with "POS:".
std::vector<std::string> extract_pos_ngrams(std::span<const std::string> tags, int n_min, int n_max);

/// All terms the configured extractors produce for one document, with
/// repetitions.
std::vector<std::string> document_terms(const CleanPost& doc, const FeatureConfig& config);

/// Term index with document frequencies. Columns follow first appearance in
/// the fitting corpus.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Rebuilds a vocabulary from stored columns; throws InputError when the
  /// columns are inconsistent.
  static Vocabulary from_columns(std::vector<std::string> terms, std::vector<std::size_t> doc_freq, std::size_t n_docs);

  std::optional<std::size_t> index_of(const std::string& term) const;
  std::size_t size() const { return terms_.size(); }
  const std::string& term(std::size_t index) const { return terms_[index]; }
  std::size_t doc_freq(std::size_t index) const { return doc_freq_[index]; }
  std::size_t n_docs() const { return n_docs_; }
  const std::vector<std::string>& terms() const { return terms_; }

  /// Smoothed inverse document frequency: ln((1 + N) / (1 + df)) + 1.
  double idf(std::size_t index) const;

  bool operator==(const Vocabulary& other) const {
    return terms_ == other.terms_ && doc_freq_ == other.doc_freq_ && n_docs_ == other.n_docs_;
  }

 private:
  friend Vocabulary fit_vocabulary(std::span<const CleanPost> docs, const FeatureConfig& config);

  std::vector<std::string> terms_;
  std::vector<std::size_t> doc_freq_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t n_docs_ = 0;
};

/// Throws std::invalid_argument for an empty corpus.
Vocabulary fit_vocabulary(std::span<const CleanPost> docs, const FeatureConfig& config);

/// Sparse non-negative vector, entries sorted by column.
struct FeatureVector {
  std::vector<std::pair<std::size_t, double>> entries;

  bool empty() const { return entries.empty(); }
  double norm() const;
  bool operator==(const FeatureVector&) const = default;
};

FeatureVector vectorize(const CleanPost& doc, const Vocabulary& vocab, const FeatureConfig& config);

}  // namespace landuse
