#include "landuse/features.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace landuse {

void FeatureConfig::validate() const {
  if (ngram_min < 1 || ngram_max < ngram_min) throw ConfigError("features: need 1 <= ngram_min <= ngram_max");
  if (pos_ngram_min < 1 || pos_ngram_max < pos_ngram_min) {
    throw ConfigError("features: need 1 <= pos_ngram_min <= pos_ngram_max");
  }
  if (min_df < 1) throw ConfigError("features: min_df must be at least 1");
}

std::vector<std::string> extract_ngrams(std::span<const std::string> tokens, int n_min, int n_max) {
  std::vector<std::string> grams;
  if (n_min < 1) n_min = 1;
  const auto m = static_cast<int>(tokens.size());
  for (int n = n_min; n <= n_max && n <= m; ++n) {
    for (int start = 0; start + n <= m; ++start) {
      std::string gram = tokens[static_cast<std::size_t>(start)];
      for (int k = 1; k < n; ++k) {
        gram.push_back(' ');
        gram += tokens[static_cast<std::size_t>(start + k)];
      }
      grams.push_back(std::move(gram));
    }
  }
  return grams;
}

std::vector<std::string> extract_pos_ngrams(std::span<const std::string> tags, int n_min, int n_max) {
  auto grams = extract_ngrams(tags, n_min, n_max);
  for (auto& g : grams) g.insert(0, kPosPrefix);
  return grams;
}

std::vector<std::string> document_terms(const CleanPost& doc, const FeatureConfig& config) {
  const auto& words = config.use_lemmas ? doc.lemmas : doc.tokens;
  auto terms = extract_ngrams(words, config.ngram_min, config.ngram_max);
  if (config.include_pos_ngrams) {
    auto pos = extract_pos_ngrams(doc.pos_tags, config.pos_ngram_min, config.pos_ngram_max);
    terms.insert(terms.end(), std::make_move_iterator(pos.begin()), std::make_move_iterator(pos.end()));
  }
  return terms;
}

Vocabulary Vocabulary::from_columns(std::vector<std::string> terms, std::vector<std::size_t> doc_freq, std::size_t n_docs) {
  if (terms.size() != doc_freq.size()) throw InputError("vocabulary: term and df columns differ in length");
  Vocabulary v;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (doc_freq[i] < 1 || doc_freq[i] > n_docs) throw InputError("vocabulary: bad df for term '" + terms[i] + "'");
    if (!v.index_.emplace(terms[i], i).second) throw InputError("vocabulary: duplicate term '" + terms[i] + "'");
  }
  v.terms_ = std::move(terms);
  v.doc_freq_ = std::move(doc_freq);
  v.n_docs_ = n_docs;
  return v;
}

std::optional<std::size_t> Vocabulary::index_of(const std::string& term) const {
  if (auto it = index_.find(term); it != index_.end()) return it->second;
  return std::nullopt;
}

double Vocabulary::idf(std::size_t index) const {
  return std::log((1.0 + static_cast<double>(n_docs_)) / (1.0 + static_cast<double>(doc_freq_[index]))) + 1.0;
}

Vocabulary fit_vocabulary(std::span<const CleanPost> docs, const FeatureConfig& config) {
  config.validate();
  if (docs.empty()) throw std::invalid_argument("fit_vocabulary needs at least one document");

  std::vector<std::string> order;
  std::unordered_map<std::string, std::size_t> df;
  for (const auto& doc : docs) {
    std::unordered_set<std::string> seen;
    for (auto& term : document_terms(doc, config)) {
      if (!seen.insert(term).second) continue;
      auto [it, fresh] = df.emplace(term, 0);
      if (fresh) order.push_back(term);
      ++it->second;
    }
  }

  Vocabulary v;
  v.n_docs_ = docs.size();
  for (auto& term : order) {
    const std::size_t count = df[term];
    if (count < static_cast<std::size_t>(config.min_df)) continue;
    v.index_.emplace(term, v.terms_.size());
    v.terms_.push_back(std::move(term));
    v.doc_freq_.push_back(count);
  }
  return v;
}

double FeatureVector::norm() const {
  double sq = 0.0;
  for (const auto& [i, w] : entries) sq += w * w;
  return std::sqrt(sq);
}

FeatureVector vectorize(const CleanPost& doc, const Vocabulary& vocab, const FeatureConfig& config) {
  std::map<std::size_t, double> counts;
  for (const auto& term : document_terms(doc, config)) {
    if (auto idx = vocab.index_of(term)) counts[*idx] += 1.0;
  }
  FeatureVector v;
  v.entries.assign(counts.begin(), counts.end());
  if (config.use_tfidf && !v.entries.empty()) {
    for (auto& [i, w] : v.entries) w *= vocab.idf(i);
    const double n = v.norm();
    for (auto& [i, w] : v.entries) w /= n;
  }
  return v;
}

}  // namespace landuse
