#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "landuse/core.hpp"
#include "landuse/ingest.hpp"

namespace landuse {

/// Output of the cleaning pipeline. The three lists are parallel.
struct CleanPost {
  std::string id;
  std::vector<std::string> tokens;
  std::vector<std::string> lemmas;
  std::vector<std::string> pos_tags;
  GeoPoint point;

  bool empty() const { return tokens.empty(); }
  bool operator==(const CleanPost&) const = default;
};

/// Phrase-level replacements for abbreviations, slang and establishment
/// names. Keys and values are lowercase token sequences.
class ReplacementDictionary {
 public:
  /// Throws InputError for empty keys or a key mapped onto itself.
  void add(std::vector<std::string> source, std::vector<std::string> replacement);

  /// Longest key matching `tokens` starting at `pos`, or nullptr.
  const std::pair<const std::vector<std::string>, std::vector<std::string>>* match(
      std::span<const std::string> tokens, std::size_t pos) const;

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const auto& entries() const { return entries_; }

 private:
  std::map<std::vector<std::string>, std::vector<std::string>> entries_;
  std::size_t max_key_len_ = 0;
};

struct LexiconEntry {
  std::string lemma;
  std::string tag;
};

/// Surface form (possibly multiword) to lemma and EAGLES-style tag.
class Lexicon {
 public:
  static constexpr std::string_view kDefaultTag = "NC";

  void add(std::vector<std::string> surface, LexiconEntry entry);

  /// Longest entry starting at `pos`; returns its length in tokens (0 when
  /// nothing matches) and the entry.
  std::pair<std::size_t, const LexiconEntry*> match(std::span<const std::string> tokens, std::size_t pos) const;

  std::size_t size() const { return entries_.size(); }
  const auto& entries() const { return entries_; }

 private:
  std::map<std::vector<std::string>, LexiconEntry> entries_;
  std::size_t max_len_ = 0;
};

struct SpellResources {
  static constexpr double kDefaultThreshold = 0.71;

  std::set<std::string> vocabulary;
  std::map<std::string, std::vector<std::string>> suggestions;
  double acceptance_threshold = kDefaultThreshold;

  /// Candidates for an unknown word: the bundled list when one exists,
  /// otherwise vocabulary words within edit distance 2, nearest first.
  std::vector<std::string> candidates(const std::string& word) const;
};

/// Everything `preprocess` consults.
struct TextResources {
  ReplacementDictionary dictionary;
  SpellResources spell;
  std::set<std::string> stoplist;
  Lexicon lexicon;
};

struct ResourcePaths {
  std::filesystem::path dictionary;
  std::filesystem::path lexicon;
  std::filesystem::path stoplist;
  std::filesystem::path suggestions;
  std::filesystem::path vocabulary;
};

ReplacementDictionary load_dictionary(const std::filesystem::path& path);
Lexicon load_lexicon(const std::filesystem::path& path);
std::set<std::string> load_word_list(const std::filesystem::path& path);
std::map<std::string, std::vector<std::string>> load_suggestions(const std::filesystem::path& path);

/// Loads every resource file. The spell vocabulary is the vocabulary file
/// plus every word the dictionary, stoplist and lexicon mention.
TextResources load_text_resources(const ResourcePaths& paths, double spell_threshold = SpellResources::kDefaultThreshold);

std::string strip_noise(std::string_view text);
std::string process_hashtags_and_mentions(std::string_view text);
std::vector<std::string> tokenize(std::string_view text);
std::vector<std::string> expand_abbreviations(std::span<const std::string> tokens, const ReplacementDictionary& dict);

/// Longest common contiguous substring of the two words divided by the
/// length of `misspelled`, both lowercased with spaces and hyphens removed.
double lcs_ratio(std::string_view candidate, std::string_view misspelled);

std::optional<std::string> spell_correct(const std::string& token, const SpellResources& resources);

/// "en" and "de" survive even when listed.
std::vector<std::string> remove_stopwords(std::span<const std::string> tokens, const std::set<std::string>& stoplist);

struct TaggedTokens {
  std::vector<std::string> tokens;
  std::vector<std::string> lemmas;
  std::vector<std::string> tags;
};

/// Multiword lexicon hits are joined with '_' into one position.
TaggedTokens lemmatize_and_tag(std::span<const std::string> tokens, const Lexicon& lexicon);

/// Hook applied to the noise-stripped text before hashtag processing.
/// Identity by default; a translation service plugs in here.
using TranslateHook = std::function<std::string(std::string_view)>;

CleanPost preprocess(const RawPost& post, const TextResources& resources, const TranslateHook& translate = {});

std::size_t edit_distance(std::u32string_view a, std::u32string_view b);

}  // namespace landuse
