#include "landuse/textprep.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <stdexcept>

namespace landuse {

namespace {

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = utf8::next(text, pos);
    if (utf8::is_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    utf8::append(out, cp);
  }
  return out;
}

bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == 0x2019; }

// Lowercases, turns punctuation into separators and splits on whitespace.
std::vector<std::string> normalize_phrase(std::string_view text) {
  std::string cleaned;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = utf8::next(text, pos);
    if (utf8::is_letter(cp) || utf8::is_digit(cp)) {
      utf8::append(cleaned, utf8::to_lower(cp));
    } else if (!is_apostrophe(cp)) {
      cleaned.push_back(' ');
    }
  }
  return tokenize(cleaned);
}

struct TsvLine {
  std::size_t lineno;
  std::vector<std::string> fields;
};

// Reads a UTF-8 TSV file, skipping blank lines and '#' comments, and checks
// the field count of every remaining line.
std::vector<TsvLine> read_tsv(const std::filesystem::path& path, std::size_t min_fields, std::size_t max_fields) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open resource " + path.string());
  std::vector<TsvLine> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string trimmed = trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      fields.push_back(trim(std::string_view(line).substr(start, tab == std::string::npos ? std::string::npos : tab - start)));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    const bool any_empty = std::any_of(fields.begin(), fields.end(), [](const std::string& f) { return f.empty(); });
    if (fields.size() < min_fields || fields.size() > max_fields || any_empty) {
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": malformed line, expected " +
                       std::to_string(min_fields) + (min_fields == max_fields ? "" : "-" + std::to_string(max_fields)) +
                       " non-empty tab-separated fields");
    }
    lines.push_back({lineno, std::move(fields)});
  }
  return lines;
}

bool valid_tag(std::string_view tag) {
  return !tag.empty() && std::all_of(tag.begin(), tag.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
  });
}

std::string join(std::span<const std::string> parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

}  // namespace

void ReplacementDictionary::add(std::vector<std::string> source, std::vector<std::string> replacement) {
  if (source.empty()) throw InputError("replacement dictionary key is empty");
  if (source == replacement) throw InputError("replacement dictionary maps '" + join(source, ' ') + "' to itself");
  max_key_len_ = std::max(max_key_len_, source.size());
  entries_.insert_or_assign(std::move(source), std::move(replacement));
}

const std::pair<const std::vector<std::string>, std::vector<std::string>>* ReplacementDictionary::match(
    std::span<const std::string> tokens, std::size_t pos) const {
  const std::size_t longest = std::min(max_key_len_, tokens.size() - pos);
  for (std::size_t len = longest; len >= 1; --len) {
    std::vector<std::string> key(tokens.begin() + static_cast<long>(pos), tokens.begin() + static_cast<long>(pos + len));
    if (auto it = entries_.find(key); it != entries_.end()) return &*it;
  }
  return nullptr;
}

void Lexicon::add(std::vector<std::string> surface, LexiconEntry entry) {
  if (surface.empty()) throw InputError("lexicon entry has an empty surface form");
  if (!valid_tag(entry.tag)) throw InputError("lexicon tag '" + entry.tag + "' is not an uppercase code");
  max_len_ = std::max(max_len_, surface.size());
  entries_.insert_or_assign(std::move(surface), std::move(entry));
}

std::pair<std::size_t, const LexiconEntry*> Lexicon::match(std::span<const std::string> tokens, std::size_t pos) const {
  const std::size_t longest = std::min(max_len_, tokens.size() - pos);
  for (std::size_t len = longest; len >= 1; --len) {
    std::vector<std::string> key(tokens.begin() + static_cast<long>(pos), tokens.begin() + static_cast<long>(pos + len));
    if (auto it = entries_.find(key); it != entries_.end()) return {len, &it->second};
  }
  return {0, nullptr};
}

std::vector<std::string> SpellResources::candidates(const std::string& word) const {
  if (auto it = suggestions.find(word); it != suggestions.end()) return it->second;

  const std::u32string target = utf8::decode(word);
  std::vector<std::pair<std::size_t, const std::string*>> near;
  for (const auto& known : vocabulary) {
    const std::u32string cand = utf8::decode(known);
    const auto diff = cand.size() > target.size() ? cand.size() - target.size() : target.size() - cand.size();
    if (diff > 2) continue;
    const std::size_t d = edit_distance(cand, target);
    if (d <= 2) near.emplace_back(d, &known);
  }
  std::stable_sort(near.begin(), near.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> out;
  out.reserve(near.size());
  for (const auto& [d, w] : near) out.push_back(*w);
  return out;
}

ReplacementDictionary load_dictionary(const std::filesystem::path& path) {
  ReplacementDictionary dict;
  for (const auto& line : read_tsv(path, 2, 2)) {
    try {
      dict.add(normalize_phrase(line.fields[0]), normalize_phrase(line.fields[1]));
    } catch (const InputError& e) {
      throw InputError(path.string() + ":" + std::to_string(line.lineno) + ": " + e.what());
    }
  }
  return dict;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  Lexicon lexicon;
  for (const auto& line : read_tsv(path, 3, 3)) {
    auto surface = normalize_phrase(line.fields[0]);
    auto lemma_parts = normalize_phrase(line.fields[1]);
    try {
      if (lemma_parts.empty()) throw InputError("empty lemma");
      lexicon.add(std::move(surface), {join(lemma_parts, '_'), line.fields[2]});
    } catch (const InputError& e) {
      throw InputError(path.string() + ":" + std::to_string(line.lineno) + ": " + e.what());
    }
  }
  return lexicon;
}

std::set<std::string> load_word_list(const std::filesystem::path& path) {
  std::set<std::string> words;
  for (const auto& line : read_tsv(path, 1, 1)) {
    for (auto& w : normalize_phrase(line.fields[0])) words.insert(std::move(w));
  }
  return words;
}

std::map<std::string, std::vector<std::string>> load_suggestions(const std::filesystem::path& path) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& line : read_tsv(path, 2, 2)) {
    std::vector<std::string> candidates;
    std::size_t start = 0;
    const std::string& list = line.fields[1];
    while (start <= list.size()) {
      const std::size_t comma = list.find(',', start);
      std::string cand = trim(std::string_view(list).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (!cand.empty()) candidates.push_back(std::move(cand));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    out[utf8::to_lower(line.fields[0])] = std::move(candidates);
  }
  return out;
}

TextResources load_text_resources(const ResourcePaths& paths, double spell_threshold) {
  if (!(spell_threshold > 0.0 && spell_threshold <= 1.0)) {
    throw ConfigError("spell.threshold must lie in (0, 1]");
  }
  TextResources res;
  res.dictionary = load_dictionary(paths.dictionary);
  res.lexicon = load_lexicon(paths.lexicon);
  res.stoplist = load_word_list(paths.stoplist);
  res.spell.suggestions = load_suggestions(paths.suggestions);
  res.spell.vocabulary = load_word_list(paths.vocabulary);
  res.spell.acceptance_threshold = spell_threshold;

  auto& vocab = res.spell.vocabulary;
  vocab.insert(res.stoplist.begin(), res.stoplist.end());
  for (const auto& [src, repl] : res.dictionary.entries()) vocab.insert(repl.begin(), repl.end());
  for (const auto& [surface, entry] : res.lexicon.entries()) vocab.insert(surface.begin(), surface.end());
  return res;
}

std::string strip_noise(std::string_view text) {
  static const std::regex kHtmlTag(R"(<[^<>]*>)");
  static const std::regex kEntity(R"(&(#[0-9]+|[A-Za-z]+);)");
  static const std::regex kUrl(R"((https?://|www\.)\S+|\bt\.co/\S+)", std::regex::icase);

  std::string s(text);
  s = std::regex_replace(s, kUrl, " ");
  s = std::regex_replace(s, kHtmlTag, " ");
  s = std::regex_replace(s, kEntity, " ");

  std::string kept;
  kept.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    const char32_t cp = utf8::next(s, pos);
    const bool ascii_symbol = cp < 0x80 && std::string_view("$+<=>^`|~").find(static_cast<char>(cp)) != std::string_view::npos;
    if (utf8::is_letter(cp) || utf8::is_digit(cp) || utf8::is_space(cp) ||
        (utf8::is_punctuation(cp) && !ascii_symbol)) {
      utf8::append(kept, cp);
    } else {
      kept.push_back(' ');
    }
  }
  return collapse_whitespace(kept);
}

std::string process_hashtags_and_mentions(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 8);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = utf8::next(text, pos);
    if (cp == U'@') {
      out += " en ";
    } else if (utf8::is_letter(cp) || utf8::is_digit(cp)) {
      utf8::append(out, utf8::to_lower(cp));
    } else if (!is_apostrophe(cp)) {
      out.push_back(' ');
    }
  }
  return collapse_whitespace(out);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = utf8::next(text, pos);
    if (utf8::is_space(cp)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      utf8::append(current, cp);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> expand_abbreviations(std::span<const std::string> tokens, const ReplacementDictionary& dict) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    if (const auto* hit = dict.empty() ? nullptr : dict.match(tokens, pos)) {
      out.insert(out.end(), hit->second.begin(), hit->second.end());
      pos += hit->first.size();
    } else {
      out.push_back(tokens[pos++]);
    }
  }
  return out;
}

double lcs_ratio(std::string_view candidate, std::string_view misspelled) {
  const auto normalize = [](std::string_view s) {
    std::u32string out;
    for (char32_t cp : utf8::decode(utf8::to_lower(s))) {
      if (cp != U' ' && cp != U'-') out.push_back(cp);
    }
    return out;
  };
  const std::u32string a = normalize(candidate);
  const std::u32string b = normalize(misspelled);
  if (a.empty() || b.empty()) throw std::invalid_argument("lcs_ratio needs two non-empty words");

  // Longest common suffix table, one row at a time.
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  std::size_t best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return static_cast<double>(best) / static_cast<double>(b.size());
}

std::optional<std::string> spell_correct(const std::string& token, const SpellResources& resources) {
  if (resources.vocabulary.contains(token)) return token;
  if (token.empty()) return std::nullopt;

  const std::string* best = nullptr;
  double best_ratio = -1.0;
  const auto candidates = resources.candidates(token);
  for (const auto& cand : candidates) {
    if (trim(cand).empty()) continue;
    const double r = lcs_ratio(cand, token);
    if (r > best_ratio) {
      best_ratio = r;
      best = &cand;
    }
  }
  if (best && best_ratio >= resources.acceptance_threshold) return utf8::to_lower(*best);
  return std::nullopt;
}

std::vector<std::string> remove_stopwords(std::span<const std::string> tokens, const std::set<std::string>& stoplist) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t == "en" || t == "de" || !stoplist.contains(t)) out.push_back(t);
  }
  return out;
}

TaggedTokens lemmatize_and_tag(std::span<const std::string> tokens, const Lexicon& lexicon) {
  TaggedTokens out;
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    const auto [len, entry] = lexicon.match(tokens, pos);
    if (entry) {
      out.tokens.push_back(join(tokens.subspan(pos, len), '_'));
      out.lemmas.push_back(entry->lemma);
      out.tags.push_back(entry->tag);
      pos += len;
    } else {
      out.tokens.push_back(tokens[pos]);
      out.lemmas.push_back(tokens[pos]);
      out.tags.emplace_back(Lexicon::kDefaultTag);
      ++pos;
    }
  }
  return out;
}

CleanPost preprocess(const RawPost& post, const TextResources& resources, const TranslateHook& translate) {
  std::string text = strip_noise(post.text);
  if (translate) text = translate(text);
  text = process_hashtags_and_mentions(text);

  const auto expanded = expand_abbreviations(tokenize(text), resources.dictionary);

  std::vector<std::string> corrected;
  corrected.reserve(expanded.size());
  for (const auto& token : expanded) {
    if (auto fixed = spell_correct(token, resources.spell)) {
      if (*fixed == token) {
        corrected.push_back(token);
      } else {
        for (auto& part : normalize_phrase(*fixed)) corrected.push_back(std::move(part));
      }
    }
  }

  const auto content = remove_stopwords(corrected, resources.stoplist);
  auto tagged = lemmatize_and_tag(content, resources.lexicon);

  CleanPost clean;
  clean.id = post.id;
  clean.tokens = std::move(tagged.tokens);
  clean.lemmas = std::move(tagged.lemmas);
  clean.pos_tags = std::move(tagged.tags);
  clean.point = post.point();
  return clean;
}

std::size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace landuse
