#include "landuse/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <unordered_set>

#include "json.hpp"

namespace landuse {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::size_t kMaxPostLength = 280;

std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line);
}

const json& require(const json& obj, const char* key, const std::string& loc) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(loc + ": missing key '" + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& loc) {
  const json& v = require(obj, key, loc);
  if (!v.is_string()) throw InputError(loc + ": key '" + key + "' must be a string");
  return v.get<std::string>();
}

double require_number(const json& obj, const char* key, const std::string& loc) {
  const json& v = require(obj, key, loc);
  if (!v.is_number()) throw InputError(loc + ": key '" + key + "' must be a number");
  return v.get<double>();
}

bool blank_line(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

// Text made up of digits, punctuation and whitespace only.
bool lacks_words(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = utf8::next(text, pos);
    if (!utf8::is_digit(cp) && !utf8::is_punctuation(cp) && !utf8::is_space(cp)) return false;
  }
  return true;
}

std::size_t count_tokens(std::string_view text) {
  std::size_t n = 0;
  bool in_token = false;
  for (char c : text) {
    const bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    if (!ws && !in_token) ++n;
    in_token = !ws;
  }
  return n;
}

}  // namespace

LoadedPosts parse_posts(std::istream& in, const std::string& source) {
  LoadedPosts out;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_line(line)) continue;
    const std::string loc = where(source, lineno);
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(loc + ": malformed JSON (" + e.what() + ")");
    }
    if (!obj.is_object()) throw InputError(loc + ": expected a JSON object");

    RawPost post;
    post.id = require_string(obj, "id", loc);
    post.user_id = require_string(obj, "user_id", loc);
    post.text = require_string(obj, "text", loc);
    post.timestamp = require_string(obj, "timestamp", loc);
    post.lat = require_number(obj, "lat", loc);
    post.lon = require_number(obj, "lon", loc);
    if (auto it = obj.find("lang"); it != obj.end() && !it->is_null()) {
      if (!it->is_string()) throw InputError(loc + ": key 'lang' must be a string");
      post.lang = it->get<std::string>();
    }
    if (post.id.empty()) throw InputError(loc + ": empty id");
    if (!seen_ids.insert(post.id).second) throw InputError(loc + ": duplicate id '" + post.id + "'");

    if (!post.point().valid()) {
      out.warnings.push_back(loc + ": post " + post.id + " rejected, coordinate out of range");
      continue;
    }
    if (utf8::length(post.text) > kMaxPostLength) {
      out.warnings.push_back(loc + ": post " + post.id + " longer than 280 characters");
    }
    out.posts.push_back(std::move(post));
  }
  return out;
}

LoadedPosts load_posts(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_posts(in, path.string());
}

void write_post(std::ostream& out, const RawPost& post) {
  ordered_json obj;
  obj["id"] = post.id;
  obj["user_id"] = post.user_id;
  obj["text"] = post.text;
  obj["timestamp"] = post.timestamp;
  obj["lat"] = post.lat;
  obj["lon"] = post.lon;
  if (post.lang) obj["lang"] = *post.lang;
  out << obj.dump() << '\n';
}

void write_posts(const std::filesystem::path& path, std::span<const RawPost> posts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  for (const auto& p : posts) write_post(out, p);
}

std::vector<RawPost> dedupe_and_filter(std::span<const RawPost> posts) {
  std::vector<RawPost> kept;
  std::unordered_set<std::string> seen;
  for (const auto& post : posts) {
    const std::string text = trim(post.text);
    if (text.empty() || count_tokens(text) < 2 || lacks_words(text)) continue;
    if (!seen.insert(utf8::to_lower(text)).second) continue;
    kept.push_back(post);
  }
  return kept;
}

std::map<std::string, LandUseClass> parse_labels(std::istream& in, const std::string& source) {
  std::map<std::string, LandUseClass> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_line(line)) continue;
    const std::string loc = where(source, lineno);
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(loc + ": malformed JSON (" + e.what() + ")");
    }
    if (!obj.is_object()) throw InputError(loc + ": expected a JSON object");
    const std::string id = require_string(obj, "id", loc);
    const std::string parent_name = require_string(obj, "parent", loc);
    auto parent = parse_parent(parent_name);
    if (!parent) throw InputError(loc + ": unknown parent class '" + parent_name + "'");
    std::optional<SubClass> sub;
    if (auto it = obj.find("sub"); it != obj.end() && !it->is_null()) {
      if (!it->is_string()) throw InputError(loc + ": key 'sub' must be a string");
      sub = parse_sub(it->get<std::string>());
      if (!sub) throw InputError(loc + ": unknown subcategory '" + it->get<std::string>() + "'");
    }
    try {
      if (!labels.emplace(id, LandUseClass::make(*parent, sub)).second) {
        throw InputError("duplicate label for id '" + id + "'");
      }
    } catch (const InputError& e) {
      throw InputError(loc + ": " + e.what());
    }
  }
  return labels;
}

std::map<std::string, LandUseClass> load_labels(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_labels(in, path.string());
}

std::vector<LabeledPost> attach_labels(std::span<const RawPost> posts,
                                       const std::map<std::string, LandUseClass>& labels,
                                       std::vector<std::string>& warnings) {
  std::vector<LabeledPost> out;
  out.reserve(posts.size());
  for (const auto& post : posts) {
    auto it = labels.find(post.id);
    if (it == labels.end()) {
      warnings.push_back("post " + post.id + " has no label, skipped");
      continue;
    }
    if (it->second.parent() == ParentClass::NonClassified) {
      throw InputError("post " + post.id + ": training labels cannot be NonClassified");
    }
    if (!it->second.sub()) {
      throw InputError("post " + post.id + ": training labels need a subcategory");
    }
    out.push_back({post, it->second});
  }
  return out;
}

CorpusSplit split_corpus(std::span<const LabeledPost> data, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test fraction must lie in (0, 1)");
  }
  std::map<SubClass, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto sub = data[i].label.sub();
    if (!sub) throw ConfigError("post " + data[i].post.id + " has no subcategory");
    members[*sub].push_back(i);
  }
  for (const auto& [sub, idx] : members) {
    if (idx.size() < 2) {
      throw ConfigError("subcategory " + std::string(to_string(sub)) + " has fewer than 2 members");
    }
  }

  // Fisher-Yates over raw engine output keeps the split identical across
  // standard library implementations.
  std::mt19937_64 rng(seed);
  std::vector<bool> in_test(data.size(), false);
  for (auto& [sub, idx] : members) {
    for (std::size_t i = idx.size() - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
      std::swap(idx[i], idx[j]);
    }
    const auto n = static_cast<long>(idx.size());
    const long k = std::clamp(std::lround(test_fraction * static_cast<double>(n)), 1L, n - 1);
    for (long t = 0; t < k; ++t) in_test[idx[static_cast<std::size_t>(t)]] = true;
  }

  CorpusSplit split;
  for (std::size_t i = 0; i < data.size(); ++i) {
    (in_test[i] ? split.test : split.train).push_back(data[i]);
  }
  return split;
}

}  // namespace landuse
