#include "landuse/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace landuse {

namespace {

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("config key " + std::string(key) + ": cannot parse '" + std::string(value) + "'");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view value) { return parse_number<double>(key, value); }

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError("config key " + std::string(key) + ": expected a boolean, got '" + std::string(value) + "'");
}

std::filesystem::path resolve(std::string_view value, const std::filesystem::path& base_dir) {
  std::filesystem::path p{std::string(value)};
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  return p.lexically_normal();
}

using Setter = std::function<void(RunConfig&, std::string_view, std::string_view, const std::filesystem::path&)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = [] {
    std::vector<std::pair<std::string, Setter>> t;
    const auto path_key = [&t](const std::string& name, std::filesystem::path RunConfig::Paths::*member) {
      t.emplace_back("paths." + name, [member](RunConfig& c, std::string_view, std::string_view v, const std::filesystem::path& base) {
        c.paths.*member = resolve(v, base);
      });
    };
    path_key("posts", &RunConfig::Paths::posts);
    path_key("corpus_posts", &RunConfig::Paths::corpus_posts);
    path_key("corpus_labels", &RunConfig::Paths::corpus_labels);
    path_key("nonlocation_posts", &RunConfig::Paths::nonlocation_posts);
    path_key("geojson", &RunConfig::Paths::geojson);
    path_key("dictionary", &RunConfig::Paths::dictionary);
    path_key("lexicon", &RunConfig::Paths::lexicon);
    path_key("stoplist", &RunConfig::Paths::stoplist);
    path_key("suggestions", &RunConfig::Paths::suggestions);
    path_key("vocabulary", &RunConfig::Paths::vocabulary);
    path_key("model", &RunConfig::Paths::model);

    const auto int_key = [&t](const std::string& name, auto getter) {
      t.emplace_back(name, [getter](RunConfig& c, std::string_view k, std::string_view v, const std::filesystem::path&) {
        getter(c) = parse_number<int>(k, v);
      });
    };
    const auto bool_key = [&t](const std::string& name, auto getter) {
      t.emplace_back(name, [getter](RunConfig& c, std::string_view k, std::string_view v, const std::filesystem::path&) {
        getter(c) = parse_bool(k, v);
      });
    };
    const auto double_key = [&t](const std::string& name, auto getter) {
      t.emplace_back(name, [getter](RunConfig& c, std::string_view k, std::string_view v, const std::filesystem::path&) {
        getter(c) = parse_double(k, v);
      });
    };

    int_key("features.ngram_min", [](RunConfig& c) -> int& { return c.features.ngram_min; });
    int_key("features.ngram_max", [](RunConfig& c) -> int& { return c.features.ngram_max; });
    bool_key("features.use_lemmas", [](RunConfig& c) -> bool& { return c.features.use_lemmas; });
    bool_key("features.use_tfidf", [](RunConfig& c) -> bool& { return c.features.use_tfidf; });
    bool_key("features.include_pos_ngrams", [](RunConfig& c) -> bool& { return c.features.include_pos_ngrams; });
    int_key("features.pos_ngram_min", [](RunConfig& c) -> int& { return c.features.pos_ngram_min; });
    int_key("features.pos_ngram_max", [](RunConfig& c) -> int& { return c.features.pos_ngram_max; });
    int_key("features.min_df", [](RunConfig& c) -> int& { return c.features.min_df; });

    double_key("classifier.alpha", [](RunConfig& c) -> double& { return c.classifier.alpha; });
    double_key("classifier.threshold", [](RunConfig& c) -> double& { return c.classifier.threshold; });
    int_key("classifier.i", [](RunConfig& c) -> int& { return c.classifier.top_i; });
    int_key("classifier.pos_ngram_min", [](RunConfig& c) -> int& { return c.classifier.pos_ngram_min; });
    int_key("classifier.pos_ngram_max", [](RunConfig& c) -> int& { return c.classifier.pos_ngram_max; });

    double_key("split.test_fraction", [](RunConfig& c) -> double& { return c.split.test_fraction; });
    t.emplace_back("split.seed", [](RunConfig& c, std::string_view k, std::string_view v, const std::filesystem::path&) {
      c.split.seed = parse_number<std::uint64_t>(k, v);
    });

    double_key("spell.threshold", [](RunConfig& c) -> double& { return c.spell_threshold; });

    bool_key("eval.subcategory_report", [](RunConfig& c) -> bool& { return c.eval.subcategory_report; });
    bool_key("eval.include_nonclassified", [](RunConfig& c) -> bool& { return c.eval.include_nonclassified; });
    bool_key("eval.weighted", [](RunConfig& c) -> bool& { return c.eval.weighted; });
    return t;
  }();
  return table;
}

}  // namespace

void RunConfig::set(std::string_view key, std::string_view value, const std::filesystem::path& base_dir) {
  for (const auto& [name, setter] : setters()) {
    if (name == key) {
      setter(*this, key, value, base_dir);
      assigned.insert(name);
      return;
    }
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, setter] : setters()) out.push_back(name);
    return out;
  }();
  return names;
}

void RunConfig::validate() const {
  features.validate();
  if (!(classifier.alpha > 0.0)) throw ConfigError("classifier.alpha must be positive");
  if (!(classifier.threshold > 0.0 && classifier.threshold <= 1.0)) {
    throw ConfigError("classifier.threshold must lie in (0, 1]");
  }
  if (classifier.top_i < 1) throw ConfigError("classifier.i must be at least 1");
  if (classifier.pos_ngram_min < 1 || classifier.pos_ngram_max < classifier.pos_ngram_min) {
    throw ConfigError("classifier: need 1 <= pos_ngram_min <= pos_ngram_max");
  }
  if (!(split.test_fraction > 0.0 && split.test_fraction < 1.0)) {
    throw ConfigError("split.test_fraction must lie in (0, 1)");
  }
  if (!(spell_threshold > 0.0 && spell_threshold <= 1.0)) throw ConfigError("spell.threshold must lie in (0, 1]");
}

ResourcePaths RunConfig::resource_paths() const {
  return {paths.dictionary, paths.lexicon, paths.stoplist, paths.suggestions, paths.vocabulary};
}

void parse_config_text(RunConfig& config, std::string_view text, const std::filesystem::path& base_dir,
                       const std::string& source) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string trimmed = trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'section.key = value'");
    }
    const std::string key = trim(std::string_view(trimmed).substr(0, eq));
    const std::string value = trim(std::string_view(trimmed).substr(eq + 1));
    try {
      config.set(key, value, base_dir);
    } catch (const ConfigError& e) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  RunConfig config;
  parse_config_text(config, buf.str(), path.parent_path(), path.string());
  return config;
}

}  // namespace landuse
