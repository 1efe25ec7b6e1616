#include <algorithm>

#include "doctest.h"
#include "landuse/config.hpp"
#include "support.hpp"

using namespace landuse;

TEST_CASE("parse_config_text reads keys and skips comments") {
  RunConfig c;
  parse_config_text(c,
                    "# comment\n\n"
                    "features.ngram_max = 2\n"
                    "features.use_tfidf = true\n"
                    "classifier.alpha=0.5\n"
                    "split.seed = 7\n"
                    "paths.posts = data/posts.jsonl\n",
                    "/base");
  CHECK(c.features.ngram_max == 2);
  CHECK(c.features.use_tfidf);
  CHECK(c.classifier.alpha == 0.5);
  CHECK(c.split.seed == 7u);
  CHECK(c.paths.posts == std::filesystem::path("/base/data/posts.jsonl"));
  CHECK(c.assigned.count("classifier.alpha") == 1);
  CHECK(c.assigned.count("classifier.threshold") == 0);
}

TEST_CASE("absolute paths are kept") {
  RunConfig c;
  c.set("paths.model", "/tmp/m.json", "/base");
  CHECK(c.paths.model == std::filesystem::path("/tmp/m.json"));
}

TEST_CASE("config errors carry the line number") {
  RunConfig c;
  try {
    parse_config_text(c, "features.ngram_min = 1\nfeatures.colour = red\n", "/", "run.conf");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("run.conf:2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text(c, "no equals sign\n", "/"), ConfigError);
  CHECK_THROWS_AS(c.set("classifier.alpha", "abc"), ConfigError);
  CHECK_THROWS_AS(c.set("features.use_lemmas", "maybe"), ConfigError);
  CHECK_THROWS_AS(c.set("split.seed", "-3"), ConfigError);
}

TEST_CASE("validate checks ranges") {
  RunConfig ok;
  CHECK_NOTHROW(ok.validate());

  auto expect_bad = [](const char* key, const char* value) {
    RunConfig c;
    c.set(key, value);
    CHECK_THROWS_AS(c.validate(), ConfigError);
  };
  expect_bad("classifier.alpha", "0");
  expect_bad("classifier.alpha", "-1");
  expect_bad("classifier.threshold", "0");
  expect_bad("classifier.threshold", "1.5");
  expect_bad("classifier.i", "0");
  expect_bad("classifier.pos_ngram_max", "0");
  expect_bad("split.test_fraction", "1");
  expect_bad("split.test_fraction", "0");
  expect_bad("spell.threshold", "0");
  expect_bad("features.ngram_min", "4");
}

TEST_CASE("keys lists every setter once") {
  const auto& keys = RunConfig::keys();
  CHECK(std::find(keys.begin(), keys.end(), "split.seed") != keys.end());
  CHECK(std::find(keys.begin(), keys.end(), "paths.geojson") != keys.end());
  auto sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  RunConfig c;
  for (const auto& key : keys) {
    // Every key accepts some value; paths and numbers both take "1".
    CHECK_NOTHROW(c.set(key, key.rfind("features.use", 0) == 0 || key.rfind("eval.", 0) == 0 ||
                                     key == "features.include_pos_ngrams"
                                 ? "true"
                                 : "1"));
  }
}

TEST_CASE("bundled config loads and validates") {
  const auto c = load_config(testsupport::data_dir() / "landuse.conf");
  CHECK_NOTHROW(c.validate());
  CHECK(c.split.seed == 42u);
  CHECK(std::filesystem::exists(c.paths.posts));
  CHECK(std::filesystem::exists(c.paths.geojson));
  CHECK(std::filesystem::exists(c.paths.suggestions));
  CHECK_THROWS_AS(load_config(testsupport::data_dir() / "missing.conf"), InputError);
}
