#include <random>

#include "doctest.h"
#include "landuse/features.hpp"

using namespace landuse;
using Tokens = std::vector<std::string>;

namespace {

CleanPost doc(Tokens lemmas, Tokens tokens = {}, Tokens tags = {}) {
  CleanPost p;
  p.lemmas = std::move(lemmas);
  p.tokens = tokens.empty() ? p.lemmas : std::move(tokens);
  p.pos_tags = tags.empty() ? Tokens(p.lemmas.size(), "NC") : std::move(tags);
  return p;
}

double weight(const FeatureVector& v, std::size_t index) {
  for (const auto& [i, w] : v.entries) {
    if (i == index) return w;
  }
  return 0.0;
}

FeatureConfig unigrams(bool tfidf) {
  FeatureConfig c;
  c.use_tfidf = tfidf;
  return c;
}

}  // namespace

TEST_CASE("extract_ngrams examples") {
  CHECK(extract_ngrams(Tokens{"tomorrow", "is", "thursday"}, 2, 2) == Tokens{"tomorrow is", "is thursday"});
  CHECK(extract_ngrams(Tokens{"a"}, 2, 3).empty());
  CHECK(extract_ngrams(Tokens{"a", "b", "c"}, 1, 3) == Tokens{"a", "b", "c", "a b", "b c", "a b c"});
  CHECK(extract_ngrams(Tokens{"x", "x"}, 1, 1) == Tokens{"x", "x"});
}

TEST_CASE("extract_pos_ngrams examples") {
  CHECK(extract_pos_ngrams(Tokens{"VMI", "SP", "NC"}, 2, 2) == Tokens{"POS:VMI SP", "POS:SP NC"});
  CHECK(extract_pos_ngrams(Tokens{}, 1, 3).empty());
}

TEST_CASE("n-gram counts follow the window formula") {
  std::mt19937_64 rng(123);
  for (int i = 0; i < 1000; ++i) {
    const int m = static_cast<int>(rng() % 15);
    const int lo = 1 + static_cast<int>(rng() % 4);
    const int hi = lo + static_cast<int>(rng() % 4);
    Tokens tokens;
    for (int k = 0; k < m; ++k) tokens.push_back(std::string(1, static_cast<char>('a' + rng() % 3)));
    std::size_t expected = 0;
    for (int n = lo; n <= hi; ++n) expected += static_cast<std::size_t>(std::max(0, m - n + 1));
    CHECK(extract_ngrams(tokens, lo, hi).size() == expected);
    CHECK(extract_pos_ngrams(tokens, lo, hi).size() == expected);
  }
}

TEST_CASE("document_terms honours the configuration") {
  const auto d = doc({"comer", "rico"}, {"comiendo", "rico"}, {"VMG", "AQ"});
  FeatureConfig c;
  CHECK(document_terms(d, c) == Tokens{"comer", "rico"});
  c.use_lemmas = false;
  CHECK(document_terms(d, c) == Tokens{"comiendo", "rico"});
  c.include_pos_ngrams = true;
  c.pos_ngram_min = 1;
  c.pos_ngram_max = 2;
  CHECK(document_terms(d, c) == Tokens{"comiendo", "rico", "POS:VMG", "POS:AQ", "POS:VMG AQ"});
}

TEST_CASE("FeatureConfig validation") {
  FeatureConfig c;
  CHECK_NOTHROW(c.validate());
  c.ngram_min = 3;
  c.ngram_max = 2;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = FeatureConfig{};
  c.ngram_min = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = FeatureConfig{};
  c.pos_ngram_max = 1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = FeatureConfig{};
  c.min_df = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("fit_vocabulary") {
  const auto one = fit_vocabulary(std::vector{doc({"a", "b"})}, unigrams(false));
  CHECK(one.size() == 2);
  CHECK(one.doc_freq(0) == 1);
  CHECK(one.doc_freq(1) == 1);

  const std::vector docs = {doc({"a", "b"}), doc({"b", "c", "b"})};
  const auto v = fit_vocabulary(docs, unigrams(false));
  CHECK(v.terms() == Tokens{"a", "b", "c"});
  CHECK(v.doc_freq(*v.index_of("b")) == 2);
  CHECK(v.n_docs() == 2);
  CHECK_FALSE(v.index_of("z").has_value());
  CHECK(fit_vocabulary(docs, unigrams(false)) == v);
  CHECK_THROWS_AS(fit_vocabulary(std::vector<CleanPost>{}, unigrams(false)), std::invalid_argument);

  auto cfg = unigrams(false);
  cfg.min_df = 2;
  CHECK(fit_vocabulary(docs, cfg).terms() == Tokens{"b"});
}

TEST_CASE("Vocabulary::from_columns validates its input") {
  const auto v = Vocabulary::from_columns({"a", "b"}, {1, 2}, 3);
  CHECK(v.index_of("b") == 1u);
  CHECK_THROWS_AS(Vocabulary::from_columns({"a"}, {1, 2}, 3), InputError);
  CHECK_THROWS_AS(Vocabulary::from_columns({"a", "a"}, {1, 1}, 3), InputError);
  CHECK_THROWS_AS(Vocabulary::from_columns({"a"}, {4}, 3), InputError);
}

TEST_CASE("tf-idf on the three document example") {
  // Corpus {a b, a c, a a d}: N = 3, df(a) = 3, df(b) = df(c) = df(d) = 1.
  // idf(a) = ln(4/4) + 1 = 1, idf(b) = ln(4/2) + 1.
  const std::vector docs = {doc({"a", "b"}), doc({"a", "c"}), doc({"a", "a", "d"})};
  const auto cfg = unigrams(true);
  const auto vocab = fit_vocabulary(docs, cfg);
  CHECK(vocab.idf(*vocab.index_of("a")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(vocab.idf(*vocab.index_of("b")) == doctest::Approx(1.6931471805599453).epsilon(1e-12));

  const auto q = vectorize(doc({"a", "b"}), vocab, cfg);
  CHECK(std::abs(weight(q, *vocab.index_of("a")) - 0.5085423203783267) < 1e-9);
  CHECK(std::abs(weight(q, *vocab.index_of("b")) - 0.8610369959439764) < 1e-9);
  CHECK(std::abs(q.norm() - 1.0) < 1e-9);

  const auto third = vectorize(docs[2], vocab, cfg);
  CHECK(std::abs(weight(third, *vocab.index_of("a")) - 0.7632282916276542) < 1e-9);
  CHECK(std::abs(weight(third, *vocab.index_of("d")) - 0.6461289150464732) < 1e-9);
}

TEST_CASE("raw counts and unknown terms") {
  const auto cfg = unigrams(false);
  const auto vocab = fit_vocabulary(std::vector{doc({"a", "b"})}, cfg);
  const auto v = vectorize(doc({"a", "a", "b", "zz"}), vocab, cfg);
  CHECK(v.entries == std::vector<std::pair<std::size_t, double>>{{0, 2.0}, {1, 1.0}});
  CHECK(vectorize(doc({"zz"}), vocab, cfg).empty());
  CHECK(vectorize(doc({"zz"}), vocab, unigrams(true)).empty());
}

TEST_CASE("tf-idf vectors have unit norm and ignore uniform count scaling") {
  std::mt19937_64 rng(31);
  const Tokens pool = {"a", "b", "c", "d", "e", "f"};
  for (int round = 0; round < 200; ++round) {
    std::vector<CleanPost> docs;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      Tokens t;
      const int m = 1 + static_cast<int>(rng() % 6);
      for (int k = 0; k < m; ++k) t.push_back(pool[rng() % pool.size()]);
      docs.push_back(doc(t));
    }
    auto cfg = unigrams(true);
    cfg.ngram_max = 1 + static_cast<int>(rng() % 2);
    const auto vocab = fit_vocabulary(docs, cfg);
    for (const auto& d : docs) {
      const auto v = vectorize(d, vocab, cfg);
      for (const auto& [i, w] : v.entries) {
        CHECK(i < vocab.size());
        CHECK(w > 0.0);
      }
      if (v.empty()) continue;
      CHECK(std::abs(v.norm() - 1.0) < 1e-9);
      if (cfg.ngram_max == 1) {
        Tokens tripled;
        for (int k = 0; k < 3; ++k) tripled.insert(tripled.end(), d.lemmas.begin(), d.lemmas.end());
        const auto v3 = vectorize(doc(tripled), vocab, cfg);
        REQUIRE(v3.entries.size() == v.entries.size());
        for (std::size_t k = 0; k < v.entries.size(); ++k) {
          CHECK(std::abs(v3.entries[k].second - v.entries[k].second) < 1e-12);
        }
      }
    }
  }
}
