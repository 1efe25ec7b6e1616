#include "landuse/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"

namespace landuse {

using nlohmann::json;
using nlohmann::ordered_json;

MnbModel train_mnb(std::span<const TrainingExample> train, double alpha, Vocabulary vocab,
                   const FeatureConfig& config, double threshold) {
  if (train.empty()) throw ConfigError("cannot train on an empty training set");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("classifier.alpha must be positive");
  if (!(threshold > 0.0 && threshold <= 1.0)) throw ConfigError("classifier.threshold must lie in (0, 1]");
  config.validate();

  std::map<SubClass, std::size_t> doc_count;
  for (const auto& ex : train) ++doc_count[ex.label];

  MnbModel model;
  model.alpha = alpha;
  model.threshold = threshold;
  model.config = config;
  for (const auto& [sub, n] : doc_count) model.classes.push_back(sub);

  const std::size_t n_terms = vocab.size();
  std::vector<std::vector<double>> weight_sum(model.classes.size(), std::vector<double>(n_terms, 0.0));
  const auto class_index = [&](SubClass s) {
    return static_cast<std::size_t>(std::find(model.classes.begin(), model.classes.end(), s) - model.classes.begin());
  };
  for (const auto& ex : train) {
    auto& row = weight_sum[class_index(ex.label)];
    for (const auto& [idx, w] : ex.features.entries) {
      if (idx >= n_terms) throw ConfigError("feature index outside the vocabulary");
      row[idx] += w;
    }
  }

  const auto total_docs = static_cast<double>(train.size());
  for (std::size_t c = 0; c < model.classes.size(); ++c) {
    model.log_prior.push_back(std::log(static_cast<double>(doc_count[model.classes[c]]) / total_docs));
    double total = 0.0;
    for (double w : weight_sum[c]) total += w;
    const double denom = total + alpha * static_cast<double>(n_terms);
    std::vector<double> row(n_terms);
    for (std::size_t t = 0; t < n_terms; ++t) row[t] = std::log((weight_sum[c][t] + alpha) / denom);
    model.log_likelihood.push_back(std::move(row));
    model.log_unseen.push_back(std::log((0.0 + alpha) / denom));
  }
  model.vocab = std::move(vocab);
  return model;
}

PredictionResult predict_vector(const MnbModel& model, const FeatureVector& features) {
  const std::size_t n = model.classes.size();
  std::vector<double> score(n);
  for (std::size_t c = 0; c < n; ++c) {
    double s = model.log_prior[c];
    for (const auto& [idx, w] : features.entries) s += w * model.log_likelihood[c][idx];
    score[c] = s;
  }
  const double top = *std::max_element(score.begin(), score.end());
  double sum = 0.0;
  for (double s : score) sum += std::exp(s - top);
  const double log_norm = top + std::log(sum);

  PredictionResult result;
  std::size_t best = 0;
  for (std::size_t c = 0; c < n; ++c) {
    const double p = std::exp(score[c] - log_norm);
    result.posterior.emplace_back(model.classes[c], p);
    if (p > result.posterior[best].second) best = c;
  }
  result.confidence = result.posterior[best].second;
  if (result.confidence >= model.threshold) {
    result.label = LandUseClass::of(model.classes[best]);
    result.sub_label = model.classes[best];
  }
  return result;
}

PredictionResult predict(const MnbModel& model, const CleanPost& doc) {
  return predict_vector(model, vectorize(doc, model.vocab, model.config));
}

PosSequenceFilter fit_pos_filter(std::span<const CleanPost> location_docs, std::span<const CleanPost> other_docs,
                                 int i, int n_min, int n_max) {
  if (i < 1) throw ConfigError("pos filter: i must be at least 1");
  if (n_min < 1 || n_max < n_min) throw ConfigError("pos filter: need 1 <= n_min <= n_max");
  if (location_docs.empty() || other_docs.empty()) throw ConfigError("pos filter: both corpora must be non-empty");

  const auto top_sequences = [&](std::span<const CleanPost> docs) {
    std::map<std::string, std::size_t> freq;
    for (const auto& doc : docs) {
      for (auto& seq : extract_ngrams(doc.pos_tags, n_min, n_max)) ++freq[seq];
    }
    std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
    // freq is already in lexicographic order, so a stable sort by count keeps
    // ties lexicographic.
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::set<std::string> top;
    for (std::size_t k = 0; k < ranked.size() && k < static_cast<std::size_t>(i); ++k) top.insert(ranked[k].first);
    return top;
  };

  PosSequenceFilter filter;
  filter.top_i = i;
  filter.n_min = n_min;
  filter.n_max = n_max;
  filter.location_sequences = top_sequences(location_docs);
  filter.nonlocation_sequences = top_sequences(other_docs);
  std::vector<std::string> shared;
  std::set_intersection(filter.location_sequences.begin(), filter.location_sequences.end(),
                        filter.nonlocation_sequences.begin(), filter.nonlocation_sequences.end(),
                        std::back_inserter(shared));
  for (const auto& s : shared) {
    filter.location_sequences.erase(s);
    filter.nonlocation_sequences.erase(s);
  }
  return filter;
}

int location_score(const PosSequenceFilter& filter, std::span<const std::string> tags, int n_min, int n_max) {
  int score = 0;
  for (const auto& seq : extract_ngrams(tags, n_min, n_max)) {
    if (filter.location_sequences.contains(seq)) ++score;
    if (filter.nonlocation_sequences.contains(seq)) --score;
  }
  return score;
}

bool is_location_post(const PosSequenceFilter& filter, std::span<const std::string> tags, int n_min, int n_max) {
  return location_score(filter, tags, n_min, n_max) > 0;
}

bool is_location_post(const PosSequenceFilter& filter, std::span<const std::string> tags) {
  return is_location_post(filter, tags, filter.n_min, filter.n_max);
}

PredictionResult classify_pipeline(const MnbModel& model, const PosSequenceFilter& filter, const CleanPost& doc) {
  if (!is_location_post(filter, doc.pos_tags)) return PredictionResult{};
  return predict(model, doc);
}

namespace {

ordered_json config_to_json(const FeatureConfig& c) {
  ordered_json j;
  j["ngram_min"] = c.ngram_min;
  j["ngram_max"] = c.ngram_max;
  j["use_lemmas"] = c.use_lemmas;
  j["use_tfidf"] = c.use_tfidf;
  j["include_pos_ngrams"] = c.include_pos_ngrams;
  j["pos_ngram_min"] = c.pos_ngram_min;
  j["pos_ngram_max"] = c.pos_ngram_max;
  j["min_df"] = c.min_df;
  return j;
}

FeatureConfig config_from_json(const json& j) {
  FeatureConfig c;
  c.ngram_min = j.at("ngram_min").get<int>();
  c.ngram_max = j.at("ngram_max").get<int>();
  c.use_lemmas = j.at("use_lemmas").get<bool>();
  c.use_tfidf = j.at("use_tfidf").get<bool>();
  c.include_pos_ngrams = j.at("include_pos_ngrams").get<bool>();
  c.pos_ngram_min = j.at("pos_ngram_min").get<int>();
  c.pos_ngram_max = j.at("pos_ngram_max").get<int>();
  c.min_df = j.at("min_df").get<int>();
  return c;
}

}  // namespace

std::string model_to_json(const MnbModel& model, const PosSequenceFilter& filter) {
  ordered_json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["alpha"] = model.alpha;
  doc["threshold"] = model.threshold;
  doc["classes"] = ordered_json::array();
  for (auto c : model.classes) doc["classes"].push_back(std::string(to_string(c)));
  doc["log_prior"] = model.log_prior;
  doc["feature_config"] = config_to_json(model.config);

  ordered_json vocab;
  vocab["n_docs"] = model.vocab.n_docs();
  vocab["terms"] = ordered_json::array();
  for (std::size_t t = 0; t < model.vocab.size(); ++t) {
    vocab["terms"].push_back(ordered_json::array({model.vocab.term(t), t, model.vocab.doc_freq(t)}));
  }
  doc["vocabulary"] = std::move(vocab);

  // Only terms seen with a class are listed; the rest share log_unseen.
  ordered_json ll = ordered_json::object();
  for (std::size_t c = 0; c < model.classes.size(); ++c) {
    ordered_json row;
    row["unseen"] = model.log_unseen[c];
    ordered_json terms = ordered_json::object();
    for (std::size_t t = 0; t < model.vocab.size(); ++t) {
      if (model.log_likelihood[c][t] != model.log_unseen[c]) terms[model.vocab.term(t)] = model.log_likelihood[c][t];
    }
    row["terms"] = std::move(terms);
    ll[std::string(to_string(model.classes[c]))] = std::move(row);
  }
  doc["log_likelihood"] = std::move(ll);

  ordered_json pf;
  pf["i"] = filter.top_i;
  pf["n_min"] = filter.n_min;
  pf["n_max"] = filter.n_max;
  pf["location_sequences"] = filter.location_sequences;
  pf["nonlocation_sequences"] = filter.nonlocation_sequences;
  doc["pos_filter"] = std::move(pf);
  return doc.dump(1) + "\n";
}

std::pair<MnbModel, PosSequenceFilter> model_from_json(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": corrupt model file (" + e.what() + ")");
  }
  if (!doc.is_object() || !doc.contains("format_version") || !doc["format_version"].is_number_integer()) {
    throw InputError(source + ": not a model file (no format_version)");
  }
  const int version = doc["format_version"].get<int>();
  if (version != kModelFormatVersion) {
    throw ConfigError(source + ": model format version " + std::to_string(version) + " is not supported (expected " +
                      std::to_string(kModelFormatVersion) + ")");
  }

  MnbModel model;
  PosSequenceFilter filter;
  try {
    model.alpha = doc.at("alpha").get<double>();
    model.threshold = doc.at("threshold").get<double>();
    model.config = config_from_json(doc.at("feature_config"));
    model.config.validate();
    for (const auto& name : doc.at("classes")) {
      auto sub = parse_sub(name.get<std::string>());
      if (!sub) throw InputError("unknown class '" + name.get<std::string>() + "'");
      model.classes.push_back(*sub);
    }
    model.log_prior = doc.at("log_prior").get<std::vector<double>>();
    if (model.log_prior.size() != model.classes.size()) throw InputError("log_prior size differs from class count");

    const json& vocab = doc.at("vocabulary");
    const auto& rows = vocab.at("terms");
    std::vector<std::string> terms(rows.size());
    std::vector<std::size_t> df(rows.size());
    for (const auto& row : rows) {
      const auto index = row.at(1).get<std::size_t>();
      if (index >= rows.size() || !terms[index].empty()) throw InputError("bad vocabulary index");
      terms[index] = row.at(0).get<std::string>();
      df[index] = row.at(2).get<std::size_t>();
    }
    model.vocab = Vocabulary::from_columns(std::move(terms), std::move(df), vocab.at("n_docs").get<std::size_t>());

    const json& ll = doc.at("log_likelihood");
    for (auto c : model.classes) {
      const json& row = ll.at(std::string(to_string(c)));
      const double unseen = row.at("unseen").get<double>();
      std::vector<double> dense(model.vocab.size(), unseen);
      for (const auto& [term, value] : row.at("terms").items()) {
        auto idx = model.vocab.index_of(term);
        if (!idx) throw InputError("likelihood for unknown term '" + term + "'");
        dense[*idx] = value.get<double>();
      }
      model.log_unseen.push_back(unseen);
      model.log_likelihood.push_back(std::move(dense));
    }

    const json& pf = doc.at("pos_filter");
    filter.top_i = pf.at("i").get<int>();
    filter.n_min = pf.at("n_min").get<int>();
    filter.n_max = pf.at("n_max").get<int>();
    filter.location_sequences = pf.at("location_sequences").get<std::set<std::string>>();
    filter.nonlocation_sequences = pf.at("nonlocation_sequences").get<std::set<std::string>>();
  } catch (const json::exception& e) {
    throw InputError(source + ": corrupt model file (" + e.what() + ")");
  } catch (const InputError& e) {
    throw InputError(source + ": corrupt model file (" + e.what() + ")");
  }
  if (model.classes.empty()) throw InputError(source + ": corrupt model file (no classes)");
  if (!(model.alpha > 0.0) || !(model.threshold > 0.0 && model.threshold <= 1.0)) {
    throw InputError(source + ": corrupt model file (alpha or threshold out of range)");
  }
  return {std::move(model), std::move(filter)};
}

void save_model(const MnbModel& model, const PosSequenceFilter& filter, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << model_to_json(model, filter);
}

std::pair<MnbModel, PosSequenceFilter> load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open model " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str(), path.string());
}

}  // namespace landuse
