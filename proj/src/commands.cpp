#include "landuse/commands.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace landuse {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

template <typename Fn>
void for_each_json_line(const std::filesystem::path& path, Fn&& fn) {
  auto in = open_input(path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const std::string loc = path.string() + ":" + std::to_string(lineno);
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      throw InputError(loc + ": malformed record (" + e.what() + ")");
    } catch (const InputError& e) {
      throw InputError(loc + ": " + e.what());
    }
  }
}

std::string label_name(const LandUseClass& label, bool subcategory) {
  if (subcategory && label.sub()) return std::string(to_string(*label.sub()));
  return std::string(to_string(label.parent()));
}

std::string format3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::vector<CleanPost> preprocess_all(std::span<const RawPost> posts, const TextResources& resources) {
  std::vector<CleanPost> out;
  out.reserve(posts.size());
  for (const auto& p : posts) out.push_back(preprocess(p, resources));
  return out;
}

std::vector<TrainingExample> vectorize_all(std::span<const CleanPost> docs, std::span<const LandUseClass> labels,
                                           const Vocabulary& vocab, const FeatureConfig& config) {
  std::vector<TrainingExample> out;
  out.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) out.push_back({vectorize(docs[i], vocab, config), *labels[i].sub()});
  return out;
}

std::string describe(const FeatureConfig& config) {
  for (const auto& [name, cfg] : sweep_configs(config)) {
    if (cfg == config) return name;
  }
  return "custom";
}

ordered_json config_json(const FeatureConfig& c) {
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

}  // namespace

void write_clean_post(std::ostream& out, const CleanPost& post, const std::string& block_id) {
  ordered_json row;
  row["id"] = post.id;
  row["tokens"] = post.tokens;
  row["lemmas"] = post.lemmas;
  row["pos_tags"] = post.pos_tags;
  row["lat"] = post.point.lat;
  row["lon"] = post.point.lon;
  if (!block_id.empty()) row["block_id"] = block_id;
  out << row.dump() << '\n';
}

void write_clean_posts(const std::filesystem::path& path, std::span<const CleanPost> posts) {
  auto out = open_output(path);
  for (const auto& p : posts) write_clean_post(out, p);
}

void write_block_assignments(const std::filesystem::path& path, std::span<const BlockAssignment> rows) {
  auto out = open_output(path);
  for (const auto& r : rows) write_clean_post(out, r.post, r.block_id);
}

std::vector<CleanRow> read_clean_posts(const std::filesystem::path& path) {
  std::vector<CleanRow> rows;
  for_each_json_line(path, [&](const json& j) {
    CleanRow row;
    row.post.id = j.at("id").get<std::string>();
    row.post.tokens = j.at("tokens").get<std::vector<std::string>>();
    row.post.lemmas = j.at("lemmas").get<std::vector<std::string>>();
    row.post.pos_tags = j.at("pos_tags").get<std::vector<std::string>>();
    row.post.point = {j.at("lat").get<double>(), j.at("lon").get<double>()};
    if (row.post.tokens.size() != row.post.lemmas.size() || row.post.tokens.size() != row.post.pos_tags.size()) {
      throw InputError("tokens, lemmas and pos_tags differ in length");
    }
    if (auto it = j.find("block_id"); it != j.end()) row.block_id = it->get<std::string>();
    rows.push_back(std::move(row));
  });
  return rows;
}

void write_labeled_rows(const std::filesystem::path& path, std::span<const LabeledRow> rows) {
  auto out = open_output(path);
  for (const auto& r : rows) {
    ordered_json row;
    row["id"] = r.id;
    row["label"] = std::string(to_string(r.label.parent()));
    row["sub_label"] = r.sub_label ? json(std::string(to_string(*r.sub_label))) : json(nullptr);
    row["confidence"] = r.confidence;
    row["lat"] = r.point.lat;
    row["lon"] = r.point.lon;
    row["block_id"] = r.block_id;
    out << row.dump() << '\n';
  }
}

std::vector<LabeledRow> read_labeled_rows(const std::filesystem::path& path) {
  std::vector<LabeledRow> rows;
  for_each_json_line(path, [&](const json& j) {
    LabeledRow row;
    row.id = j.at("id").get<std::string>();
    auto parent = parse_parent(j.at("label").get<std::string>());
    if (!parent) throw InputError("unknown label");
    if (const auto& s = j.at("sub_label"); !s.is_null()) {
      row.sub_label = parse_sub(s.get<std::string>());
      if (!row.sub_label) throw InputError("unknown sub_label");
    }
    row.label = LandUseClass::make(*parent, row.sub_label);
    row.confidence = j.at("confidence").get<double>();
    row.point = {j.at("lat").get<double>(), j.at("lon").get<double>()};
    row.block_id = j.value("block_id", std::string());
    rows.push_back(std::move(row));
  });
  return rows;
}

std::vector<std::pair<std::string, FeatureConfig>> sweep_configs(const FeatureConfig& base) {
  const auto make = [&](int lo, int hi, bool tfidf, bool lemmas) {
    FeatureConfig c = base;
    c.ngram_min = lo;
    c.ngram_max = hi;
    c.use_tfidf = tfidf;
    c.use_lemmas = lemmas;
    return c;
  };
  return {
      {"TF-IDF", make(1, 1, true, false)},
      {"TF-IDF / lemma", make(1, 1, true, true)},
      {"Unigram", make(1, 1, false, false)},
      {"Unigram / lemma", make(1, 1, false, true)},
      {"Bigram", make(2, 2, false, false)},
      {"Bigram / lemma", make(2, 2, false, true)},
      {"Trigram", make(3, 3, false, false)},
      {"Trigram / lemma", make(3, 3, false, true)},
      {"N-gram (1,2,3)", make(1, 3, false, false)},
      {"N-gram (1,2,3) / lemma", make(1, 3, false, true)},
  };
}

EvaluationRow evaluate(const MnbModel& model, std::span<const CleanPost> docs, std::span<const LandUseClass> truth,
                       const RunConfig::Eval& options, std::string name) {
  EvaluationRow row;
  row.name = std::move(name);
  row.config = model.config;
  row.classes = options.subcategory_report ? sub_class_names() : parent_class_names();
  ConfusionMatrix cm(row.classes);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    // Scores the classifier's decision; the confidence cut-off only applies
    // when labelling posts for the map.
    const auto result = predict(model, docs[i]);
    std::size_t best = 0;
    for (std::size_t k = 1; k < result.posterior.size(); ++k) {
      if (result.posterior[k].second > result.posterior[best].second) best = k;
    }
    const auto decided = LandUseClass::of(result.posterior[best].first);
    cm.add(label_name(truth[i], options.subcategory_report), label_name(decided, options.subcategory_report));
  }
  row.metrics = metrics(cm, {options.include_nonclassified, options.weighted});
  row.confusion.assign(row.classes.size(), std::vector<long>(row.classes.size(), 0));
  for (std::size_t t = 0; t < row.classes.size(); ++t) {
    for (std::size_t p = 0; p < row.classes.size(); ++p) row.confusion[t][p] = cm.count(t, p);
  }
  return row;
}

TrainedPipeline train_from_config(const RunConfig& config, const TextResources& resources, bool sweep) {
  config.validate();
  if (!config.split.seed) throw ConfigError("split.seed must be set explicitly (use --seed)");

  TrainedPipeline out;
  auto loaded = load_posts(config.paths.corpus_posts);
  out.warnings = std::move(loaded.warnings);
  const auto corpus_posts = dedupe_and_filter(loaded.posts);
  const auto labels = load_labels(config.paths.corpus_labels);
  const auto labeled = attach_labels(corpus_posts, labels, out.warnings);
  out.corpus_size = labeled.size();

  const auto split = split_corpus(labeled, config.split.test_fraction, *config.split.seed);
  out.train_size = split.train.size();
  out.test_size = split.test.size();

  std::vector<CleanPost> train_docs;
  std::vector<LandUseClass> train_labels;
  for (const auto& lp : split.train) {
    train_docs.push_back(preprocess(lp.post, resources));
    train_labels.push_back(lp.label);
  }
  std::vector<CleanPost> test_docs;
  std::vector<LandUseClass> test_labels;
  for (const auto& lp : split.test) {
    test_docs.push_back(preprocess(lp.post, resources));
    test_labels.push_back(lp.label);
  }

  const auto fit = [&](const FeatureConfig& features) {
    auto vocab = fit_vocabulary(train_docs, features);
    const auto examples = vectorize_all(train_docs, train_labels, vocab, features);
    return train_mnb(examples, config.classifier.alpha, std::move(vocab), features, config.classifier.threshold);
  };

  out.model = fit(config.features);
  out.rows.push_back(evaluate(out.model, test_docs, test_labels, config.eval, describe(config.features)));
  if (sweep) {
    out.rows.clear();
    for (const auto& [name, features] : sweep_configs(config.features)) {
      const auto model = features == config.features ? out.model : fit(features);
      out.rows.push_back(evaluate(model, test_docs, test_labels, config.eval, name));
    }
  }

  auto other = load_posts(config.paths.nonlocation_posts);
  const auto other_docs = preprocess_all(dedupe_and_filter(other.posts), resources);
  out.filter = fit_pos_filter(train_docs, other_docs, config.classifier.top_i, config.classifier.pos_ngram_min,
                              config.classifier.pos_ngram_max);
  return out;
}

std::string report_to_json(const TrainedPipeline& trained, const RunConfig& config) {
  ordered_json doc;
  doc["level"] = config.eval.subcategory_report ? "subcategory" : "parent";
  doc["averaging"] = config.eval.weighted ? "weighted" : "macro";
  doc["include_nonclassified"] = config.eval.include_nonclassified;
  ordered_json split;
  split["seed"] = config.split.seed ? *config.split.seed : 0;
  split["test_fraction"] = config.split.test_fraction;
  split["corpus"] = trained.corpus_size;
  split["train"] = trained.train_size;
  split["test"] = trained.test_size;
  doc["split"] = std::move(split);
  doc["rows"] = ordered_json::array();
  for (const auto& row : trained.rows) {
    ordered_json r;
    r["feature"] = row.name;
    r["feature_config"] = config_json(row.config);
    r["accuracy"] = row.metrics.accuracy;
    r["precision"] = row.metrics.macro_precision;
    r["recall"] = row.metrics.macro_recall;
    r["f1"] = row.metrics.macro_f1;
    r["total"] = row.metrics.total;
    r["per_class"] = ordered_json::array();
    for (const auto& m : row.metrics.per_class) {
      ordered_json c;
      c["class"] = m.name;
      c["precision"] = m.precision;
      c["recall"] = m.recall;
      c["f1"] = m.f1;
      c["support"] = m.support;
      r["per_class"].push_back(std::move(c));
    }
    r["confusion"] = {{"classes", row.classes}, {"counts", row.confusion}};
    doc["rows"].push_back(std::move(r));
  }
  return doc.dump(2) + "\n";
}

std::string report_to_table(std::span<const EvaluationRow> rows) {
  std::ostringstream out;
  out << std::left << std::setw(26) << "Feature" << std::right << std::setw(10) << "Accuracy" << std::setw(11)
      << "Precision" << std::setw(8) << "Recall" << std::setw(10) << "F1-score" << '\n';
  for (const auto& row : rows) {
    out << std::left << std::setw(26) << row.name << std::right << std::setw(10) << format3(row.metrics.accuracy)
        << std::setw(11) << format3(row.metrics.macro_precision) << std::setw(8) << format3(row.metrics.macro_recall)
        << std::setw(10) << format3(row.metrics.macro_f1) << '\n';
  }
  return out.str();
}

IngestSummary cmd_ingest(const std::filesystem::path& input, const std::filesystem::path& output) {
  auto loaded = load_posts(input);
  const auto kept = dedupe_and_filter(loaded.posts);
  write_posts(output, kept);
  IngestSummary s;
  s.loaded = loaded.posts.size();
  s.retained = kept.size();
  s.removed = s.loaded - s.retained;
  s.warnings = std::move(loaded.warnings);
  return s;
}

std::size_t cmd_preprocess(const RunConfig& config, const std::filesystem::path& input,
                           const std::filesystem::path& output) {
  const auto resources = load_text_resources(config.resource_paths(), config.spell_threshold);
  const auto posts = load_posts(input);
  const auto clean = preprocess_all(posts.posts, resources);
  write_clean_posts(output, clean);
  return clean.size();
}

GeofilterSummary cmd_geofilter(const RunConfig& config, const std::filesystem::path& input,
                               const std::filesystem::path& output) {
  const auto blocks = load_geojson(config.paths.geojson);
  std::vector<CleanPost> posts;
  for (auto& row : read_clean_posts(input)) posts.push_back(std::move(row.post));
  const auto in_region = filter_by_region(posts, blocks.region);
  const auto assigned = assign_blocks(in_region, blocks);
  write_block_assignments(output, assigned);
  return {posts.size(), in_region.size(), assigned.size()};
}

TrainedPipeline cmd_train(const RunConfig& config, const std::filesystem::path& model_out,
                          const std::filesystem::path& report_out, bool sweep) {
  const auto resources = load_text_resources(config.resource_paths(), config.spell_threshold);
  auto trained = train_from_config(config, resources, sweep);
  if (model_out.has_parent_path()) std::filesystem::create_directories(model_out.parent_path());
  save_model(trained.model, trained.filter, model_out);
  if (!report_out.empty()) {
    open_output(report_out) << report_to_json(trained, config);
    auto table = report_out;
    table.replace_extension(".txt");
    open_output(table) << report_to_table(trained.rows);
  }
  return trained;
}

std::vector<LabeledRow> classify_rows(const MnbModel& model, const PosSequenceFilter& filter,
                                      std::span<const CleanRow> rows) {
  std::vector<LabeledRow> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const auto result = classify_pipeline(model, filter, row.post);
    LabeledRow labeled;
    labeled.id = row.post.id;
    labeled.label = result.label;
    labeled.sub_label = result.sub_label;
    labeled.confidence = result.confidence;
    labeled.point = row.post.point;
    labeled.block_id = row.block_id;
    out.push_back(std::move(labeled));
  }
  return out;
}

LabelCounts count_labels(std::span<const LabeledRow> rows) {
  LabelCounts counts;
  for (auto p : kAllParents) counts[p] = 0;
  for (const auto& r : rows) ++counts[r.label.parent()];
  return counts;
}

LabelCounts cmd_classify(const std::filesystem::path& input, const std::filesystem::path& model_path,
                         const std::filesystem::path& output) {
  const auto [model, filter] = load_model(model_path);
  const auto rows = read_clean_posts(input);
  const auto labeled = classify_rows(model, filter, rows);
  write_labeled_rows(output, labeled);
  return count_labels(labeled);
}

std::string export_geojson(std::span<const LabeledRow> rows, const BlockMap& blocks) {
  ordered_json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = ordered_json::array();

  std::map<std::string, std::map<ParentClass, std::size_t>> per_block;
  for (const auto& r : rows) {
    ordered_json f;
    f["type"] = "Feature";
    f["geometry"] = {{"type", "Point"}, {"coordinates", {r.point.lon, r.point.lat}}};
    ordered_json props;
    props["kind"] = "post";
    props["id"] = r.id;
    props["label"] = std::string(to_string(r.label.parent()));
    props["sub_label"] = r.sub_label ? ordered_json(std::string(to_string(*r.sub_label))) : ordered_json(nullptr);
    props["confidence"] = r.confidence;
    props["block_id"] = r.block_id;
    f["properties"] = std::move(props);
    doc["features"].push_back(std::move(f));
    if (!r.block_id.empty()) ++per_block[r.block_id][r.label.parent()];
  }

  for (const auto& block : blocks.blocks) {
    ordered_json rings = ordered_json::array();
    rings.push_back(ring_to_positions(block.polygon.exterior, true));
    for (const auto& hole : block.polygon.holes) rings.push_back(ring_to_positions(hole, false));

    ordered_json props;
    props["kind"] = "block";
    props["block_id"] = block.block_id;
    props["cadastre_label"] =
        block.cadastre_label ? ordered_json(std::string(to_string(block.cadastre_label->parent()))) : ordered_json(nullptr);

    std::size_t count = 0;
    ordered_json majority = nullptr;
    if (auto it = per_block.find(block.block_id); it != per_block.end()) {
      std::size_t best = 0;
      std::size_t winners = 0;
      ParentClass winner = ParentClass::NonClassified;
      for (const auto& [label, n] : it->second) {
        count += n;
        if (n > best) {
          best = n;
          winners = 1;
          winner = label;
        } else if (n == best) {
          ++winners;
        }
      }
      majority = std::string(to_string(winners == 1 ? winner : ParentClass::NonClassified));
    }
    props["predicted_label"] = std::move(majority);
    props["post_count"] = count;

    ordered_json f;
    f["type"] = "Feature";
    f["geometry"] = {{"type", "Polygon"}, {"coordinates", std::move(rings)}};
    f["properties"] = std::move(props);
    doc["features"].push_back(std::move(f));
  }
  return doc.dump() + "\n";
}

std::size_t cmd_export_geojson(const std::filesystem::path& labeled, const std::filesystem::path& geojson,
                               const std::filesystem::path& output) {
  const auto rows = read_labeled_rows(labeled);
  const auto blocks = load_geojson(geojson);
  open_output(output) << export_geojson(rows, blocks);
  return rows.size() + blocks.blocks.size();
}

RunSummary cmd_run(const RunConfig& config, const std::filesystem::path& workdir, bool sweep) {
  config.validate();
  std::filesystem::create_directories(workdir);
  RunSummary summary;
  summary.ingest = cmd_ingest(config.paths.posts, workdir / "ingested.jsonl");
  summary.preprocessed = cmd_preprocess(config, workdir / "ingested.jsonl", workdir / "clean.jsonl");
  summary.geofilter = cmd_geofilter(config, workdir / "clean.jsonl", workdir / "geofiltered.jsonl");
  auto trained = cmd_train(config, workdir / "model.json", workdir / "report.json", sweep);
  summary.evaluation = std::move(trained.rows);
  summary.labels = cmd_classify(workdir / "geofiltered.jsonl", workdir / "model.json", workdir / "labeled.jsonl");
  cmd_export_geojson(workdir / "labeled.jsonl", config.paths.geojson, workdir / "map.geojson");
  return summary;
}

}  // namespace landuse
