#include "doctest.h"
#include "landuse/commands.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace landuse;
using testsupport::read_file;
using testsupport::run_cli;
using testsupport::scratch_dir;
using testsupport::write_file;
namespace fs = std::filesystem;

namespace {

std::string conf() { return "--config \"" + (testsupport::data_dir() / "landuse.conf").string() + "\""; }

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

std::string raw(const std::string& id, const std::string& text, double lat = -16.39, double lon = -71.53) {
  nlohmann::json j = {{"id", id}, {"user_id", "u"}, {"text", text}, {"timestamp", "2019-01-01T00:00:00Z"},
                      {"lat", lat}, {"lon", lon}};
  return j.dump() + "\n";
}

LabeledRow labeled(const std::string& id, ParentClass parent, const std::string& block) {
  LabeledRow r;
  r.id = id;
  r.label = LandUseClass::make(parent, std::nullopt);
  r.point = {0.5, 0.5};
  r.block_id = block;
  return r;
}

BlockMap two_blocks() {
  auto sq = [](double x0) {
    return Polygon{{{0, x0}, {0, x0 + 1}, {1, x0 + 1}, {1, x0}}, {}};
  };
  BlockMap map;
  map.region = Polygon{{{0, 0}, {0, 10}, {10, 10}, {10, 0}}, {}};
  map.blocks.push_back({"B1", sq(0), LandUseClass::make(ParentClass::Residential, std::nullopt)});
  map.blocks.push_back({"B2", sq(2), std::nullopt});
  return map;
}

const nlohmann::json& block_props(const nlohmann::json& doc, const std::string& id) {
  for (const auto& f : doc["features"]) {
    if (f["properties"]["kind"] == "block" && f["properties"]["block_id"] == id) return f["properties"];
  }
  throw std::runtime_error("block not found");
}

}  // namespace

TEST_CASE("exit codes") {
  const auto dir = scratch_dir("cli-exit");
  CHECK(run_cli("ingest -i " + q(dir / "missing.jsonl") + " -o " + q(dir / "out.jsonl")) == 2);
  CHECK(run_cli(conf() + " --classifier.alpha 0 run -w " + q(dir / "w")) == 3);
  CHECK(run_cli(conf() + " --split.test_fraction 1.5 train -m " + q(dir / "m.json")) == 3);
  CHECK(run_cli("--config " + q(dir / "nope.conf") + " run -w " + q(dir / "w")) == 2);
  CHECK(run_cli("frobnicate") == 3);

  write_file(dir / "broken.tsv", "hola\tmundo\nsin-tab\n");
  CHECK(run_cli(conf() + " --paths.suggestions " + q(dir / "broken.tsv") + " train -m " + q(dir / "m.json")) == 2);

  write_file(dir / "noseed.conf", read_file(testsupport::data_dir() / "landuse.conf"));
  std::string text = read_file(dir / "noseed.conf");
  text.replace(text.find("split.seed = 42"), 15, "");
  const fs::path base = fs::absolute(testsupport::data_dir());
  // Relative paths resolve against the config's directory, so point them back at the data.
  std::string rebased;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("paths.", 0) == 0) {
      const auto eq = line.find("= ");
      line = line.substr(0, eq + 2) + (base / line.substr(eq + 2)).string();
    }
    rebased += line + "\n";
  }
  write_file(dir / "noseed.conf", rebased);
  CHECK(run_cli("--config " + q(dir / "noseed.conf") + " train -m " + q(dir / "m.json")) == 3);
  CHECK(run_cli("--config " + q(dir / "noseed.conf") + " --seed 42 train -m " + q(dir / "m.json")) == 0);
}

TEST_CASE("ingest removes empty, numeric and duplicate posts") {
  const auto dir = scratch_dir("cli-ingest");
  std::string posts;
  posts += raw("1", "Almuerzo en el mercado");
  posts += raw("2", "Almuerzo en el mercado");  // duplicate
  posts += raw("3", "2019 !!");                 // no words
  posts += raw("4", "hola");                    // single token
  posts += raw("5", "Clase de historia hoy");
  posts += raw("6", "Misa en la catedral");
  posts += raw("7", "Partido en el estadio");
  posts += raw("8", "Cena con amigos");
  posts += raw("9", "Trabajando en la oficina");
  posts += raw("10", "Paseo por el parque");
  write_file(dir / "posts.jsonl", posts);
  const auto s = cmd_ingest(dir / "posts.jsonl", dir / "out.jsonl");
  CHECK(s.loaded == 10);
  CHECK(s.retained == 7);
  CHECK(s.removed == 3);
  CHECK(run_cli("ingest -i " + q(dir / "posts.jsonl") + " -o " + q(dir / "cli.jsonl")) == 0);
  CHECK(read_file(dir / "cli.jsonl") == read_file(dir / "out.jsonl"));

  write_file(dir / "empty.jsonl", "");
  CHECK(run_cli("ingest -i " + q(dir / "empty.jsonl") + " -o " + q(dir / "empty-out.jsonl")) == 0);
  CHECK(read_file(dir / "empty-out.jsonl").empty());
}

TEST_CASE("run is byte-deterministic and sweeps ten configurations") {
  const auto dir = scratch_dir("cli-run");
  REQUIRE(run_cli(conf() + " run --sweep -w " + q(dir / "a")) == 0);
  REQUIRE(run_cli(conf() + " run --sweep -w " + q(dir / "b")) == 0);
  for (const char* name : {"model.json", "report.json", "report.txt", "labeled.jsonl", "map.geojson"}) {
    CAPTURE(name);
    CHECK(read_file(dir / "a" / name) == read_file(dir / "b" / name));
  }
  const auto report = nlohmann::json::parse(read_file(dir / "a" / "report.json"));
  CHECK(report["rows"].size() == 10);
}

TEST_CASE("separate verbs match the in-process pipeline") {
  const auto dir = scratch_dir("cli-verbs");
  const auto config = load_config(testsupport::data_dir() / "landuse.conf");
  const auto summary = cmd_run(config, dir / "lib", false);
  CHECK(summary.preprocessed == summary.ingest.retained);

  const auto w = dir / "cli";
  fs::create_directories(w);
  REQUIRE(run_cli(conf() + " ingest -o " + q(w / "ingested.jsonl")) == 0);
  REQUIRE(run_cli(conf() + " preprocess -i " + q(w / "ingested.jsonl") + " -o " + q(w / "clean.jsonl")) == 0);
  REQUIRE(run_cli(conf() + " geofilter -i " + q(w / "clean.jsonl") + " -o " + q(w / "geofiltered.jsonl")) == 0);
  REQUIRE(run_cli(conf() + " train -m " + q(w / "model.json") + " -r " + q(w / "report.json")) == 0);
  REQUIRE(run_cli(conf() + " classify -i " + q(w / "geofiltered.jsonl") + " -m " + q(w / "model.json") + " -o " +
                  q(w / "labeled.jsonl")) == 0);
  REQUIRE(run_cli(conf() + " export-geojson -i " + q(w / "labeled.jsonl") + " -o " + q(w / "map.geojson")) == 0);
  for (const char* name : {"ingested.jsonl", "clean.jsonl", "geofiltered.jsonl", "model.json", "report.json",
                           "labeled.jsonl", "map.geojson"}) {
    CAPTURE(name);
    CHECK(read_file(w / name) == read_file(dir / "lib" / name));
  }

  // A feature override that disagrees with the saved model is a config error.
  CHECK(run_cli(conf() + " --features.ngram_max 1 classify -i " + q(w / "geofiltered.jsonl") + " -m " +
                q(w / "model.json") + " -o " + q(w / "x.jsonl")) == 3);

  const auto rows = read_labeled_rows(w / "labeled.jsonl");
  const auto galeria = std::find_if(rows.begin(), rows.end(), [](const LabeledRow& r) { return r.id == "a006"; });
  REQUIRE(galeria != rows.end());
  CHECK(galeria->label.parent() == ParentClass::IndustrialOffices);
}

TEST_CASE("block majority in the exported map") {
  const auto map = two_blocks();
  std::vector<LabeledRow> rows = {labeled("1", ParentClass::Commercial, "B1"), labeled("2", ParentClass::Commercial, "B1"),
                                  labeled("3", ParentClass::Commercial, "B1"), labeled("4", ParentClass::Residential, "B1")};
  auto doc = nlohmann::json::parse(export_geojson(rows, map));
  CHECK(block_props(doc, "B1")["predicted_label"] == "Commercial");
  CHECK(block_props(doc, "B1")["post_count"] == 4);
  CHECK(block_props(doc, "B1")["cadastre_label"] == "Residential");
  CHECK(block_props(doc, "B2")["predicted_label"].is_null());
  CHECK(block_props(doc, "B2")["post_count"] == 0);
  CHECK(block_props(doc, "B2")["cadastre_label"].is_null());

  rows.erase(rows.begin() + 1, rows.begin() + 3);  // one Commercial, one Residential
  doc = nlohmann::json::parse(export_geojson(rows, map));
  CHECK(block_props(doc, "B1")["predicted_label"] == "NonClassified");

  std::size_t points = 0;
  for (const auto& f : doc["features"]) points += f["properties"]["kind"] == "post";
  CHECK(points == rows.size());
}
