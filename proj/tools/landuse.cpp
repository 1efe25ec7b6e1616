// Command-line front end: ingest, preprocess, geofilter, train, classify,
// export-geojson and run (everything in sequence).

#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "landuse/commands.hpp"

namespace fs = std::filesystem;
using namespace landuse;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;

fs::path or_default(const std::string& flag, const fs::path& fallback, const char* key) {
  if (!flag.empty()) return fs::path(flag);
  if (fallback.empty()) throw ConfigError(std::string("no input given and ") + key + " is not set");
  return fallback;
}

void print_counts(std::ostream& out, const LabelCounts& counts) {
  std::size_t total = 0;
  for (const auto& [label, n] : counts) {
    out << "  " << to_string(label) << ": " << n << '\n';
    total += n;
  }
  out << "  total: " << total << '\n';
}

void print_warnings(std::ostream& err, const std::vector<std::string>& warnings, bool quiet) {
  if (quiet) return;
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Land-use classification of geo-tagged posts"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  app.add_option("--config", config_path, "Config file with section.key = value lines");
  app.add_option("--seed", seed, "Random seed for the train/test split (split.seed)");
  app.add_flag("--quiet", quiet, "Only print errors");

  std::map<std::string, std::string> overrides;
  for (const auto& key : RunConfig::keys()) {
    app.add_option("--" + key, overrides[key], "Override " + key)->group("Config overrides");
  }

  std::string input;
  std::string output;
  std::string model;
  std::string report;
  std::string workdir = "landuse-run";
  bool sweep = false;

  auto* ingest = app.add_subcommand("ingest", "Load, validate and deduplicate posts");
  ingest->add_option("-i,--input", input, "Raw posts JSONL (default paths.posts)");
  ingest->add_option("-o,--output", output, "Retained posts JSONL")->required();

  auto* preprocess_cmd = app.add_subcommand("preprocess", "Clean, correct, lemmatize and tag posts");
  preprocess_cmd->add_option("-i,--input", input, "Posts JSONL (default paths.posts)");
  preprocess_cmd->add_option("-o,--output", output, "Clean posts JSONL")->required();

  auto* geofilter = app.add_subcommand("geofilter", "Keep posts inside the region and assign blocks");
  geofilter->add_option("-i,--input", input, "Clean posts JSONL")->required();
  geofilter->add_option("-o,--output", output, "Block-assigned posts JSONL")->required();

  auto* train = app.add_subcommand("train", "Train the classifier and evaluate it on a held-out split");
  train->add_option("-m,--model", model, "Model output (default paths.model)");
  train->add_option("-r,--report", report, "Report JSON output; a .txt table is written next to it");
  train->add_flag("--sweep", sweep, "Evaluate the ten feature configurations");

  auto* classify = app.add_subcommand("classify", "Label block-assigned posts");
  classify->add_option("-i,--input", input, "Block-assigned posts JSONL")->required();
  classify->add_option("-m,--model", model, "Model file (default paths.model)");
  classify->add_option("-o,--output", output, "Labeled posts JSONL")->required();

  auto* export_cmd = app.add_subcommand("export-geojson", "Write labeled posts and blocks as GeoJSON");
  export_cmd->add_option("-i,--input", input, "Labeled posts JSONL")->required();
  export_cmd->add_option("-o,--output", output, "GeoJSON output")->required();

  auto* run = app.add_subcommand("run", "Run the whole pipeline");
  run->add_option("-w,--workdir", workdir, "Directory for every intermediate file");
  run->add_flag("--sweep", sweep, "Evaluate the ten feature configurations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  std::ostream& out = std::cout;
  try {
    RunConfig config;
    if (!config_path.empty()) config = load_config(config_path);
    for (const auto& key : RunConfig::keys()) {
      if (app.count("--" + key) > 0) config.set(key, overrides[key]);
    }
    if (seed) config.set("split.seed", std::to_string(*seed));

    if (ingest->parsed()) {
      const auto s = cmd_ingest(or_default(input, config.paths.posts, "paths.posts"), output);
      print_warnings(std::cerr, s.warnings, quiet);
      if (!quiet) out << "ingest: " << s.loaded << " loaded, " << s.retained << " retained, " << s.removed << " removed\n";
    } else if (preprocess_cmd->parsed()) {
      config.validate();
      const auto n = cmd_preprocess(config, or_default(input, config.paths.posts, "paths.posts"), output);
      if (!quiet) out << "preprocess: " << n << " posts\n";
    } else if (geofilter->parsed()) {
      const auto s = cmd_geofilter(config, input, output);
      if (!quiet) out << "geofilter: " << s.input << " posts, " << s.in_region << " in region, " << s.in_blocks << " in blocks\n";
    } else if (train->parsed()) {
      const auto trained = cmd_train(config, or_default(model, config.paths.model, "paths.model"), report, sweep);
      print_warnings(std::cerr, trained.warnings, quiet);
      if (!quiet) {
        out << "train: " << trained.train_size << " train, " << trained.test_size << " test\n";
        out << report_to_table(trained.rows);
      }
    } else if (classify->parsed()) {
      const fs::path model_path = or_default(model, config.paths.model, "paths.model");
      const auto loaded = load_model(model_path);
      for (const auto& key : config.assigned) {
        if (key.rfind("features.", 0) == 0 && !(config.features == loaded.first.config)) {
          throw ConfigError("feature settings differ from the ones the model was trained with");
        }
      }
      const auto counts = cmd_classify(input, model_path, output);
      if (!quiet) {
        out << "classify:\n";
        print_counts(out, counts);
      }
    } else if (export_cmd->parsed()) {
      if (config.paths.geojson.empty()) throw ConfigError("paths.geojson is not set");
      cmd_export_geojson(input, config.paths.geojson, output);
      if (!quiet) out << "export-geojson: wrote " << output << '\n';
    } else if (run->parsed()) {
      const auto s = cmd_run(config, workdir, sweep);
      print_warnings(std::cerr, s.ingest.warnings, quiet);
      if (!quiet) {
        out << "ingest: " << s.ingest.loaded << " loaded, " << s.ingest.retained << " retained\n";
        out << "geofilter: " << s.geofilter.input << " posts, " << s.geofilter.in_region << " in region, "
            << s.geofilter.in_blocks << " in blocks\n";
        out << report_to_table(s.evaluation);
        out << "classify:\n";
        print_counts(out, s.labels);
      }
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
