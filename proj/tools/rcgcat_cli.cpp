#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rcgcat/error.hpp"
#include "rcgcat/pipeline.hpp"
#include "rcgcat/serial.hpp"
#include "rcgcat/synth.hpp"

namespace fs = std::filesystem;
using rcgcat::json;

namespace {

rcgcat::PipelineConfig load_pipeline_config(const std::string& path) {
  if (path.empty()) {
    rcgcat::PipelineConfig config;
    return config;
  }
  return rcgcat::config_from_json(rcgcat::read_json_file(path));
}

void print_inspect(const json& artifact, bool csv) {
  const std::string kind = artifact.value("kind", std::string("unknown"));
  if (csv) {
    if (kind != "feature_matrix")
      throw rcgcat::UsageError("--csv only applies to feature_matrix artifacts");
    std::cout << rcgcat::feature_matrix_to_csv(artifact);
    return;
  }
  std::cout << "kind: " << kind << "\n";
  if (kind == "rcg_corpus") {
    const auto& items = artifact.at("items");
    std::cout << "graphs: " << items.size() << "\n";
    for (const auto& item : items) {
      const rcgcat::Rcg g = rcgcat::rcg_from_json(item.at("rcg"));
      const rcgcat::DegreeStats stats = rcgcat::degree_stats(g);
      std::printf("  %s [%s] vertices=%d edges=%zu mean_degree=%.2f max_degree=%d\n",
                  item.at("id").get<std::string>().c_str(),
                  item.at("label").get<std::string>().c_str(), g.size(), g.edges().size(),
                  stats.mean_degree, stats.max_degree);
    }
    return;
  }
  if (kind == "mined_structures" || kind == "refined_structures") {
    const auto& structures = artifact.at("structures");
    std::cout << "structures: " << structures.size() << "\n";
    for (const auto& s : structures) {
      std::cout << "  " << s.at("canon").get<std::string>() << " support=" <<
          s.at("support").get<double>();
      if (s.contains("msd")) std::cout << " msd=" << s.at("msd").get<double>();
      std::cout << "\n";
    }
    return;
  }
  if (kind == "feature_matrix") {
    std::cout << "rows: " << artifact.at("matrix").size() << " x "
              << artifact.at("train_ids").size() << " (use --csv for the matrix)\n";
    return;
  }
  if (kind == "svm_model") {
    std::cout << "classes: ";
    for (const auto& c : artifact.at("classes")) std::cout << c.get<std::string>() << " ";
    std::cout << "\ndim: " << artifact.at("weights").at(0).size() << "\n";
    return;
  }
  std::cout << artifact.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Region-connected-graph image categorization pipeline"};
  app.require_subcommand(1);

  std::string config_path, out_path, dataset_root, model_dir, image_path, artifact_path;
  int jobs = 1;
  bool resume = false, as_json = false, as_csv = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int splits = 0;
  double train_frac = 0.5;

  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "override the relevant seeds")
        ->each([&](const std::string&) { seed_set = true; });
  };

  CLI::App* train = app.add_subcommand("train", "segment, mine, refine, quantize and fit the SVM");
  train->add_option("dataset", dataset_root, "dataset root (<root>/<class>/*.ppm)")->required();
  train->add_option("--out", out_path, "output model directory")->required();
  train->add_option("--config", config_path, "pipeline config JSON");
  train->add_option("--jobs", jobs, "worker threads for parallel stages");
  train->add_flag("--resume", resume, "reuse stage artifacts that match the manifest");
  add_seed(train);

  CLI::App* predict = app.add_subcommand("predict", "classify one image against a trained model");
  predict->add_option("model", model_dir, "model directory from train")->required();
  predict->add_option("image", image_path, "PPM image to classify")->required();
  predict->add_option("--config", config_path, "config to cross-check against the model");
  predict->add_option("--jobs", jobs, "worker threads");

  CLI::App* eval = app.add_subcommand("eval", "recognition rates over a labeled dataset");
  eval->add_option("model", model_dir, "model directory from train")->required();
  eval->add_option("dataset", dataset_root, "dataset root to evaluate")->required();
  eval->add_option("--splits", splits, "repeated-split mode: number of retrain/eval rounds");
  eval->add_option("--train-frac", train_frac, "train fraction for --splits");
  eval->add_option("--jobs", jobs, "worker threads");
  eval->add_option("--out", out_path, "also write the JSON report here");
  eval->add_flag("--json", as_json, "print JSON instead of the table");
  add_seed(eval);

  CLI::App* synth = app.add_subcommand("synth", "generate a labeled synthetic dataset");
  synth->add_option("--out", out_path, "dataset output directory")->required();
  synth->add_option("--config", config_path, "generator config JSON");
  add_seed(synth);

  CLI::App* init_config = app.add_subcommand("init-config", "emit the full default config");
  init_config->add_option("--out", out_path, "write to file instead of stdout");

  CLI::App* inspect = app.add_subcommand("inspect", "pretty-print a persisted artifact");
  inspect->add_option("artifact", artifact_path, "path to an artifact JSON file")->required();
  inspect->add_flag("--csv", as_csv, "dump a feature matrix as CSV");

  try {
    app.parse(argc, argv);

    if (train->parsed()) {
      rcgcat::PipelineConfig config = load_pipeline_config(config_path);
      if (seed_set) {
        config.segmentation.seed = seed;
        config.svm.seed = seed;
      }
      rcgcat::TrainOptions options;
      options.jobs = jobs;
      options.resume = resume;
      rcgcat::run_train(dataset_root, config, out_path, options);
      std::cout << "model written to " << out_path << "\n";
    } else if (predict->parsed()) {
      const json result = rcgcat::run_predict(model_dir, image_path, jobs, config_path);
      std::cout << result.dump(2) << "\n";
    } else if (eval->parsed()) {
      rcgcat::EvalOptions options;
      options.jobs = jobs;
      options.splits = splits;
      options.train_frac = train_frac;
      if (seed_set) options.seed = seed;
      const json report = rcgcat::run_eval(model_dir, dataset_root, options);
      if (!out_path.empty()) rcgcat::write_json_file(report, out_path);
      if (as_json)
        std::cout << report.dump(2) << "\n";
      else
        std::cout << rcgcat::format_eval_table(report);
    } else if (synth->parsed()) {
      rcgcat::SynthConfig config = config_path.empty()
                                       ? rcgcat::default_synth_config()
                                       : rcgcat::synth_config_from_json(
                                             rcgcat::read_json_file(config_path));
      if (seed_set) config.seed = seed;
      const rcgcat::Dataset ds = rcgcat::synth_dataset(config, out_path);
      std::cout << "wrote " << ds.items.size() << " images across " << ds.classes.size()
                << " classes to " << out_path << "\n";
    } else if (init_config->parsed()) {
      const json config = rcgcat::config_to_json(rcgcat::PipelineConfig{});
      if (out_path.empty())
        std::cout << config.dump(2) << "\n";
      else
        rcgcat::write_json_file(config, out_path);
    } else if (inspect->parsed()) {
      print_inspect(rcgcat::read_json_file(artifact_path), as_csv);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const rcgcat::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const rcgcat::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
