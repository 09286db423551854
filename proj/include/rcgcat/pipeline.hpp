#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "rcgcat/serial.hpp"

namespace rcgcat {

struct SegmentationParams {
  int k = 6;
  double fuzziness = 2.0;
  double tol = 1e-3;
  int max_iter = 300;
  int min_pixels = 8;
  std::uint64_t seed = 1;
};

struct FeatureParams {
  int bins_per_channel = 4;
};

struct MiningParams {
  double min_support = 0.2;
  int max_structure_size = 6;
};

struct QuantizeParams {
  double lambda = 0.5;
};

struct PipelineConfig {
  SegmentationParams segmentation;
  FeatureParams features;
  MiningParams mining;
  RefineParams refinement;
  QuantizeParams quantization;
  SvmConfig svm;
};

void validate_config(const PipelineConfig& config);  // throws DataError
json config_to_json(const PipelineConfig& config);
PipelineConfig config_from_json(const json& j);  // defaults for absent keys

// segment -> regions -> RCG under one config.
Rcg image_to_rcg(const Image& image, const PipelineConfig& config, std::string source);

struct TrainOptions {
  int jobs = 1;
  bool resume = false;  // reuse stage artifacts whose hash matches the manifest
};

// Persists config.json, rcgs.json, mined.json, refined.json, features.json,
// model.json and manifest.json under out_dir. Deterministic given inputs,
// config and seeds. A lock file rejects concurrent runs on the same out_dir.
void run_train(const std::filesystem::path& dataset_root, const PipelineConfig& config,
               const std::filesystem::path& out_dir, const TrainOptions& options = {});

// {label, scores, feature, image}. config_override, when non-empty, is
// checked for feature compatibility against the persisted manifest.
json run_predict(const std::filesystem::path& model_dir, const std::filesystem::path& image_path,
                 int jobs = 1, const std::filesystem::path& config_override = {});

struct EvalOptions {
  int jobs = 1;
  int splits = 0;          // 0 = evaluate the dataset against the given model
  double train_frac = 0.5; // repeated-split mode only
  std::uint64_t seed = 1;
};

json run_eval(const std::filesystem::path& model_dir, const std::filesystem::path& dataset_root,
              const EvalOptions& options = {});

std::string format_eval_table(const json& report);

}  // namespace rcgcat
