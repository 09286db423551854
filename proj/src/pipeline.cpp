#include "rcgcat/pipeline.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "rcgcat/dataset.hpp"
#include "rcgcat/error.hpp"
#include "rcgcat/hash.hpp"
#include "rcgcat/parallel.hpp"
#include "rcgcat/rng.hpp"

namespace fs = std::filesystem;

namespace rcgcat {

namespace {

constexpr const char* kArtifactOrder[] = {"config.json",  "rcgs.json",     "mined.json",
                                          "refined.json", "features.json", "model.json"};

// Fail-fast guard against concurrent runs on the same output directory.
class DirLock {
 public:
  explicit DirLock(const fs::path& dir) : path_(dir / ".lock") {
    std::error_code ec;
    fs::create_directories(dir, ec);
    FILE* f = std::fopen(path_.string().c_str(), "wx");
    if (!f)
      throw DataError("output dir is locked by another run (remove " + path_.string() +
                      " if stale)");
    std::fclose(f);
  }
  ~DirLock() {
    std::error_code ec;
    fs::remove(path_, ec);
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  fs::path path_;
};

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const DataError& e) {
    throw DataError(std::string("stage '") + name + "': " + e.what());
  }
}

struct CorpusArtifact {
  LabeledCorpus corpus;
  std::vector<std::string> ids;
};

json corpus_to_json(const CorpusArtifact& c) {
  json items = json::array();
  for (std::size_t i = 0; i < c.corpus.rcgs.size(); ++i) {
    items.push_back(json{{"id", c.ids[i]},
                         {"label", c.corpus.labels[i]},
                         {"rcg", rcg_to_json(c.corpus.rcgs[i])}});
  }
  return json{{"kind", "rcg_corpus"}, {"items", items}};
}

CorpusArtifact corpus_from_json(const json& j) {
  CorpusArtifact c;
  for (const auto& item : j.at("items")) {
    c.ids.push_back(item.at("id").get<std::string>());
    c.corpus.labels.push_back(item.at("label").get<std::string>());
    c.corpus.rcgs.push_back(rcg_from_json(item.at("rcg")));
  }
  if (c.corpus.rcgs.empty()) throw DataError("rcg corpus artifact is empty");
  return c;
}

json inputs_to_json(const Dataset& ds) {
  json inputs = json::array();
  for (const DatasetItem& item : ds.items)
    inputs.push_back(json{{"id", item.id}, {"hash", hash_file(item.path)}});
  return inputs;
}

// predict against in-memory artifacts; shared by run_predict and run_eval.
// The query graph must outlive ctx use (the context caches by graph identity).
json predict_one(const Rcg& g, const std::string& image_id, const PipelineConfig& config,
                 const LabeledCorpus& training, const std::vector<RefinedStructure>& refined,
                 const SvmModel& model, DistanceContext& ctx) {
  const FeatureVector fv =
      quantize(g, training, refined, config.quantization.lambda, ctx, image_id);
  if (fv.alphas.size() != model.weights.at(0).size())
    throw DataError("feature dimension drifted against the persisted model");
  const Prediction pred = svm_predict(model, fv.alphas);
  json scores = json::object();
  for (std::size_t c = 0; c < model.classes.size(); ++c)
    scores[model.classes[c]] = pred.scores[c];
  return json{{"kind", "prediction"},
              {"image", image_id},
              {"label", pred.label},
              {"scores", scores},
              {"feature", fv.alphas}};
}

struct ModelDirArtifacts {
  PipelineConfig config;
  CorpusArtifact corpus;
  std::vector<RefinedStructure> refined;
  SvmModel model;
  json manifest;
};

ModelDirArtifacts load_model_dir(const fs::path& model_dir) {
  ModelDirArtifacts a;
  a.manifest = read_json_file(model_dir / "manifest.json");
  a.config = config_from_json(read_json_file(model_dir / "config.json"));
  a.corpus = corpus_from_json(read_json_file(model_dir / "rcgs.json"));
  const json refined_json = read_json_file(model_dir / "refined.json");
  for (const auto& r : refined_json.at("structures")) a.refined.push_back(refined_from_json(r));
  if (a.refined.empty()) throw DataError("refined.json holds no structures");
  a.model = model_from_json(read_json_file(model_dir / "model.json"));
  const auto expected_dim = a.manifest.at("feature_dim").get<std::size_t>();
  if (a.model.weights.at(0).size() != expected_dim ||
      a.corpus.corpus.rcgs.size() != expected_dim)
    throw DataError("artifact dimensions drifted against the manifest");
  return a;
}

json eval_report(const std::map<std::string, std::pair<int, int>>& per_class_counts) {
  json per_class = json::object();
  double rate_sum = 0.0;
  int total = 0, total_correct = 0;
  for (const auto& [label, counts] : per_class_counts) {
    const auto [correct, count] = counts;
    const double rate = count > 0 ? static_cast<double>(correct) / count : 0.0;
    per_class[label] = json{{"n", count}, {"correct", correct}, {"rate", rate}};
    rate_sum += rate;
    total += count;
    total_correct += correct;
  }
  return json{{"kind", "eval_report"},
              {"per_class", per_class},
              {"average", rate_sum / static_cast<double>(per_class_counts.size())},
              {"n", total},
              {"correct", total_correct}};
}

}  // namespace

void validate_config(const PipelineConfig& c) {
  if (c.segmentation.k < 1) throw DataError("config: segmentation.k must be >= 1");
  if (!(c.segmentation.fuzziness > 1.0))
    throw DataError("config: segmentation.fuzziness must be > 1");
  if (!(c.segmentation.tol > 0.0)) throw DataError("config: segmentation.tol must be > 0");
  if (c.segmentation.max_iter < 1) throw DataError("config: segmentation.max_iter must be >= 1");
  if (c.segmentation.min_pixels < 1)
    throw DataError("config: segmentation.min_pixels must be >= 1");
  const int b = c.features.bins_per_channel;
  if (b != 2 && b != 4 && b != 8 && b != 16)
    throw DataError("config: features.bins_per_channel must be one of 2,4,8,16");
  if (!(c.mining.min_support > 0.0 && c.mining.min_support <= 1.0))
    throw DataError("config: mining.min_support must be in (0,1]");
  if (c.mining.max_structure_size < 2 || c.mining.max_structure_size > kMaxStructureSize)
    throw DataError("config: mining.max_structure_size must be in [2," +
                    std::to_string(kMaxStructureSize) + "]");
  if (!(c.quantization.lambda > 0.0)) throw DataError("config: quantization.lambda must be > 0");
  if (!(c.svm.C > 0.0)) throw DataError("config: svm.C must be > 0");
  if (c.svm.epochs < 1) throw DataError("config: svm.epochs must be >= 1");
}

json config_to_json(const PipelineConfig& c) {
  return json{
      {"kind", "pipeline_config"},
      {"segmentation",
       {{"k", c.segmentation.k},
        {"fuzziness", c.segmentation.fuzziness},
        {"tol", c.segmentation.tol},
        {"max_iter", c.segmentation.max_iter},
        {"min_pixels", c.segmentation.min_pixels},
        {"seed", c.segmentation.seed}}},
      {"features", {{"bins_per_channel", c.features.bins_per_channel}}},
      {"mining",
       {{"min_support", c.mining.min_support},
        {"max_structure_size", c.mining.max_structure_size}}},
      {"refinement",
       {{"delta_sd", c.refinement.delta_sd},
        {"delta_sc", c.refinement.delta_sc},
        {"msc_removal", c.refinement.removal == MscRemoval::Above ? "above" : "below"}}},
      {"quantization", {{"lambda", c.quantization.lambda}}},
      {"svm", {{"C", c.svm.C}, {"epochs", c.svm.epochs}, {"seed", c.svm.seed}}}};
}

PipelineConfig config_from_json(const json& j) {
  PipelineConfig c;
  if (j.contains("segmentation")) {
    const auto& s = j.at("segmentation");
    c.segmentation.k = s.value("k", c.segmentation.k);
    c.segmentation.fuzziness = s.value("fuzziness", c.segmentation.fuzziness);
    c.segmentation.tol = s.value("tol", c.segmentation.tol);
    c.segmentation.max_iter = s.value("max_iter", c.segmentation.max_iter);
    c.segmentation.min_pixels = s.value("min_pixels", c.segmentation.min_pixels);
    c.segmentation.seed = s.value("seed", c.segmentation.seed);
  }
  if (j.contains("features"))
    c.features.bins_per_channel =
        j.at("features").value("bins_per_channel", c.features.bins_per_channel);
  if (j.contains("mining")) {
    const auto& m = j.at("mining");
    c.mining.min_support = m.value("min_support", c.mining.min_support);
    c.mining.max_structure_size = m.value("max_structure_size", c.mining.max_structure_size);
  }
  if (j.contains("refinement")) {
    const auto& r = j.at("refinement");
    c.refinement.delta_sd = r.value("delta_sd", c.refinement.delta_sd);
    c.refinement.delta_sc = r.value("delta_sc", c.refinement.delta_sc);
    const std::string removal = r.value("msc_removal", std::string("above"));
    if (removal == "above")
      c.refinement.removal = MscRemoval::Above;
    else if (removal == "below")
      c.refinement.removal = MscRemoval::Below;
    else
      throw DataError("config: refinement.msc_removal must be 'above' or 'below'");
  }
  if (j.contains("quantization"))
    c.quantization.lambda = j.at("quantization").value("lambda", c.quantization.lambda);
  if (j.contains("svm")) {
    const auto& s = j.at("svm");
    c.svm.C = s.value("C", c.svm.C);
    c.svm.epochs = s.value("epochs", c.svm.epochs);
    c.svm.seed = s.value("seed", c.svm.seed);
  }
  validate_config(c);
  return c;
}

Rcg image_to_rcg(const Image& image, const PipelineConfig& config, std::string source) {
  const auto& s = config.segmentation;
  const ClusterMap clusters =
      fuzzy_cmeans(image, s.k, s.fuzziness, s.tol, s.max_iter, s.seed);
  const RegionMap grown = region_grow(clusters, image.width, image.height);
  const RegionMap regions = merge_small_regions(grown, s.min_pixels);
  return build_rcg(image, regions, config.features.bins_per_channel, std::move(source));
}

void run_train(const fs::path& dataset_root, const PipelineConfig& config,
               const fs::path& out_dir, const TrainOptions& options) {
  validate_config(config);
  DirLock lock(out_dir);

  const Dataset ds = stage("scan", [&] { return scan_dataset(dataset_root); });
  const json inputs = stage("scan", [&] { return inputs_to_json(ds); });
  const json config_json = config_to_json(config);

  // Resume bookkeeping: an artifact may be reused when the previous manifest
  // matches this run's config and inputs and the file hash is unchanged.
  json previous_manifest;
  bool resume_valid = false;
  if (options.resume && fs::exists(out_dir / "manifest.json")) {
    try {
      previous_manifest = read_json_file(out_dir / "manifest.json");
      resume_valid = previous_manifest.at("config") == config_json &&
                     previous_manifest.at("inputs") == inputs;
    } catch (const DataError&) {
      resume_valid = false;
    }
  }
  auto reusable = [&](const char* name) {
    if (!resume_valid) return false;
    const fs::path path = out_dir / name;
    if (!fs::exists(path)) return false;
    const auto& artifacts = previous_manifest.at("artifacts");
    return artifacts.contains(name) &&
           artifacts.at(name).get<std::string>() == hash_file(path);
  };
  auto persist = [&](const char* name, const json& j) { write_json_file(j, out_dir / name); };

  persist("config.json", config_json);

  CorpusArtifact corpus_art = stage("rcgs", [&]() -> CorpusArtifact {
    if (reusable("rcgs.json")) return corpus_from_json(read_json_file(out_dir / "rcgs.json"));
    CorpusArtifact c;
    c.corpus.rcgs.resize(ds.items.size());
    c.corpus.labels.resize(ds.items.size());
    c.ids.resize(ds.items.size());
    parallel_for(ds.items.size(), options.jobs, [&](std::size_t i) {
      const DatasetItem& item = ds.items[i];
      c.corpus.rcgs[i] = image_to_rcg(load_image(item.path), config, item.id);
      c.corpus.labels[i] = item.label;
      c.ids[i] = item.id;
    });
    persist("rcgs.json", corpus_to_json(c));
    return c;
  });

  const std::vector<MinedStructure> mined = stage("mine", [&]() -> std::vector<MinedStructure> {
    if (reusable("mined.json")) {
      std::vector<MinedStructure> loaded;
      const json artifact = read_json_file(out_dir / "mined.json");
      for (const auto& m : artifact.at("structures")) loaded.push_back(mined_from_json(m));
      return loaded;
    }
    auto result = mine_frequent(corpus_art.corpus.rcgs, config.mining.min_support,
                                config.mining.max_structure_size, options.jobs);
    json structures = json::array();
    for (const MinedStructure& m : result) structures.push_back(mined_to_json(m));
    persist("mined.json", json{{"kind", "mined_structures"},
                               {"min_support", config.mining.min_support},
                               {"max_structure_size", config.mining.max_structure_size},
                               {"structures", structures}});
    return result;
  });
  if (mined.empty())
    throw DataError("stage 'mine': no frequent structures; lower mining.min_support");

  DistanceContext ctx;
  const std::vector<RefinedStructure> refined =
      stage("refine", [&]() -> std::vector<RefinedStructure> {
        if (reusable("refined.json")) {
          std::vector<RefinedStructure> loaded;
          const json artifact = read_json_file(out_dir / "refined.json");
          for (const auto& r : artifact.at("structures")) loaded.push_back(refined_from_json(r));
          return loaded;
        }
        auto result =
            refine_structures(mined, corpus_art.corpus, config.refinement, ctx, options.jobs);
        json structures = json::array();
        for (const RefinedStructure& r : result) structures.push_back(refined_to_json(r));
        persist("refined.json", json{{"kind", "refined_structures"},
                                     {"delta_sd", config.refinement.delta_sd},
                                     {"delta_sc", config.refinement.delta_sc},
                                     {"structures", structures}});
        return result;
      });
  if (refined.empty())
    throw DataError(
        "stage 'refine': refinement kept no structures; adjust refinement.delta_sd/delta_sc");

  const json features_json = stage("quantize", [&]() -> json {
    if (reusable("features.json")) return read_json_file(out_dir / "features.json");
    const std::vector<FeatureVector> rows = quantize_corpus(
        corpus_art.corpus, refined, config.quantization.lambda, ctx, options.jobs);
    const json artifact = feature_matrix_to_json(rows, corpus_art.corpus.labels, corpus_art.ids);
    persist("features.json", artifact);
    return artifact;
  });

  stage("train_svm", [&]() -> int {
    if (reusable("model.json")) return 0;
    const auto matrix = features_json.at("matrix").get<std::vector<std::vector<double>>>();
    const SvmModel model = svm_train(matrix, corpus_art.corpus.labels, config.svm);
    persist("model.json", model_to_json(model));
    return 0;
  });

  json artifacts = json::object();
  for (const char* name : kArtifactOrder) artifacts[name] = hash_file(out_dir / name);
  write_json_file(json{{"kind", "manifest"},
                       {"format_version", 1},
                       {"dataset_root", dataset_root.string()},
                       {"config", config_json},
                       {"inputs", inputs},
                       {"artifacts", artifacts},
                       {"feature_dim", corpus_art.corpus.rcgs.size()},
                       {"classes", corpus_art.corpus.classes()}},
                  out_dir / "manifest.json");
}

json run_predict(const fs::path& model_dir, const fs::path& image_path, int jobs,
                 const fs::path& config_override) {
  (void)jobs;  // a single prediction gains nothing from stage parallelism
  const ModelDirArtifacts a = load_model_dir(model_dir);
  if (!config_override.empty()) {
    const PipelineConfig other = config_from_json(read_json_file(config_override));
    if (other.features.bins_per_channel != a.config.features.bins_per_channel)
      throw DataError("config override bins_per_channel does not match the trained model");
  }
  DistanceContext ctx;
  const Rcg query = image_to_rcg(load_image(image_path), a.config, image_path.string());
  return predict_one(query, image_path.string(), a.config, a.corpus.corpus, a.refined, a.model,
                     ctx);
}

json run_eval(const fs::path& model_dir, const fs::path& dataset_root,
              const EvalOptions& options) {
  const Dataset ds = scan_dataset(dataset_root);
  const ModelDirArtifacts a = load_model_dir(model_dir);
  const std::set<std::string> model_classes(a.model.classes.begin(), a.model.classes.end());
  for (const std::string& cls : ds.classes)
    if (!model_classes.count(cls))
      throw DataError("dataset class '" + cls + "' is unknown to the model");

  if (options.splits <= 0) {
    std::map<std::string, std::pair<int, int>> counts;
    for (const std::string& cls : ds.classes) counts[cls] = {0, 0};
    std::vector<std::string> predicted(ds.items.size());
    std::vector<Rcg> queries(ds.items.size());
    DistanceContext ctx;
    parallel_for(ds.items.size(), options.jobs, [&](std::size_t i) {
      queries[i] = image_to_rcg(load_image(ds.items[i].path), a.config, ds.items[i].id);
    });
    parallel_for(ds.items.size(), options.jobs, [&](std::size_t i) {
      const json p = predict_one(queries[i], ds.items[i].id, a.config, a.corpus.corpus,
                                 a.refined, a.model, ctx);
      predicted[i] = p.at("label").get<std::string>();
    });
    for (std::size_t i = 0; i < ds.items.size(); ++i) {
      auto& [correct, count] = counts[ds.items[i].label];
      ++count;
      if (predicted[i] == ds.items[i].label) ++correct;
    }
    return eval_report(counts);
  }

  // Repeated-split mode: retrain on a stratified split per seed and report
  // mean +- std of the recognition rates.
  std::map<std::string, std::vector<double>> class_rates;
  std::vector<double> averages;
  for (int split = 0; split < options.splits; ++split) {
    Rng rng(mix_seed(options.seed, static_cast<std::uint64_t>(split)));
    const fs::path work = fs::temp_directory_path() /
                          ("rcgcat_split_" + std::to_string(::getpid()) + "_" +
                           std::to_string(split) + "_" + hash_hex(dataset_root.string()));
    const fs::path train_root = work / "train";
    fs::create_directories(train_root);
    std::vector<const DatasetItem*> test_items;
    for (const std::string& cls : ds.classes) {
      std::vector<const DatasetItem*> members;
      for (const DatasetItem& item : ds.items)
        if (item.label == cls) members.push_back(&item);
      std::vector<std::size_t> order(members.size());
      for (std::size_t i = 0; i < members.size(); ++i) order[i] = i;
      rng.shuffle(order);
      auto take = static_cast<std::size_t>(
          std::lround(options.train_frac * static_cast<double>(members.size())));
      take = std::clamp<std::size_t>(take, 1, members.size() - 1);
      fs::create_directories(train_root / cls);
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (i < take)
          fs::copy_file(members[order[i]]->path,
                        train_root / cls / members[order[i]]->path.filename());
        else
          test_items.push_back(members[order[i]]);
      }
    }
    const fs::path split_model = work / "model";
    TrainOptions train_options;
    train_options.jobs = options.jobs;
    run_train(train_root, a.config, split_model, train_options);

    const ModelDirArtifacts split_art = load_model_dir(split_model);
    std::map<std::string, std::pair<int, int>> counts;
    for (const std::string& cls : ds.classes) counts[cls] = {0, 0};
    DistanceContext ctx;
    std::vector<std::string> predicted(test_items.size());
    std::vector<Rcg> queries(test_items.size());
    parallel_for(test_items.size(), options.jobs, [&](std::size_t i) {
      queries[i] =
          image_to_rcg(load_image(test_items[i]->path), split_art.config, test_items[i]->id);
    });
    parallel_for(test_items.size(), options.jobs, [&](std::size_t i) {
      const json p = predict_one(queries[i], test_items[i]->id, split_art.config,
                                 split_art.corpus.corpus, split_art.refined, split_art.model, ctx);
      predicted[i] = p.at("label").get<std::string>();
    });
    for (std::size_t i = 0; i < test_items.size(); ++i) {
      auto& [correct, count] = counts[test_items[i]->label];
      ++count;
      if (predicted[i] == test_items[i]->label) ++correct;
    }
    const json report = eval_report(counts);
    for (const auto& [cls, entry] : report.at("per_class").items())
      class_rates[cls].push_back(entry.at("rate").get<double>());
    averages.push_back(report.at("average").get<double>());
    fs::remove_all(work);
  }

  auto mean_std = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size());
    return json{{"mean", mean}, {"std", std::sqrt(var)}};
  };
  json per_class = json::object();
  for (const auto& [cls, rates] : class_rates) per_class[cls] = mean_std(rates);
  return json{{"kind", "eval_splits_report"},
              {"splits", options.splits},
              {"train_frac", options.train_frac},
              {"per_class", per_class},
              {"average", mean_std(averages)}};
}

std::string format_eval_table(const json& report) {
  std::string out;
  char line[128];
  if (report.at("kind") == "eval_report") {
    std::snprintf(line, sizeof(line), "%-16s %8s %6s\n", "class", "rate", "n");
    out += line;
    for (const auto& [cls, entry] : report.at("per_class").items()) {
      std::snprintf(line, sizeof(line), "%-16s %8.3f %6d\n", cls.c_str(),
                    entry.at("rate").get<double>(), entry.at("n").get<int>());
      out += line;
    }
    std::snprintf(line, sizeof(line), "%-16s %8.3f %6d\n", "average",
                  report.at("average").get<double>(), report.at("n").get<int>());
    out += line;
  } else {
    std::snprintf(line, sizeof(line), "%-16s %8s %8s\n", "class", "mean", "std");
    out += line;
    for (const auto& [cls, entry] : report.at("per_class").items()) {
      std::snprintf(line, sizeof(line), "%-16s %8.3f %8.3f\n", cls.c_str(),
                    entry.at("mean").get<double>(), entry.at("std").get<double>());
      out += line;
    }
    const auto& avg = report.at("average");
    std::snprintf(line, sizeof(line), "%-16s %8.3f %8.3f\n", "average",
                  avg.at("mean").get<double>(), avg.at("std").get<double>());
    out += line;
  }
  return out;
}

}  // namespace rcgcat
