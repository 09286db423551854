#include "rcgcat/serial.hpp"

#include <fstream>
#include <sstream>

#include "rcgcat/error.hpp"

namespace rcgcat {

namespace {

std::vector<std::pair<int, int>> edges_from_json(const json& j) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return edges;
}

json edges_to_json(const std::vector<std::pair<int, int>>& edges) {
  json out = json::array();
  for (auto [a, b] : edges) out.push_back(json::array({a, b}));
  return out;
}

}  // namespace

json rcg_to_json(const Rcg& g) {
  json vertices = json::array();
  for (const RegionFeature& f : g.vertices()) vertices.push_back(f.histogram);
  return json{{"vertices", vertices}, {"edges", edges_to_json(g.edges())}, {"source", g.source()}};
}

Rcg rcg_from_json(const json& j) {
  std::vector<RegionFeature> vertices;
  for (const auto& h : j.at("vertices"))
    vertices.push_back(RegionFeature{h.get<std::vector<double>>()});
  return Rcg(std::move(vertices), edges_from_json(j.at("edges")),
             j.value("source", std::string{}));
}

json region_map_to_json(const RegionMap& rm) {
  return json{{"width", rm.width},
              {"height", rm.height},
              {"region_ids", rm.region_ids},
              {"K", rm.region_count}};
}

RegionMap region_map_from_json(const json& j) {
  RegionMap rm;
  rm.width = j.at("width").get<int>();
  rm.height = j.at("height").get<int>();
  rm.region_ids = j.at("region_ids").get<std::vector<int>>();
  rm.region_count = j.at("K").get<int>();
  if (rm.region_ids.size() != static_cast<std::size_t>(rm.width) * rm.height)
    throw DataError("region map: region_ids does not cover width*height");
  rm.region_pixels.assign(static_cast<std::size_t>(rm.region_count), {});
  for (std::size_t p = 0; p < rm.region_ids.size(); ++p) {
    const int id = rm.region_ids[p];
    if (id < 0 || id >= rm.region_count) throw DataError("region map: region id out of range");
    rm.region_pixels[static_cast<std::size_t>(id)].push_back(static_cast<int>(p));
  }
  return rm;
}

json structure_to_json(const Structure& s) {
  return json{{"n", s.n}, {"edges", edges_to_json(s.edges)}, {"canon", s.canon}};
}

Structure structure_from_json(const json& j) {
  Structure s = make_structure(j.at("n").get<int>(), edges_from_json(j.at("edges")));
  if (j.contains("canon") && j.at("canon").get<std::string>() != s.canon)
    throw DataError("structure: stored canon does not match edges");
  return s;
}

json mined_to_json(const MinedStructure& m) {
  json j = structure_to_json(m.structure);
  j["support"] = m.support;
  return j;
}

MinedStructure mined_from_json(const json& j) {
  MinedStructure m;
  m.structure = structure_from_json(j);
  m.support = j.at("support").get<double>();
  if (m.support < 0.0 || m.support > 1.0) throw DataError("mined structure: support out of [0,1]");
  return m;
}

json refined_to_json(const RefinedStructure& r) {
  json j = mined_to_json(r.mined);
  j["msd"] = r.msd;
  j["rank"] = r.rank;
  return j;
}

RefinedStructure refined_from_json(const json& j) {
  RefinedStructure r;
  r.mined = mined_from_json(j);
  r.msd = j.at("msd").get<double>();
  r.rank = j.at("rank").get<int>();
  return r;
}

json model_to_json(const SvmModel& m) {
  return json{{"kind", "svm_model"},
              {"format_version", 1},
              {"classes", m.classes},
              {"weights", m.weights},
              {"biases", m.biases},
              {"config",
               {{"C", m.config.C}, {"epochs", m.config.epochs}, {"seed", m.config.seed}}},
              {"objective_history", m.objective_history}};
}

SvmModel model_from_json(const json& j) {
  SvmModel m;
  m.classes = j.at("classes").get<std::vector<std::string>>();
  m.weights = j.at("weights").get<std::vector<std::vector<double>>>();
  m.biases = j.at("biases").get<std::vector<double>>();
  m.config.C = j.at("config").at("C").get<double>();
  m.config.epochs = j.at("config").at("epochs").get<int>();
  m.config.seed = j.at("config").at("seed").get<std::uint64_t>();
  if (j.contains("objective_history"))
    m.objective_history = j.at("objective_history").get<std::vector<double>>();
  if (m.weights.size() != m.classes.size() || m.biases.size() != m.classes.size())
    throw DataError("svm model: class/weight/bias counts disagree");
  return m;
}

json synth_config_to_json(const SynthConfig& c) {
  json classes = json::array();
  for (const SynthClassSpec& spec : c.classes)
    classes.push_back(json{{"name", spec.name}, {"motif", spec.motif}});
  return json{{"kind", "synth_config"}, {"width", c.width},
              {"height", c.height},     {"count_per_class", c.count_per_class},
              {"noise", c.noise},       {"seed", c.seed},
              {"classes", classes}};
}

SynthConfig synth_config_from_json(const json& j) {
  SynthConfig c = default_synth_config();
  c.width = j.value("width", c.width);
  c.height = j.value("height", c.height);
  c.count_per_class = j.value("count_per_class", c.count_per_class);
  c.noise = j.value("noise", c.noise);
  c.seed = j.value("seed", c.seed);
  if (j.contains("classes")) {
    c.classes.clear();
    for (const auto& spec : j.at("classes"))
      c.classes.push_back(SynthClassSpec{spec.at("name").get<std::string>(),
                                         spec.at("motif").get<std::string>()});
  }
  return c;
}

json feature_matrix_to_json(const std::vector<FeatureVector>& rows,
                            const std::vector<std::string>& labels,
                            const std::vector<std::string>& train_ids) {
  json matrix = json::array();
  json ids = json::array();
  for (const FeatureVector& fv : rows) {
    matrix.push_back(fv.alphas);
    ids.push_back(fv.image_id);
  }
  return json{{"kind", "feature_matrix"},
              {"image_ids", ids},
              {"labels", labels},
              {"train_ids", train_ids},
              {"matrix", matrix}};
}

std::string feature_matrix_to_csv(const json& artifact) {
  std::ostringstream out;
  out << "image_id";
  for (const auto& id : artifact.at("train_ids")) out << "," << id.get<std::string>();
  out << "\n";
  const auto& ids = artifact.at("image_ids");
  const auto& matrix = artifact.at("matrix");
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out << ids.at(i).get<std::string>();
    for (const auto& v : matrix.at(i)) out << "," << v.dump();
    out << "\n";
  }
  return out.str();
}

void write_json_file(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw DataError("short write: " + path.string());
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("missing or unreadable artifact: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace rcgcat
