#pragma once

#include <filesystem>

#include <json.hpp>

#include "rcgcat/mine.hpp"
#include "rcgcat/quantize.hpp"
#include "rcgcat/rcg.hpp"
#include "rcgcat/refine.hpp"
#include "rcgcat/segment.hpp"
#include "rcgcat/structure.hpp"
#include "rcgcat/svm.hpp"
#include "rcgcat/synth.hpp"

namespace rcgcat {

using json = nlohmann::json;

json rcg_to_json(const Rcg& g);
Rcg rcg_from_json(const json& j);

json region_map_to_json(const RegionMap& rm);
RegionMap region_map_from_json(const json& j);

json structure_to_json(const Structure& s);
Structure structure_from_json(const json& j);

json mined_to_json(const MinedStructure& m);
MinedStructure mined_from_json(const json& j);

json refined_to_json(const RefinedStructure& r);
RefinedStructure refined_from_json(const json& j);

json model_to_json(const SvmModel& m);
SvmModel model_from_json(const json& j);

json synth_config_to_json(const SynthConfig& c);
SynthConfig synth_config_from_json(const json& j);

// Feature matrix <-> {image_ids, labels, train_ids, matrix}.
json feature_matrix_to_json(const std::vector<FeatureVector>& rows,
                            const std::vector<std::string>& labels,
                            const std::vector<std::string>& train_ids);
std::string feature_matrix_to_csv(const json& matrix_artifact);

// Stable on-disk form: 2-space indent, sorted keys (nlohmann default), one
// trailing newline. Reads wrap parse errors into DataError with the path.
void write_json_file(const json& j, const std::filesystem::path& path);
json read_json_file(const std::filesystem::path& path);

}  // namespace rcgcat
