#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rcgcat {

struct SvmConfig {
  double C = 1.0;
  int epochs = 200;
  std::uint64_t seed = 1;
};

struct SvmModel {
  std::vector<std::string> classes;           // sorted; prediction tie-break order
  std::vector<std::vector<double>> weights;   // one row per class
  std::vector<double> biases;
  SvmConfig config;
  std::vector<double> objective_history;      // summed primal objective per epoch
};

// One-vs-rest soft-margin linear SVMs trained by averaged subgradient descent
// on the primal hinge loss. Fixed epoch count with a seeded shuffle per
// epoch; identical inputs and seed give identical models.
SvmModel svm_train(const std::vector<std::vector<double>>& features,
                   const std::vector<std::string>& labels, const SvmConfig& config);

struct Prediction {
  std::string label;
  std::vector<double> scores;  // parallel to model.classes
};

Prediction svm_predict(const SvmModel& model, const std::vector<double>& feature);

}  // namespace rcgcat
