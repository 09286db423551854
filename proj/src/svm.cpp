#include "rcgcat/svm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rcgcat/error.hpp"
#include "rcgcat/rng.hpp"

namespace rcgcat {

namespace {

struct BinaryState {
  std::vector<double> w, w_avg;
  double b = 0.0, b_avg = 0.0;
  std::vector<double> y;  // +1 / -1
  Rng rng{0};
  std::uint64_t steps = 0;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Primal objective (lambda/2)||w||^2 + (1/n) sum hinge at the averaged iterate.
double objective(const BinaryState& st, const std::vector<std::vector<double>>& x,
                 double lambda) {
  double hinge = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    hinge += std::max(0.0, 1.0 - st.y[i] * (dot(st.w_avg, x[i]) + st.b_avg));
  return 0.5 * lambda * dot(st.w_avg, st.w_avg) + hinge / static_cast<double>(x.size());
}

}  // namespace

SvmModel svm_train(const std::vector<std::vector<double>>& features,
                   const std::vector<std::string>& labels, const SvmConfig& config) {
  const std::size_t n = features.size();
  if (n == 0 || labels.size() != n) throw DataError("svm_train: features/labels size mismatch");
  const std::size_t dim = features[0].size();
  for (const auto& row : features)
    if (row.size() != dim) throw DataError("svm_train: inconsistent feature dimensions");
  if (!(config.C > 0.0)) throw DataError("svm_train: C must be > 0");
  if (config.epochs < 1) throw DataError("svm_train: epochs must be >= 1");

  SvmModel model;
  model.config = config;
  {
    std::set<std::string> distinct(labels.begin(), labels.end());
    if (distinct.size() < 2) throw DataError("svm_train: needs at least two classes");
    model.classes.assign(distinct.begin(), distinct.end());
  }

  // Standardize columns for the optimization; the affine transform is folded
  // back into the stored weights so the model applies to raw features.
  // Quantized features live at 1/n scale, where the raw-space hinge problem
  // is badly conditioned.
  std::vector<double> mean(dim, 0.0), scale(dim, 1.0);
  for (const auto& row : features)
    for (std::size_t d = 0; d < dim; ++d) mean[d] += row[d];
  for (double& m : mean) m /= static_cast<double>(n);
  for (std::size_t d = 0; d < dim; ++d) {
    double var = 0.0;
    for (const auto& row : features) var += (row[d] - mean[d]) * (row[d] - mean[d]);
    scale[d] = std::sqrt(var / static_cast<double>(n));
    if (scale[d] < 1e-12) scale[d] = 1.0;
  }
  std::vector<std::vector<double>> x(n, std::vector<double>(dim));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t d = 0; d < dim; ++d) x[i][d] = (features[i][d] - mean[d]) / scale[d];

  const double lambda = 1.0 / (config.C * static_cast<double>(n));
  std::vector<BinaryState> states(model.classes.size());
  for (std::size_t c = 0; c < model.classes.size(); ++c) {
    BinaryState& st = states[c];
    st.w.assign(dim, 0.0);
    st.w_avg.assign(dim, 0.0);
    st.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) st.y[i] = labels[i] == model.classes[c] ? 1.0 : -1.0;
    st.rng = Rng(mix_seed(config.seed, c));
  }

  std::vector<std::size_t> order(n);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (BinaryState& st : states) {
      for (std::size_t i = 0; i < n; ++i) order[i] = i;
      st.rng.shuffle(order);
      for (std::size_t i : order) {
        ++st.steps;
        // Offset step size: eta = 1/(lambda*(t+n)) damps the first sweep.
        const double eta = 1.0 / (lambda * (static_cast<double>(st.steps) + static_cast<double>(n)));
        const double margin = st.y[i] * (dot(st.w, x[i]) + st.b);
        const double shrink = 1.0 - eta * lambda;
        for (double& wv : st.w) wv *= shrink;
        if (margin < 1.0) {
          for (std::size_t d = 0; d < dim; ++d) st.w[d] += eta * st.y[i] * x[i][d];
          st.b += eta * st.y[i];
        }
        const double blend = 1.0 / static_cast<double>(st.steps);
        for (std::size_t d = 0; d < dim; ++d) st.w_avg[d] += (st.w[d] - st.w_avg[d]) * blend;
        st.b_avg += (st.b - st.b_avg) * blend;
      }
    }
    double total = 0.0;
    for (const BinaryState& st : states) total += objective(st, x, lambda);
    model.objective_history.push_back(total);
  }

  for (BinaryState& st : states) {
    std::vector<double> w_raw(dim);
    double b_raw = st.b_avg;
    for (std::size_t d = 0; d < dim; ++d) {
      w_raw[d] = st.w_avg[d] / scale[d];
      b_raw -= st.w_avg[d] * mean[d] / scale[d];
    }
    model.weights.push_back(std::move(w_raw));
    model.biases.push_back(b_raw);
  }
  return model;
}

Prediction svm_predict(const SvmModel& model, const std::vector<double>& feature) {
  if (model.weights.empty() || model.weights.size() != model.classes.size())
    throw DataError("svm_predict: malformed model");
  if (feature.size() != model.weights[0].size())
    throw DataError("svm_predict: feature dimension mismatch");
  Prediction pred;
  pred.scores.reserve(model.classes.size());
  for (std::size_t c = 0; c < model.classes.size(); ++c)
    pred.scores.push_back(dot(model.weights[c], feature) + model.biases[c]);
  std::size_t best = 0;
  for (std::size_t c = 1; c < pred.scores.size(); ++c)
    if (pred.scores[c] > pred.scores[best]) best = c;  // ties: first class wins
  pred.label = model.classes[best];
  return pred;
}

}  // namespace rcgcat
