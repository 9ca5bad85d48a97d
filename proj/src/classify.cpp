// Copyright 2026 The simpkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simpkit/classify.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "simpkit/common.hpp"

namespace simpkit {

namespace {

double sigmoid(double z) {
  // Split on the sign to avoid overflow in exp.
  if (z >= 0) {
    double e = std::exp(-z);
    return 1.0 / (1.0 + e);
  }
  double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

TrainingMatrix standardize_rows(const std::vector<LabeledRow>& rows) {
  if (rows.empty()) throw DomainError("training needs at least one row");
  // Candidate features: defined in at least one row, in catalog order of the
  // first row's key set union.
  std::set<std::string> ids;
  for (const auto& row : rows)
    for (const auto& [id, v] : row.features.values)
      if (v.has_value()) ids.insert(id);
  struct Stat {
    double sum = 0, sum2 = 0;
    std::size_t n = 0;
  };
  std::map<std::string, Stat> stats;
  for (const auto& row : rows) {
    for (const auto& id : ids) {
      if (auto v = row.features.get(id)) {
        auto& s = stats[id];
        s.sum += *v;
        s.sum2 += *v * *v;
        ++s.n;
      }
    }
  }
  TrainingMatrix m;
  for (const auto& id : ids) {
    const auto& s = stats[id];
    double mean = s.sum / static_cast<double>(s.n);
    double var = s.sum2 / static_cast<double>(s.n) - mean * mean;
    double sd = var > 0 ? std::sqrt(var) : 0.0;
    if (sd <= 0) continue;  // constant features carry no signal
    m.feature_ids.push_back(id);
    m.means.push_back(mean);
    m.sds.push_back(sd);
  }
  if (m.feature_ids.empty())
    throw DomainError("no usable features after standardization");
  m.x.reserve(rows.size());
  m.y.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<double> xr(m.feature_ids.size(), 0.0);
    for (std::size_t j = 0; j < m.feature_ids.size(); ++j) {
      if (auto v = row.features.get(m.feature_ids[j]))
        xr[j] = (*v - m.means[j]) / m.sds[j];
      // Missing values stay 0 = the standardized training mean.
    }
    m.x.push_back(std::move(xr));
    m.y.push_back(row.label != 0 ? 1 : 0);
  }
  return m;
}

double logistic_loss(const TrainingMatrix& m, const std::vector<double>& w,
                     double bias, double l2) {
  const std::size_t n = m.x.size();
  double loss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = bias;
    for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * m.x[i][j];
    // log(1 + exp(-margin)) computed stably.
    double margin = m.y[i] == 1 ? z : -z;
    loss += margin >= 0 ? std::log1p(std::exp(-margin))
                        : -margin + std::log1p(std::exp(margin));
  }
  loss /= static_cast<double>(n);
  double reg = 0;
  for (double wj : w) reg += wj * wj;
  return loss + 0.5 * l2 * reg;
}

void logistic_gradient(const TrainingMatrix& m, const std::vector<double>& w,
                       double bias, double l2, std::vector<double>* grad_w,
                       double* grad_bias) {
  const std::size_t n = m.x.size();
  grad_w->assign(w.size(), 0.0);
  *grad_bias = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = bias;
    for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * m.x[i][j];
    double err = sigmoid(z) - static_cast<double>(m.y[i]);
    for (std::size_t j = 0; j < w.size(); ++j)
      (*grad_w)[j] += err * m.x[i][j];
    *grad_bias += err;
  }
  for (std::size_t j = 0; j < w.size(); ++j) {
    (*grad_w)[j] = (*grad_w)[j] / static_cast<double>(n) + l2 * w[j];
  }
  *grad_bias /= static_cast<double>(n);
}

LinearModel train_logistic(const std::vector<LabeledRow>& rows,
                           const TrainOptions& opts) {
  bool has_pos = false, has_neg = false;
  for (const auto& r : rows) (r.label != 0 ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg)
    throw DomainError("training needs both classes");
  TrainingMatrix m = standardize_rows(rows);

  std::vector<double> w(m.feature_ids.size(), 0.0);
  double bias = 0;
  std::vector<double> grad_w;
  double grad_b = 0;
  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    logistic_gradient(m, w, bias, opts.l2, &grad_w, &grad_b);
    for (std::size_t j = 0; j < w.size(); ++j)
      w[j] -= opts.learning_rate * grad_w[j];
    bias -= opts.learning_rate * grad_b;
  }
  double final_loss = logistic_loss(m, w, bias, opts.l2);
  if (!std::isfinite(final_loss))
    throw DomainError("training diverged (non-finite loss)");

  LinearModel model;
  model.catalog_version = rows[0].features.catalog_version;
  model.feature_ids = m.feature_ids;
  model.weights = std::move(w);
  model.means = m.means;
  model.sds = m.sds;
  model.bias = bias;
  return model;
}

double predict(const LinearModel& model, const FeatureVector& features) {
  double z = model.bias;
  for (std::size_t j = 0; j < model.feature_ids.size(); ++j) {
    if (auto v = features.get(model.feature_ids[j]))
      z += model.weights[j] * ((*v - model.means[j]) / model.sds[j]);
  }
  return sigmoid(z);
}

ClassificationReport evaluate_classifier(const LinearModel& model,
                                         const std::vector<LabeledRow>& rows) {
  ClassificationReport r;
  for (const auto& row : rows) {
    bool pred = predict(model, row.features) >= 0.5;
    bool truth = row.label != 0;
    if (pred && truth) ++r.tp;
    if (pred && !truth) ++r.fp;
    if (!pred && truth) ++r.fn;
    if (!pred && !truth) ++r.tn;
  }
  const double total = static_cast<double>(rows.size());
  r.accuracy =
      total > 0 ? static_cast<double>(r.tp + r.tn) / total : 0.0;
  r.precision = (r.tp + r.fp) > 0
                    ? static_cast<double>(r.tp) /
                          static_cast<double>(r.tp + r.fp)
                    : 0.0;
  r.recall = (r.tp + r.fn) > 0 ? static_cast<double>(r.tp) /
                                     static_cast<double>(r.tp + r.fn)
                               : 0.0;
  r.f1 = (r.precision + r.recall) > 0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  return r;
}

void save_model(const LinearModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  char buf[64];
  out << "catalog\t" << model.catalog_version << '\n';
  std::snprintf(buf, sizeof(buf), "%.17g", model.bias);
  out << "bias\t" << buf << '\n';
  for (std::size_t j = 0; j < model.feature_ids.size(); ++j) {
    out << "feature\t" << model.feature_ids[j];
    std::snprintf(buf, sizeof(buf), "%.17g", model.weights[j]);
    out << '\t' << buf;
    std::snprintf(buf, sizeof(buf), "%.17g", model.means[j]);
    out << '\t' << buf;
    std::snprintf(buf, sizeof(buf), "%.17g", model.sds[j]);
    out << '\t' << buf << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

LinearModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  LinearModel model;
  std::string line;
  std::size_t lineno = 0;
  bool saw_bias = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split(line, '\t');
    auto bad = [&](const std::string& why) -> DataError {
      return DataError(path + ":" + std::to_string(lineno) + ": " + why);
    };
    auto num = [&](const std::string& cell) {
      try {
        std::size_t used = 0;
        double v = std::stod(cell, &used);
        if (used != cell.size() || !std::isfinite(v))
          throw std::invalid_argument(cell);
        return v;
      } catch (const std::exception&) {
        throw bad("bad number '" + cell + "'");
      }
    };
    if (cells[0] == "catalog" && cells.size() == 2) {
      model.catalog_version = cells[1];
    } else if (cells[0] == "bias" && cells.size() == 2) {
      model.bias = num(cells[1]);
      saw_bias = true;
    } else if (cells[0] == "feature" && cells.size() == 5) {
      model.feature_ids.push_back(cells[1]);
      model.weights.push_back(num(cells[2]));
      model.means.push_back(num(cells[3]));
      double sd = num(cells[4]);
      if (sd <= 0) throw bad("feature sd must be positive");
      model.sds.push_back(sd);
    } else {
      throw bad("unrecognized model line");
    }
  }
  if (!saw_bias || model.feature_ids.empty())
    throw DataError(path + ": incomplete model file");
  return model;
}

}  // namespace simpkit
