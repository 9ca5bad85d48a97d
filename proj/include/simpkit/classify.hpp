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

#ifndef SIMPKIT_CLASSIFY_HPP_
#define SIMPKIT_CLASSIFY_HPP_

#include <string>
#include <vector>

#include "simpkit/corpus.hpp"

namespace simpkit {

struct LabeledRow {
  FeatureVector features;
  int label = 0;  // 1 = complex, 0 = simple
};

// L2-regularized logistic regression over standardized features. Features
// that are missing everywhere or constant are dropped; remaining missing
// values impute to the training mean (0 after standardization).
struct LinearModel {
  std::string catalog_version;
  std::vector<std::string> feature_ids;
  std::vector<double> weights;
  std::vector<double> means;
  std::vector<double> sds;
  double bias = 0;
};

struct TrainOptions {
  double l2 = 1e-3;
  double learning_rate = 0.5;
  int epochs = 500;
};

// Dense standardized design matrix, exposed so the loss and gradient can be
// checked numerically from tests.
struct TrainingMatrix {
  std::vector<std::string> feature_ids;
  std::vector<double> means;
  std::vector<double> sds;
  std::vector<std::vector<double>> x;  // rows x features
  std::vector<int> y;
};

TrainingMatrix standardize_rows(const std::vector<LabeledRow>& rows);

// Mean cross-entropy plus 0.5 * l2 * |w|^2 (bias unpenalized).
double logistic_loss(const TrainingMatrix& m, const std::vector<double>& w,
                     double bias, double l2);
// Gradient of logistic_loss with respect to (w, bias); the bias derivative
// lands in grad_bias.
void logistic_gradient(const TrainingMatrix& m, const std::vector<double>& w,
                       double bias, double l2, std::vector<double>* grad_w,
                       double* grad_bias);

// Full-batch gradient descent from zero weights; deterministic.
// Throws DomainError when rows are empty or only one class is present.
LinearModel train_logistic(const std::vector<LabeledRow>& rows,
                           const TrainOptions& opts = {});

// P(label = 1). Unknown and missing features impute to the training mean.
double predict(const LinearModel& model, const FeatureVector& features);

struct ClassificationReport {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Threshold 0.5: p >= 0.5 predicts complex.
ClassificationReport evaluate_classifier(const LinearModel& model,
                                         const std::vector<LabeledRow>& rows);

// TSV persistence with full double precision.
void save_model(const LinearModel& model, const std::string& path);
LinearModel load_model(const std::string& path);

}  // namespace simpkit

#endif  // SIMPKIT_CLASSIFY_HPP_
