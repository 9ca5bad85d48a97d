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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "simpkit/classify.hpp"
#include "simpkit/common.hpp"

using namespace simpkit;
namespace fs = std::filesystem;

namespace {

LabeledRow row(double mls, double fkgl, int label) {
  LabeledRow r;
  r.features.catalog_version = "107.1";
  r.features.set("MLS", mls);
  r.features.set("FKGL", fkgl);
  r.label = label;
  return r;
}

// Linearly separable toy problem: complex rows live strictly above the line.
std::vector<LabeledRow> separable() {
  std::vector<LabeledRow> rows;
  for (int i = 0; i < 10; ++i) {
    rows.push_back(row(20.0 + i, 10.0 + 0.3 * i, 1));
    rows.push_back(row(5.0 + i * 0.2, 2.0 + 0.1 * i, 0));
  }
  return rows;
}

}  // namespace

TEST_CASE("standardization centers and scales visible features") {
  std::vector<LabeledRow> rows = {row(10.0, 4.0, 1), row(20.0, 8.0, 0)};
  TrainingMatrix m = standardize_rows(rows);
  REQUIRE(m.feature_ids.size() == 2);  // map order: FKGL then MLS
  CHECK(m.feature_ids[0] == "FKGL");
  CHECK(m.feature_ids[1] == "MLS");
  CHECK(m.means[1] == doctest::Approx(15.0));
  REQUIRE(m.x.size() == 2);
  // Each standardized column has mean 0 and the two points are symmetric.
  CHECK(m.x[0][1] == doctest::Approx(-m.x[1][1]));
  CHECK(m.x[0][0] == doctest::Approx(-m.x[1][0]));
  CHECK(m.y[0] == 1);
  CHECK(m.y[1] == 0);
}

TEST_CASE("constant and all-missing features are dropped") {
  std::vector<LabeledRow> rows = {row(10.0, 4.0, 1), row(20.0, 4.0, 0)};
  rows[0].features.set_missing("TTR");
  rows[1].features.set_missing("TTR");
  TrainingMatrix m = standardize_rows(rows);
  REQUIRE(m.feature_ids.size() == 1);  // FKGL constant, TTR always missing
  CHECK(m.feature_ids[0] == "MLS");
}

TEST_CASE("missing values impute to the standardized mean") {
  std::vector<LabeledRow> rows = {row(10.0, 4.0, 1), row(20.0, 8.0, 0),
                                  row(30.0, 6.0, 1)};
  rows[2].features.set_missing("FKGL");
  TrainingMatrix m = standardize_rows(rows);
  REQUIRE(m.feature_ids[0] == "FKGL");
  // Mean over present values is 6; the missing cell standardizes to 0.
  CHECK(m.means[0] == doctest::Approx(6.0));
  CHECK(m.x[2][0] == doctest::Approx(0.0));
}

TEST_CASE("loss at zero weights is ln 2") {
  TrainingMatrix m = standardize_rows(separable());
  std::vector<double> w(m.feature_ids.size(), 0.0);
  CHECK(logistic_loss(m, w, 0.0, 0.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  // The l2 term only sees the weights, not the bias.
  CHECK(logistic_loss(m, w, 3.0, 10.0) ==
        doctest::Approx(logistic_loss(m, w, 3.0, 0.0)).epsilon(1e-12));
}

TEST_CASE("analytic gradient matches finite differences") {
  TrainingMatrix m = standardize_rows(separable());
  const std::size_t d = m.feature_ids.size();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  const double h = 1e-6;
  for (int point = 0; point < 10; ++point) {
    std::vector<double> w(d);
    for (auto& v : w) v = coef(rng);
    double bias = coef(rng);
    double l2 = point % 2 == 0 ? 0.0 : 0.37;

    std::vector<double> grad_w;
    double grad_b = 0;
    logistic_gradient(m, w, bias, l2, &grad_w, &grad_b);
    REQUIRE(grad_w.size() == d);

    for (std::size_t j = 0; j < d; ++j) {
      std::vector<double> wp = w, wm = w;
      wp[j] += h;
      wm[j] -= h;
      double num =
          (logistic_loss(m, wp, bias, l2) - logistic_loss(m, wm, bias, l2)) /
          (2 * h);
      double denom = std::max(1.0, std::abs(num));
      CHECK(std::abs(grad_w[j] - num) / denom < 1e-4);
    }
    double numb = (logistic_loss(m, w, bias + h, l2) -
                   logistic_loss(m, w, bias - h, l2)) /
                  (2 * h);
    CHECK(std::abs(grad_b - numb) / std::max(1.0, std::abs(numb)) < 1e-4);
  }
}

TEST_CASE("training separates the separable toy set completely") {
  std::vector<LabeledRow> rows = separable();
  LinearModel model = train_logistic(rows);
  ClassificationReport rep = evaluate_classifier(model, rows);
  CHECK(rep.accuracy == 1.0);
  CHECK(rep.tp == 10);
  CHECK(rep.tn == 10);
  CHECK(rep.fp == 0);
  CHECK(rep.fn == 0);
  // Trained loss beats the zero-weight starting point.
  TrainingMatrix m = standardize_rows(rows);
  std::vector<double> zero(m.feature_ids.size(), 0.0);
  TrainOptions opts;
  CHECK(logistic_loss(m, model.weights, model.bias, opts.l2) <
        logistic_loss(m, zero, 0.0, opts.l2));
}

TEST_CASE("training rejects degenerate inputs") {
  CHECK_THROWS_AS(train_logistic({}), DomainError);
  std::vector<LabeledRow> one_class = {row(1.0, 2.0, 1), row(3.0, 4.0, 1)};
  CHECK_THROWS_AS(train_logistic(one_class), DomainError);
}

TEST_CASE("prediction imputes unknown and missing features") {
  LinearModel model = train_logistic(separable());
  FeatureVector empty;
  empty.catalog_version = "107.1";
  // All features missing: every input standardizes to 0, so the probability
  // is the bias alone.
  double p = predict(model, empty);
  CHECK(p == doctest::Approx(1.0 / (1.0 + std::exp(-model.bias))));
  FeatureVector complex_like;
  complex_like.catalog_version = "107.1";
  complex_like.set("MLS", 29.0);
  complex_like.set("FKGL", 12.7);
  CHECK(predict(model, complex_like) > 0.5);
  FeatureVector simple_like;
  simple_like.catalog_version = "107.1";
  simple_like.set("MLS", 5.0);
  simple_like.set("FKGL", 2.0);
  CHECK(predict(model, simple_like) < 0.5);
}

TEST_CASE("report metrics match a hand-counted confusion matrix") {
  // Build a model whose decision is fully determined by MLS, then feed rows
  // engineered to land in every confusion cell.
  LinearModel model;
  model.catalog_version = "107.1";
  model.feature_ids = {"MLS"};
  model.weights = {4.0};
  model.means = {10.0};
  model.sds = {2.0};
  model.bias = 0.0;
  std::vector<LabeledRow> rows = {
      row(14.0, 0.0, 1),  // p>0.5, label 1 -> TP
      row(14.0, 0.0, 0),  // p>0.5, label 0 -> FP
      row(6.0, 0.0, 0),   // p<0.5, label 0 -> TN
      row(6.0, 0.0, 0),   // TN
      row(6.0, 0.0, 1),   // p<0.5, label 1 -> FN
  };
  ClassificationReport rep = evaluate_classifier(model, rows);
  CHECK(rep.tp == 1);
  CHECK(rep.fp == 1);
  CHECK(rep.tn == 2);
  CHECK(rep.fn == 1);
  CHECK(rep.accuracy == doctest::Approx(3.0 / 5.0));
  CHECK(rep.precision == doctest::Approx(0.5));
  CHECK(rep.recall == doctest::Approx(0.5));
  CHECK(rep.f1 == doctest::Approx(0.5));
}

TEST_CASE("models survive a save/load round trip bit-exactly") {
  LinearModel model = train_logistic(separable());
  fs::path p = fs::temp_directory_path() / "simpkit_model.tsv";
  save_model(model, p.string());
  LinearModel back = load_model(p.string());
  CHECK(back.catalog_version == model.catalog_version);
  REQUIRE(back.feature_ids == model.feature_ids);
  REQUIRE(back.weights.size() == model.weights.size());
  for (std::size_t i = 0; i < model.weights.size(); ++i) {
    CHECK(back.weights[i] == model.weights[i]);
    CHECK(back.means[i] == model.means[i]);
    CHECK(back.sds[i] == model.sds[i]);
  }
  CHECK(back.bias == model.bias);
  FeatureVector probe;
  probe.catalog_version = "107.1";
  probe.set("MLS", 17.3);
  probe.set("FKGL", 6.9);
  CHECK(predict(back, probe) == predict(model, probe));
}

TEST_CASE("model loading validates its input") {
  fs::path p = fs::temp_directory_path() / "simpkit_bad_model.tsv";
  {
    std::ofstream out(p);
    out << "not a model\n";
  }
  CHECK_THROWS_AS(load_model(p.string()), DataError);
  CHECK_THROWS_AS(load_model((fs::temp_directory_path() /
                              "simpkit_no_such_model.tsv")
                                 .string()),
                  IoError);
}
