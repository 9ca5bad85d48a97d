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
//
// simpkit command line: analyze, annotate, evaluate, select-tokens,
// highlight, classify. Exit codes: 0 ok, 2 configuration error, 3 data
// error, 4 external scorer failure (partial trace persisted first).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "simpkit/classify.hpp"
#include "simpkit/common.hpp"
#include "simpkit/control.hpp"
#include "simpkit/corpus.hpp"
#include "simpkit/explain.hpp"
#include "simpkit/features.hpp"
#include "simpkit/metrics.hpp"
#include "simpkit/textproc.hpp"
#include "simpkit/treequery.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace simpkit;

namespace {

struct CommonOpts {
  std::string data_dir = default_data_dir();
  std::string resources;  // empty: use data_dir
  std::uint64_t seed = 42;
  unsigned jobs = default_jobs();
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts* c) {
  cmd->add_option("--data-dir", c->data_dir,
                  "Directory with constants, patterns and lexicons")
      ->capture_default_str();
  cmd->add_option("--resources", c->resources,
                  "Lexicon directory (default: the data dir)");
  cmd->add_option("--seed", c->seed, "Seed for all randomness")
      ->capture_default_str();
  cmd->add_option("--jobs", c->jobs, "Worker threads")->capture_default_str();
  cmd->add_option("--out", c->out, "Output path")->required();
}

void require_file(const std::string& path, const std::string& what) {
  if (!fs::is_regular_file(path))
    throw ConfigError(what + " not found: " + path);
}

void require_dir(const std::string& path, const std::string& what) {
  if (!fs::is_directory(path)) throw ConfigError(what + " not found: " + path);
}

// Resolved-configuration sidecar, written before any work happens.
void write_config(const CommonOpts& c, const std::string& command,
                  json extra) {
  json cfg;
  cfg["command"] = command;
  cfg["data_dir"] = c.data_dir;
  cfg["resources"] = c.resources.empty() ? c.data_dir : c.resources;
  cfg["seed"] = c.seed;
  cfg["jobs"] = c.jobs;
  cfg["out"] = c.out;
  for (auto& [k, v] : extra.items()) cfg[k] = v;
  std::ofstream f(c.out + ".config.json");
  if (!f) throw IoError("cannot write " + c.out + ".config.json");
  f << cfg.dump(2) << "\n";
}

FeatureContext open_context(const CommonOpts& c) {
  require_dir(c.data_dir, "data dir");
  if (!c.resources.empty()) require_dir(c.resources, "resources dir");
  return make_context(c.data_dir, c.resources);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

struct AnalyzeOpts {
  CommonOpts common;
  std::string pairs;
  std::string trees;
  std::string trees_simple;
  std::vector<std::string> families;
  std::string contour_feature;
  std::size_t window = 5;
  bool ngram_mean = false;
};

FeatureVector families_vector(const std::string& text, const ParseTree* tree,
                              const std::vector<std::string>& families,
                              const FeatureContext& ctx) {
  TokenizedSentence ts = tokenize(text);
  FeatureVector fv;
  fv.catalog_version = ctx.catalog().version();
  for (const std::string& fam : families) {
    FeatureVector part;
    if (fam == "syntactic")
      part = syntactic_features(tree, ctx);
    else if (fam == "lexical")
      part = lexical_features(ts, ctx);
    else if (fam == "ngram")
      part = ngram_features(ts, ctx);
    else if (fam == "readability")
      part = readability_features(ts, ctx);
    else if (fam == "psycholinguistic")
      part = psycholinguistic_features(ts, ctx);
    else
      throw ConfigError("unknown feature family: " + fam);
    for (auto& [id, v] : part.values) fv.values[id] = v;
  }
  return fv;
}

int cmd_analyze(AnalyzeOpts& o) {
  if (o.families.empty())
    o.families = {"syntactic", "lexical", "ngram", "readability",
                  "psycholinguistic"};
  write_config(o.common, "analyze",
               {{"pairs", o.pairs},
                {"trees", o.trees},
                {"trees_simple", o.trees_simple},
                {"features", o.families},
                {"contour", o.contour_feature},
                {"window", o.window},
                {"ngram_mean", o.ngram_mean}});
  require_file(o.pairs, "pairs file");
  if (!o.trees.empty()) require_file(o.trees, "tree file");
  if (!o.trees_simple.empty()) require_file(o.trees_simple, "tree file");
  for (const std::string& fam : o.families)
    if (FeatureCatalog::builtin().family_ids(fam).empty())
      throw ConfigError("unknown feature family: " + fam);

  FeatureContext ctx = open_context(o.common);
  ctx.ngram_mean = o.ngram_mean;
  std::vector<SentencePair> pairs = load_pairs(o.pairs);
  if (!o.trees.empty()) {
    auto trees = load_trees(o.trees, pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
      pairs[i].complex_tree = std::move(trees[i]);
  }
  if (!o.trees_simple.empty()) {
    auto trees = load_trees(o.trees_simple, pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
      pairs[i].simple_tree = std::move(trees[i]);
  }

  // Row ids: 2i complex side, 2i+1 simple side; parallel workers write by
  // index so the output order never depends on scheduling.
  std::vector<FeatureRow> rows(2 * pairs.size());
  parallel_for(pairs.size(), o.common.jobs, [&](std::size_t i) {
    const SentencePair& p = pairs[i];
    const ParseTree* ct =
        p.complex_tree.has_value() ? &*p.complex_tree : nullptr;
    const ParseTree* st = p.simple_tree.has_value() ? &*p.simple_tree : nullptr;
    rows[2 * i] = {2 * i, families_vector(p.complex_text, ct, o.families, ctx)};
    rows[2 * i + 1] =
        {2 * i + 1, families_vector(p.simple_text, st, o.families, ctx)};
  });
  export_features(rows, o.common.out);

  if (!o.contour_feature.empty()) {
    std::vector<FeatureVector> complex_side;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      complex_side.push_back(rows[2 * i].features);
    ContourSeries cs = contour(complex_side, o.contour_feature, o.window);
    std::ofstream out = open_out(o.common.out + ".contour.tsv");
    out << "window\t" << cs.feature_id << "\n";
    for (std::size_t i = 0; i < cs.values.size(); ++i) {
      out << i << "\t";
      out << (cs.values[i].has_value() ? fmt(*cs.values[i]) : "NA") << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// annotate
// ---------------------------------------------------------------------------

struct AnnotateOpts {
  CommonOpts common;
  std::string pairs;
  std::string src;
  std::string mode = "train";
  std::vector<std::string> feature_names;
  std::string tokens;  // "NbChars=0.80,MLS=0.50"
};

std::vector<ControlFeature> parse_control_features(
    const std::vector<std::string>& names) {
  std::vector<ControlFeature> feats;
  for (const std::string& n : names) {
    auto f = control_feature_from_name(n);
    if (!f.has_value()) throw ConfigError("unknown control feature: " + n);
    feats.push_back(*f);
  }
  return feats;
}

std::vector<ControlToken> parse_fixed_tokens(const std::string& spec) {
  std::vector<ControlToken> tokens;
  for (const std::string& part : split(spec, ',')) {
    std::string item = trim(part);
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw ConfigError("token must look like FEAT=0.80: " + item);
    auto f = control_feature_from_name(trim(item.substr(0, eq)));
    if (!f.has_value())
      throw ConfigError("unknown control feature: " + item.substr(0, eq));
    double v = 0;
    try {
      v = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("bad bin value in: " + item);
    }
    double steps = v / 0.05;
    if (v < 0.05 - 1e-9 || v > 2.0 + 1e-9 ||
        std::fabs(steps - std::round(steps)) > 1e-6)
      throw ConfigError("bin must be a multiple of 0.05 in [0.05, 2.00]: " +
                        item);
    tokens.push_back(
        ControlToken{*f, static_cast<int>(std::lround(steps))});
  }
  if (tokens.empty()) throw ConfigError("no tokens given");
  return tokens;
}

int cmd_annotate(AnnotateOpts& o) {
  if (o.feature_names.empty())
    o.feature_names = {"NbChars", "LevSim", "WordRank"};
  write_config(o.common, "annotate",
               {{"pairs", o.pairs},
                {"src", o.src},
                {"mode", o.mode},
                {"features", o.feature_names},
                {"tokens", o.tokens}});
  if (o.mode == "train") {
    if (o.pairs.empty()) throw ConfigError("train mode needs --pairs");
    require_file(o.pairs, "pairs file");
    std::vector<ControlFeature> feats = parse_control_features(o.feature_names);
    FeatureContext ctx = open_context(o.common);
    std::vector<SentencePair> pairs = load_pairs(o.pairs);
    std::vector<AnnotatedSentence> rows(pairs.size());
    parallel_for(pairs.size(), o.common.jobs, [&](std::size_t i) {
      rows[i] = annotate_pair(pairs[i], feats, ctx);
    });
    std::ofstream out = open_out(o.common.out);
    for (const auto& r : rows) out << r.text << "\n";
    return 0;
  }
  if (o.mode != "inference")
    throw ConfigError("mode must be train or inference");
  if (o.src.empty()) throw ConfigError("inference mode needs --src");
  if (o.tokens.empty()) throw ConfigError("inference mode needs --tokens");
  require_file(o.src, "source file");
  std::vector<ControlToken> tokens = parse_fixed_tokens(o.tokens);
  std::vector<std::string> lines = read_lines(o.src);
  std::vector<std::string> annotated = annotate_inference(lines, tokens);
  std::ofstream out = open_out(o.common.out);
  for (const auto& line : annotated) out << line << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvaluateOpts {
  CommonOpts common;
  std::string metric = "all";
  std::string src;
  std::string pred;
  std::vector<std::string> refs;
  bool del_precision_only = false;
  bool no_shifts = false;
};

int cmd_evaluate(EvaluateOpts& o) {
  write_config(o.common, "evaluate",
               {{"metric", o.metric},
                {"src", o.src},
                {"pred", o.pred},
                {"refs", o.refs},
                {"del_precision_only", o.del_precision_only},
                {"no_shifts", o.no_shifts}});
  bool want_sari = o.metric == "sari" || o.metric == "all";
  bool want_fkgl = o.metric == "fkgl" || o.metric == "all";
  bool want_ter = o.metric == "ter" || o.metric == "all";
  if (!want_sari && !want_fkgl && !want_ter)
    throw ConfigError("metric must be sari, fkgl, ter or all");
  if (o.pred.empty()) throw ConfigError("--pred is required");
  require_file(o.pred, "prediction file");
  if (want_sari && o.src.empty()) throw ConfigError("sari needs --src");
  if ((want_sari || want_ter) && o.refs.empty())
    throw ConfigError("sari and ter need --refs");
  if (!o.src.empty()) require_file(o.src, "source file");
  for (const auto& r : o.refs) require_file(r, "reference file");

  std::vector<std::string> pred = read_lines(o.pred);
  std::vector<std::string> src;
  if (!o.src.empty()) {
    src = read_lines(o.src);
    if (src.size() != pred.size())
      throw DataError("source and prediction line counts differ");
  }
  std::vector<std::vector<std::string>> refs;
  for (const auto& r : o.refs) {
    refs.push_back(read_lines(r));
    if (refs.back().size() != pred.size())
      throw DataError("reference and prediction line counts differ: " + r);
  }

  SariOptions sari_opts{o.del_precision_only};
  TerOptions ter_opts{!o.no_shifts};
  std::ofstream out = open_out(o.common.out);
  out << "id";
  if (want_sari) out << "\tsari";
  if (want_fkgl) out << "\tfkgl";
  if (want_ter) out << "\tter";
  out << "\n";
  double sum_sari = 0, sum_fkgl = 0, sum_ter = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    out << i;
    if (want_sari) {
      std::vector<std::string> line_refs;
      for (const auto& r : refs) line_refs.push_back(r[i]);
      double v = sari(src[i], pred[i], line_refs, sari_opts).sari;
      sum_sari += v;
      out << "\t" << fmt(v);
    }
    if (want_fkgl) {
      double v = fkgl(sentence_stats(tokenize(pred[i])));
      sum_fkgl += v;
      out << "\t" << fmt(v);
    }
    if (want_ter) {
      double best = 0;
      for (std::size_t r = 0; r < refs.size(); ++r) {
        double v = ter(pred[i], refs[r][i], ter_opts);
        if (r == 0 || v < best) best = v;
      }
      sum_ter += best;
      out << "\t" << fmt(best);
    }
    out << "\n";
  }
  const double n = pred.empty() ? 1.0 : static_cast<double>(pred.size());
  out << "mean";
  if (want_sari) out << "\t" << fmt(sum_sari / n);
  if (want_fkgl) out << "\t" << fmt(sum_fkgl / n);
  if (want_ter) out << "\t" << fmt(sum_ter / n);
  out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// select-tokens
// ---------------------------------------------------------------------------

struct SelectOpts {
  CommonOpts common;
  std::string pairs;
  std::string validation;
  std::string refs;
  std::string scorer_cmd;
  std::size_t k = 5;
  std::vector<std::string> feature_names;
  std::string work_dir;
  int timeout = 300;
};

void write_trace(const SelectionTrace& trace, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "baseline\t\t" << fmt(trace.baseline) << "\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    out << "step" << (i + 1) << "\t" << trace.steps[i].token.render() << "\t"
        << fmt(trace.steps[i].score) << "\n";
  }
  out << "selected\t";
  std::vector<ControlToken> sel = trace.selected();
  for (std::size_t i = 0; i < sel.size(); ++i) {
    if (i) out << " ";
    out << sel[i].render();
  }
  out << "\n";
}

int cmd_select_tokens(SelectOpts& o) {
  if (o.feature_names.empty())
    o.feature_names = {"MLS",     "Fry", "FORCAST", "WPCorp", "WPCrowd",
                       "BigramNews", "ANC", "AoA",  "MLWs",   "CTTR"};
  if (o.work_dir.empty()) o.work_dir = o.common.out + ".work";
  write_config(o.common, "select-tokens",
               {{"pairs", o.pairs},
                {"validation", o.validation},
                {"refs", o.refs},
                {"scorer_cmd", o.scorer_cmd},
                {"candidates_per_feature", o.k},
                {"features", o.feature_names},
                {"work_dir", o.work_dir},
                {"timeout", o.timeout}});
  require_file(o.pairs, "pairs file");
  require_file(o.validation, "validation file");
  require_file(o.refs, "reference file");
  if (o.scorer_cmd.empty()) throw ConfigError("--scorer-cmd is required");
  if (o.k < 1) throw ConfigError("--candidates-k must be >= 1");
  std::vector<ControlFeature> feats = parse_control_features(o.feature_names);

  FeatureContext ctx = open_context(o.common);
  std::vector<SentencePair> pairs = load_pairs(o.pairs);
  std::vector<ControlToken> candidates =
      candidate_tokens(pairs, feats, o.k, ctx);
  fs::create_directories(o.work_dir);
  ProcessScorer scorer(o.scorer_cmd, read_lines(o.validation), o.refs,
                       o.work_dir, o.timeout);
  try {
    SelectionTrace trace =
        greedy_forward_select(candidates, scorer, o.common.jobs);
    write_trace(trace, o.common.out);
  } catch (const ScorerError& e) {
    write_trace(e.partial_trace, o.common.out);
    throw;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// highlight
// ---------------------------------------------------------------------------

struct HighlightOpts {
  CommonOpts common;
  std::string method;  // attention|random|aoa
  std::string attention;
  std::string src;
  std::string pairs;
  double p = 0.3;
  double cutoff = 10.0;
  std::string side = "below";
};

int cmd_highlight(HighlightOpts& o) {
  write_config(o.common, "highlight",
               {{"method", o.method},
                {"attention", o.attention},
                {"src", o.src},
                {"pairs", o.pairs},
                {"p", o.p},
                {"cutoff", o.cutoff},
                {"side", o.side}});
  if (o.method != "attention" && o.method != "random" && o.method != "aoa")
    throw ConfigError("method must be attention, random or aoa");
  if (o.src.empty() == o.pairs.empty())
    throw ConfigError("give exactly one of --src and --pairs");
  if (o.method == "attention" && o.attention.empty())
    throw ConfigError("attention method needs --attention");
  if (o.side != "below" && o.side != "above")
    throw ConfigError("side must be below or above");
  if (!o.src.empty()) require_file(o.src, "source file");
  if (!o.pairs.empty()) require_file(o.pairs, "pairs file");
  if (!o.attention.empty()) require_file(o.attention, "attention file");

  std::vector<SentencePair> pairs;
  std::vector<std::string> sentences;
  if (!o.pairs.empty()) {
    pairs = load_pairs(o.pairs);
    for (const auto& p : pairs) sentences.push_back(p.complex_text);
  } else {
    sentences = read_lines(o.src);
  }

  std::vector<AttentionRecord> records;
  FeatureContext ctx;
  if (o.method == "attention") {
    records = load_attention(o.attention);
    if (records.size() != sentences.size())
      throw DataError("attention record count differs from sentence count");
  } else if (o.method == "aoa") {
    ctx = open_context(o.common);
    if (!ctx.resources.aoa)
      throw ConfigError("aoa method needs aoa.tsv in the resources dir");
  }

  ThresholdSide side =
      o.side == "below" ? ThresholdSide::kBelow : ThresholdSide::kAbove;
  std::vector<TokenizedSentence> tokenized(sentences.size());
  std::vector<HighlightMask> masks(sentences.size());
  parallel_for(sentences.size(), o.common.jobs, [&](std::size_t i) {
    tokenized[i] = tokenize(sentences[i]);
    if (o.method == "attention") {
      if (records[i].n_words() != tokenized[i].n_words())
        throw DataError("attention word count mismatch on line " +
                        std::to_string(i + 1));
      masks[i] = threshold_highlight(attention_to_word_weights(records[i]),
                                     side);
    } else if (o.method == "random") {
      masks[i] = random_highlight(tokenized[i].n_words(), o.p,
                                  o.common.seed + i);
    } else {
      masks[i] = aoa_highlight(tokenized[i], *ctx.resources.aoa, o.cutoff);
    }
  });

  std::ofstream out = open_out(o.common.out);
  std::ofstream mask_out = open_out(o.common.out + ".mask");
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    out << format_highlight(tokenized[i], masks[i]) << "\n";
    mask_out << mask_line(masks[i]) << "\n";
  }

  if (!pairs.empty()) {
    std::ofstream report = open_out(o.common.out + ".eval.tsv");
    report << "id\tprecision\trecall\tf1\tter\n";
    double sp = 0, sr = 0, sf = 0, st = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      HighlightMask gold = gold_highlight(pairs[i]);
      HighlightScore score = eval_highlight(masks[i], gold);
      double t = highlight_ter(tokenized[i], masks[i], pairs[i].simple_text);
      sp += score.precision;
      sr += score.recall;
      sf += score.f1;
      st += t;
      report << i << "\t" << fmt(score.precision) << "\t" << fmt(score.recall)
             << "\t" << fmt(score.f1) << "\t" << fmt(t) << "\n";
    }
    const double n =
        pairs.empty() ? 1.0 : static_cast<double>(pairs.size());
    report << "mean\t" << fmt(sp / n) << "\t" << fmt(sr / n) << "\t"
           << fmt(sf / n) << "\t" << fmt(st / n) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

struct ClassifyOpts {
  CommonOpts common;
  std::string mode = "train";
  std::string input;
  std::string labels;
  std::string model;
  double l2 = 1e-3;
  double lr = 0.5;
  int epochs = 500;
};

std::vector<LabeledRow> labeled_rows(const std::string& input,
                                     const std::string& labels_path) {
  std::vector<FeatureRow> rows = import_features(input);
  std::map<std::size_t, int> labels;
  if (!labels_path.empty()) {
    std::vector<std::string> lines = read_lines(labels_path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (trim(lines[i]).empty()) continue;
      std::vector<std::string> cells = split(lines[i], '\t');
      if (cells.size() != 2)
        throw DataError(labels_path + ":" + std::to_string(i + 1) +
                        ": expected id<TAB>label");
      try {
        labels[std::stoull(cells[0])] = std::stoi(cells[1]);
      } catch (const std::exception&) {
        throw DataError(labels_path + ":" + std::to_string(i + 1) +
                        ": bad id or label");
      }
    }
  }
  std::vector<LabeledRow> out;
  for (auto& row : rows) {
    int label;
    if (!labels_path.empty()) {
      auto it = labels.find(row.id);
      if (it == labels.end())
        throw DataError("no label for row id " + std::to_string(row.id));
      label = it->second;
    } else {
      // analyze writes complex sides at even ids, simple sides at odd ids.
      label = row.id % 2 == 0 ? 1 : 0;
    }
    out.push_back({std::move(row.features), label});
  }
  return out;
}

int cmd_classify(ClassifyOpts& o) {
  write_config(o.common, "classify",
               {{"mode", o.mode},
                {"input", o.input},
                {"labels", o.labels},
                {"model", o.model},
                {"l2", o.l2},
                {"learning_rate", o.lr},
                {"epochs", o.epochs}});
  if (o.input.empty()) throw ConfigError("--input is required");
  require_file(o.input, "feature file");
  if (!o.labels.empty()) require_file(o.labels, "label file");

  if (o.mode == "train") {
    std::vector<LabeledRow> rows = labeled_rows(o.input, o.labels);
    TrainOptions opts;
    opts.l2 = o.l2;
    opts.learning_rate = o.lr;
    opts.epochs = o.epochs;
    LinearModel model = train_logistic(rows, opts);
    save_model(model, o.common.out);
    return 0;
  }
  if (o.model.empty()) throw ConfigError(o.mode + " mode needs --model");
  require_file(o.model, "model file");
  LinearModel model = load_model(o.model);

  if (o.mode == "predict") {
    std::vector<FeatureRow> rows = import_features(o.input);
    std::ofstream out = open_out(o.common.out);
    out << "id\tp\tlabel\n";
    for (const auto& row : rows) {
      double p = predict(model, row.features);
      out << row.id << "\t" << fmt(p) << "\t" << (p >= 0.5 ? 1 : 0) << "\n";
    }
    return 0;
  }
  if (o.mode != "eval")
    throw ConfigError("mode must be train, predict or eval");
  std::vector<LabeledRow> rows = labeled_rows(o.input, o.labels);
  ClassificationReport rep = evaluate_classifier(model, rows);
  std::ofstream out = open_out(o.common.out);
  out << "id\tp\tpredicted\tlabel\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double p = predict(model, rows[i].features);
    out << i << "\t" << fmt(p) << "\t" << (p >= 0.5 ? 1 : 0) << "\t"
        << rows[i].label << "\n";
  }
  out << "mean\taccuracy=" << fmt(rep.accuracy)
      << "\tprecision=" << fmt(rep.precision) << "\trecall=" << fmt(rep.recall)
      << "\tf1=" << fmt(rep.f1) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simpkit: linguistic complexity features, control-token "
               "annotation and simplification evaluation"};
  app.require_subcommand(1);

  AnalyzeOpts an;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Extract complexity features from a pair corpus");
  add_common(analyze, &an.common);
  analyze->add_option("--pairs", an.pairs, "Tab-separated pair corpus")
      ->required();
  analyze->add_option("--trees", an.trees, "Complex-side trees (one per line)");
  analyze->add_option("--trees-simple", an.trees_simple, "Simple-side trees");
  analyze->add_option("--features", an.families,
                      "Feature families to extract (default: all)")
      ->delimiter(',');
  analyze->add_option("--contour", an.contour_feature,
                      "Also write a sliding-window contour of this feature");
  analyze->add_option("--window", an.window, "Contour window size")
      ->capture_default_str();
  analyze->add_flag("--ngram-mean", an.ngram_mean,
                    "Average n-gram frequencies instead of summing");

  AnnotateOpts ann;
  CLI::App* annotate = app.add_subcommand(
      "annotate", "Prefix sentences with control tokens");
  add_common(annotate, &ann.common);
  annotate->add_option("--pairs", ann.pairs, "Pair corpus (train mode)");
  annotate->add_option("--src", ann.src, "Plain sentences (inference mode)");
  annotate->add_option("--mode", ann.mode, "train or inference")
      ->capture_default_str();
  annotate->add_option("--features", ann.feature_names,
                       "Control features (default: NbChars,LevSim,WordRank)")
      ->delimiter(',');
  annotate->add_option("--tokens", ann.tokens,
                       "Fixed tokens for inference, e.g. NbChars=0.80");

  EvaluateOpts ev;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Score simplification output (SARI/FKGL/TER)");
  add_common(evaluate, &ev.common);
  evaluate->add_option("--metric", ev.metric, "sari, fkgl, ter or all")
      ->capture_default_str();
  evaluate->add_option("--src", ev.src, "Source sentences");
  evaluate->add_option("--pred", ev.pred, "System output")->required();
  evaluate->add_option("--refs", ev.refs, "Reference file(s)")
      ->delimiter(',');
  evaluate->add_flag("--del-precision-only", ev.del_precision_only,
                     "Score SARI deletions by precision alone");
  evaluate->add_flag("--no-shifts", ev.no_shifts,
                     "Plain edit rate without block shifts");

  SelectOpts sel;
  CLI::App* select = app.add_subcommand(
      "select-tokens", "Greedy forward search over control-token candidates");
  add_common(select, &sel.common);
  select->add_option("--pairs", sel.pairs, "Training pairs for candidates")
      ->required();
  select->add_option("--validation", sel.validation,
                     "Validation source sentences (one per line)")
      ->required();
  select->add_option("--refs", sel.refs, "Reference file for the scorer")
      ->required();
  select->add_option("--scorer-cmd", sel.scorer_cmd,
                     "Command run as CMD <annotated> <refs>")
      ->required();
  select->add_option("--candidates-k", sel.k,
                     "Candidate bins per feature")
      ->capture_default_str();
  select->add_option("--features", sel.feature_names,
                     "Features to search (default: the ten searchable ones)")
      ->delimiter(',');
  select->add_option("--work-dir", sel.work_dir,
                     "Scratch dir for annotated corpora");
  select->add_option("--timeout", sel.timeout, "Scorer timeout, seconds")
      ->capture_default_str();

  HighlightOpts hl;
  CLI::App* highlight = app.add_subcommand(
      "highlight", "Mark complex words (attention, random or AoA)");
  add_common(highlight, &hl.common);
  highlight->add_option("--method", hl.method, "attention, random or aoa")
      ->required();
  highlight->add_option("--attention", hl.attention, "Attention JSONL");
  highlight->add_option("--src", hl.src, "Plain sentences");
  highlight->add_option("--pairs", hl.pairs,
                        "Pair corpus (enables gold evaluation)");
  highlight->add_option("--p", hl.p, "Random highlight probability")
      ->capture_default_str();
  highlight->add_option("--cutoff", hl.cutoff, "AoA cutoff")
      ->capture_default_str();
  highlight->add_option("--side", hl.side,
                        "Threshold side for attention (below|above)")
      ->capture_default_str();

  ClassifyOpts cl;
  CLI::App* classify = app.add_subcommand(
      "classify", "Train or apply the complex-vs-simple classifier");
  add_common(classify, &cl.common);
  classify->add_option("--mode", cl.mode, "train, predict or eval")
      ->capture_default_str();
  classify->add_option("--input", cl.input, "Feature JSONL from analyze")
      ->required();
  classify->add_option("--labels", cl.labels,
                       "Optional id<TAB>label file (default: id parity)");
  classify->add_option("--model", cl.model, "Model file (predict/eval)");
  classify->add_option("--l2", cl.l2, "L2 penalty")->capture_default_str();
  classify->add_option("--lr", cl.lr, "Learning rate")->capture_default_str();
  classify->add_option("--epochs", cl.epochs, "Training epochs")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(an);
    if (annotate->parsed()) return cmd_annotate(ann);
    if (evaluate->parsed()) return cmd_evaluate(ev);
    if (select->parsed()) return cmd_select_tokens(sel);
    if (highlight->parsed()) return cmd_highlight(hl);
    if (classify->parsed()) return cmd_classify(cl);
  } catch (const ScorerError& e) {
    std::cerr << "scorer error: " << e.what() << "\n";
    return 4;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
