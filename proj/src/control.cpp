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

#include "simpkit/control.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "simpkit/common.hpp"

namespace simpkit {

namespace {

struct FeatureName {
  ControlFeature f;
  const char* name;
};

const FeatureName kFeatureNames[] = {
    {ControlFeature::kNbChars, "NbChars"},
    {ControlFeature::kLevSim, "LevSim"},
    {ControlFeature::kWordRank, "WordRank"},
    {ControlFeature::kMLS, "MLS"},
    {ControlFeature::kFry, "Fry"},
    {ControlFeature::kFORCAST, "FORCAST"},
    {ControlFeature::kWPCorp, "WPCorp"},
    {ControlFeature::kWPCrowd, "WPCrowd"},
    {ControlFeature::kBigramNews, "BigramNews"},
    {ControlFeature::kANC, "ANC"},
    {ControlFeature::kAoA, "AoA"},
    {ControlFeature::kMLWs, "MLWs"},
    {ControlFeature::kCTTR, "CTTR"},
};

}  // namespace

const char* control_feature_name(ControlFeature f) {
  for (const auto& e : kFeatureNames)
    if (e.f == f) return e.name;
  return "";
}

std::optional<ControlFeature> control_feature_from_name(const std::string& s) {
  for (const auto& e : kFeatureNames)
    if (s == e.name) return e.f;
  return std::nullopt;
}

std::vector<ControlFeature> all_control_features() {
  std::vector<ControlFeature> out;
  for (const auto& e : kFeatureNames) out.push_back(e.f);
  return out;
}

int discretize_ratio(double ratio) {
  if (ratio < 0 || !std::isfinite(ratio))
    throw DomainError("control ratio must be finite and non-negative");
  // Nearest multiple of 0.05, ties rounding up; the epsilon soaks up the
  // representation error of values like 0.725 that sit on a bin edge.
  int k = static_cast<int>(std::floor(ratio / 0.05 + 0.5 + 1e-9));
  if (k < 1) k = 1;
  if (k > 40) k = 40;
  return k;
}

std::string render_token(ControlFeature f, int bin_index) {
  if (bin_index < 1 || bin_index > 40)
    throw DomainError("control bin out of range [1,40]");
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.2f", bin_index * 0.05);
  return std::string("<") + control_feature_name(f) + "_" + buf + ">";
}

std::string ControlToken::render() const {
  return render_token(feature, bin_index);
}

std::optional<double> control_value(ControlFeature f, const std::string& text,
                                    const FeatureContext& ctx) {
  TokenizedSentence ts = tokenize(text);
  const std::size_t n = ts.n_words();
  switch (f) {
    case ControlFeature::kNbChars:
      return static_cast<double>(utf8_length(text));
    case ControlFeature::kLevSim:
      // Pairwise property, see feature_ratio.
      return std::nullopt;
    case ControlFeature::kWordRank: {
      if (!ctx.resources.word_frequencies || n == 0) return std::nullopt;
      WordRanking ranking(*ctx.resources.word_frequencies);
      return word_rank(text, ranking);
    }
    case ControlFeature::kMLS:
      return static_cast<double>(n);
    case ControlFeature::kFry:
      return readability_features(ts, ctx).get("Fry-x");
    case ControlFeature::kFORCAST:
      return readability_features(ts, ctx).get("FORCAST");
    case ControlFeature::kWPCorp: {
      FeatureVector fv = psycholinguistic_features(ts, ctx);
      return fv.get(ctx.wpcorp_column);
    }
    case ControlFeature::kWPCrowd:
      return psycholinguistic_features(ts, ctx).get("WordPrevalence");
    case ControlFeature::kBigramNews:
      return ngram_features(ts, ctx).get("ngram2news");
    case ControlFeature::kANC:
      return lexical_features(ts, ctx).get("ANC");
    case ControlFeature::kAoA:
      return psycholinguistic_features(ts, ctx).get("AoA-mean");
    case ControlFeature::kMLWs:
      return lexical_features(ts, ctx).get("MLWs");
    case ControlFeature::kCTTR:
      return lexical_features(ts, ctx).get("cTTR");
  }
  return std::nullopt;
}

std::optional<double> feature_ratio(ControlFeature f,
                                    const std::string& source,
                                    const std::string& target,
                                    const FeatureContext& ctx) {
  if (f == ControlFeature::kLevSim)
    return levenshtein_similarity(source, target);
  std::optional<double> vs = control_value(f, source, ctx);
  std::optional<double> vt = control_value(f, target, ctx);
  if (!vs.has_value() || !vt.has_value()) return std::nullopt;
  if (*vs == 0.0 && *vt == 0.0) return 1.0;
  if (*vs == 0.0) return 2.0;  // undefined ratio, pinned to the cap
  return *vt / *vs;
}

AnnotatedSentence annotate_pair(const SentencePair& pair,
                                const std::vector<ControlFeature>& features,
                                const FeatureContext& ctx) {
  if (features.empty())
    throw ConfigError("annotation needs at least one control feature");
  AnnotatedSentence out;
  for (ControlFeature f : features) {
    std::optional<double> ratio =
        feature_ratio(f, pair.complex_text, pair.simple_text, ctx);
    if (!ratio.has_value()) continue;
    out.tokens.push_back({f, discretize_ratio(*ratio)});
  }
  std::string prefix;
  for (const auto& tok : out.tokens) {
    prefix += tok.render();
    prefix += ' ';
  }
  out.all_missing = out.tokens.empty();
  out.text = prefix + pair.complex_text;
  return out;
}

std::string annotate_inference(const std::string& sentence,
                               const std::vector<ControlToken>& tokens) {
  std::vector<bool> seen(sizeof(kFeatureNames) / sizeof(kFeatureNames[0]),
                         false);
  std::string prefix;
  for (const auto& tok : tokens) {
    std::size_t fi = static_cast<std::size_t>(tok.feature);
    if (fi >= seen.size() || seen[fi])
      throw ConfigError("duplicate control feature in token set: " +
                        std::string(control_feature_name(tok.feature)));
    seen[fi] = true;
    prefix += tok.render();
    prefix += ' ';
  }
  return prefix + sentence;
}

std::vector<std::string> annotate_inference(
    const std::vector<std::string>& sentences,
    const std::vector<ControlToken>& tokens) {
  std::vector<std::string> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(annotate_inference(s, tokens));
  return out;
}

std::vector<ControlToken> candidate_tokens(
    const std::vector<SentencePair>& pairs,
    const std::vector<ControlFeature>& features, std::size_t k,
    const FeatureContext& ctx) {
  if (pairs.empty()) throw DomainError("candidate_tokens needs training pairs");
  if (k < 1) throw ConfigError("candidate_tokens needs k >= 1");
  if (features.empty())
    throw ConfigError("candidate_tokens needs at least one feature");
  std::vector<ControlToken> out;
  for (ControlFeature f : features) {
    std::map<int, std::size_t> bin_counts;
    for (const auto& p : pairs) {
      std::optional<double> ratio =
          feature_ratio(f, p.complex_text, p.simple_text, ctx);
      if (ratio.has_value()) ++bin_counts[discretize_ratio(*ratio)];
    }
    std::vector<std::pair<int, std::size_t>> bins(bin_counts.begin(),
                                                  bin_counts.end());
    // Most frequent first; equal counts prefer the smaller bin (the map
    // iteration order already delivers ascending bins for stable_sort).
    std::stable_sort(bins.begin(), bins.end(),
                     [](const auto& a, const auto& b) {
                       return a.second > b.second;
                     });
    for (std::size_t i = 0; i < bins.size() && i < k; ++i)
      out.push_back({f, bins[i].first});
  }
  return out;
}

SelectionTrace greedy_forward_select(
    const std::vector<ControlToken>& candidates, Scorer& scorer,
    unsigned jobs) {
  SelectionTrace trace;
  std::vector<ControlToken> pool = candidates;
  std::vector<ControlToken> combo;
  try {
    double current = scorer.score(combo);
    trace.baseline = current;
    while (!pool.empty()) {
      std::vector<double> scores(pool.size(),
                                 -std::numeric_limits<double>::infinity());
      std::exception_ptr failure;
      std::mutex failure_mu;
      parallel_for(pool.size(), jobs, [&](std::size_t i) {
        try {
          std::vector<ControlToken> trial = combo;
          trial.push_back(pool[i]);
          scores[i] = scorer.score(trial);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      });
      if (failure) std::rethrow_exception(failure);
      // Position-based argmax keeps parallel and serial runs identical.
      std::size_t best = 0;
      for (std::size_t i = 1; i < pool.size(); ++i)
        if (scores[i] > scores[best]) best = i;
      if (scores[best] <= current) break;
      current = scores[best];
      combo.push_back(pool[best]);
      trace.steps.push_back({pool[best], current});
      ControlFeature chosen = pool[best].feature;
      pool.erase(std::remove_if(pool.begin(), pool.end(),
                                [&](const ControlToken& t) {
                                  return t.feature == chosen;
                                }),
                 pool.end());
    }
  } catch (const ScorerError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScorerError(e.what(), trace);
  }
  return trace;
}

// ---------------------------------------------------------------------------
// ProcessScorer
// ---------------------------------------------------------------------------

ProcessScorer::ProcessScorer(std::string command,
                             std::vector<std::string> validation_sources,
                             std::string reference_path, std::string work_dir,
                             int timeout_seconds)
    : command_(std::move(command)),
      sources_(std::move(validation_sources)),
      reference_path_(std::move(reference_path)),
      work_dir_(std::move(work_dir)),
      timeout_seconds_(timeout_seconds) {
  if (sources_.empty())
    throw ConfigError("scorer needs validation sentences");
  if (!std::filesystem::is_regular_file(reference_path_))
    throw IoError("reference file not found: " + reference_path_);
  std::filesystem::create_directories(work_dir_);
}

double ProcessScorer::score(const std::vector<ControlToken>& combo) {
  namespace fs = std::filesystem;
  const std::uint64_t call = call_id_.fetch_add(1);
  fs::path input =
      fs::path(work_dir_) / ("combo_" + std::to_string(call) + ".txt");
  {
    std::ofstream out(input);
    if (!out) throw IoError("cannot write scorer input: " + input.string());
    for (const auto& s : annotate_inference(sources_, combo)) out << s << '\n';
  }
  // timeout(1) keeps a wedged command from stalling the whole search.
  std::ostringstream cmd;
  cmd << "timeout " << timeout_seconds_ << "s " << command_ << " "
      << input.string() << " " << reference_path_ << " 2>/dev/null";
  FILE* pipe = popen(cmd.str().c_str(), "r");
  if (pipe == nullptr) throw IoError("cannot start scorer command");
  std::string output;
  char buf[256];
  while (fgets(buf, sizeof(buf), pipe) != nullptr) output += buf;
  int status = pclose(pipe);
  std::error_code ec;
  fs::remove(input, ec);
  if (status != 0) {
    std::ostringstream os;
    os << "scorer command failed (status " << status << ")";
    throw DataError(os.str());
  }
  try {
    std::size_t used = 0;
    double v = std::stod(output, &used);
    (void)used;
    if (!std::isfinite(v)) throw std::invalid_argument(output);
    return v;
  } catch (const std::exception&) {
    throw DataError("scorer printed no numeric score: '" + trim(output) + "'");
  }
}

}  // namespace simpkit
