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

#ifndef SIMPKIT_CONTROL_HPP_
#define SIMPKIT_CONTROL_HPP_

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simpkit/common.hpp"
#include "simpkit/corpus.hpp"
#include "simpkit/features.hpp"
#include "simpkit/metrics.hpp"

namespace simpkit {

// Attributes a conditioned simplification model can be steered on. Each
// annotates training pairs with the target/source ratio of one property.
enum class ControlFeature {
  kNbChars,     // character count
  kLevSim,      // character Levenshtein similarity
  kWordRank,    // third-quartile log word rank
  kMLS,         // sentence length in words
  kFry,         // syllables per 100 words
  kFORCAST,     // FORCAST grade
  kWPCorp,      // corpus-derived word prevalence
  kWPCrowd,     // crowdsourced word prevalence
  kBigramNews,  // news bigram frequency
  kANC,         // share of words beyond the ANC top list
  kAoA,         // mean age of acquisition
  kMLWs,        // mean word length in syllables
  kCTTR,        // corrected type-token ratio
};

const char* control_feature_name(ControlFeature f);
std::optional<ControlFeature> control_feature_from_name(const std::string& s);
std::vector<ControlFeature> all_control_features();

// A discretized ratio bin: bin_index in [1,40] covering 0.05 .. 2.00 in
// 0.05 steps. Rendered as "<NAME_X.XX>".
struct ControlToken {
  ControlFeature feature;
  int bin_index = 20;  // 1.00

  double bin_value() const { return bin_index * 0.05; }
  std::string render() const;

  friend bool operator==(const ControlToken& a, const ControlToken& b) {
    return a.feature == b.feature && a.bin_index == b.bin_index;
  }
};

// Rounds a non-negative ratio to the nearest 0.05 (ties up), clamped to
// [0.05, 2.00]. Negative ratios are a domain error.
int discretize_ratio(double ratio);
std::string render_token(ControlFeature f, int bin_index);

// Property value of one side. nullopt when the needed resource is absent or
// the property is undefined for the sentence.
std::optional<double> control_value(ControlFeature f, const std::string& text,
                                    const FeatureContext& ctx);

// target/source ratio with the conventions: both zero -> 1.0, zero source
// with non-zero target -> 2.0 (the cap). kLevSim is the similarity itself.
std::optional<double> feature_ratio(ControlFeature f,
                                    const std::string& source,
                                    const std::string& target,
                                    const FeatureContext& ctx);

struct AnnotatedSentence {
  std::string text;          // "<TOK> <TOK> source-text"
  std::vector<ControlToken> tokens;
  bool all_missing = false;  // no property was computable, text is bare
};

// Training-time annotation: per-pair ratios for the given features (order
// preserved), discretized and prefixed to the complex side.
AnnotatedSentence annotate_pair(const SentencePair& pair,
                                const std::vector<ControlFeature>& features,
                                const FeatureContext& ctx);

// Inference-time annotation with fixed tokens (at most one per feature).
std::string annotate_inference(const std::string& sentence,
                               const std::vector<ControlToken>& tokens);
std::vector<std::string> annotate_inference(
    const std::vector<std::string>& sentences,
    const std::vector<ControlToken>& tokens);

// The k most frequent bins of every feature over a training corpus, ties
// broken toward the smaller bin. Result groups by feature in the given
// order, bins most-frequent first.
std::vector<ControlToken> candidate_tokens(
    const std::vector<SentencePair>& pairs,
    const std::vector<ControlFeature>& features, std::size_t k,
    const FeatureContext& ctx);

// Scores a token combination (higher is better). Implementations run the
// downstream simplification system on annotated validation data.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual double score(const std::vector<ControlToken>& combo) = 0;
};

struct SelectionStep {
  ControlToken token;
  double score = 0;
};

struct SelectionTrace {
  double baseline = 0;  // score of the empty combination
  std::vector<SelectionStep> steps;

  std::vector<ControlToken> selected() const {
    std::vector<ControlToken> out;
    for (const auto& s : steps) out.push_back(s.token);
    return out;
  }
};

// Scorer failure; carries whatever the search had already established.
class ScorerError : public Error {
 public:
  ScorerError(const std::string& what, SelectionTrace partial)
      : Error(what), partial_trace(std::move(partial)) {}
  SelectionTrace partial_trace;
};

// Greedy forward selection: starting from the empty combination, repeatedly
// adds the candidate with the best score, dropping the chosen feature's
// other candidates, until no candidate strictly improves on the current
// score. Ties go to the earlier candidate. jobs > 1 evaluates candidates of
// one round concurrently; the argmax is position-based either way.
SelectionTrace greedy_forward_select(const std::vector<ControlToken>& candidates,
                                     Scorer& scorer, unsigned jobs = 1);

// Runs "command <annotated-file> <reference-file>" through the shell for
// every combination; the command must print one real number (the score).
// Non-zero exit, timeout or unparseable output raise ScorerError.
class ProcessScorer : public Scorer {
 public:
  ProcessScorer(std::string command, std::vector<std::string> validation_sources,
                std::string reference_path, std::string work_dir,
                int timeout_seconds = 300);
  double score(const std::vector<ControlToken>& combo) override;

 private:
  std::string command_;
  std::vector<std::string> sources_;
  std::string reference_path_;
  std::string work_dir_;
  int timeout_seconds_;
  std::atomic<std::uint64_t> call_id_{0};
};

}  // namespace simpkit

#endif  // SIMPKIT_CONTROL_HPP_
