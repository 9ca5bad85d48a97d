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

#include "simpkit/explain.hpp"

#include <random>
#include <unordered_map>

#include "simpkit/common.hpp"

namespace simpkit {

WordWeights attention_to_word_weights(const AttentionRecord& rec) {
  const std::size_t n_words = rec.n_words();
  const std::size_t n_heads = rec.heads.size();
  if (n_words == 0 || n_heads == 0)
    throw DataError("attention record has no words or heads");
  WordWeights out;
  out.source = WordWeights::Source::kAttention;
  out.weights.assign(n_words, 0.0);
  std::vector<double> subwords_per_word(n_words, 0.0);
  for (std::size_t t = 0; t < rec.word_map.size(); ++t) {
    if (rec.word_map[t] >= n_words)
      throw DataError("word_map entry out of range");
    subwords_per_word[rec.word_map[t]] += 1.0;
  }
  for (std::size_t w = 0; w < n_words; ++w)
    if (subwords_per_word[w] == 0.0)
      throw DataError("word_map gap: word " + std::to_string(w) +
                      " has no subwords");
  for (std::size_t h = 0; h < n_heads; ++h) {
    for (std::size_t t = 0; t < rec.word_map.size(); ++t)
      out.weights[rec.word_map[t]] += rec.heads[h][t];
  }
  // Each accumulated cell holds sum over heads and subwords; divide by both.
  for (std::size_t w = 0; w < n_words; ++w)
    out.weights[w] /=
        subwords_per_word[w] * static_cast<double>(n_heads);
  return out;
}

HighlightMask threshold_highlight(const WordWeights& w, ThresholdSide side) {
  if (w.weights.empty()) return {};
  double mean = 0;
  for (double v : w.weights) mean += v;
  mean /= static_cast<double>(w.weights.size());
  HighlightMask mask(w.weights.size(), false);
  for (std::size_t i = 0; i < w.weights.size(); ++i) {
    mask[i] = side == ThresholdSide::kBelow ? w.weights[i] < mean
                                            : w.weights[i] > mean;
  }
  return mask;
}

HighlightMask random_highlight(std::size_t n_words, double p,
                               std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw DomainError("highlight probability must be in [0,1]");
  std::mt19937_64 rng(seed);
  HighlightMask mask(n_words, false);
  for (std::size_t i = 0; i < n_words; ++i) {
    // 53-bit uniform double in [0,1); bit-reproducible across platforms,
    // unlike std::uniform_real_distribution.
    double u = static_cast<double>(rng() >> 11) *
               (1.0 / 9007199254740992.0);
    mask[i] = u < p;
  }
  return mask;
}

HighlightMask aoa_highlight(const TokenizedSentence& ts,
                            const LexiconTable& aoa, double cutoff) {
  HighlightMask mask(ts.n_words(), false);
  for (std::size_t i = 0; i < ts.n_words(); ++i) {
    if (auto v = aoa.lookup(fold(ts.word(i)), 0)) mask[i] = *v >= cutoff;
  }
  return mask;
}

HighlightMask gold_highlight(const SentencePair& pair) {
  TokenizedSentence complex_ts = tokenize(pair.complex_text);
  TokenizedSentence simple_ts = tokenize(pair.simple_text);
  std::unordered_map<std::string, long> budget;
  for (std::size_t i = 0; i < simple_ts.n_words(); ++i)
    ++budget[fold(simple_ts.word(i))];
  // An occurrence is surplus once the simple side's count for its type is
  // used up, so the later duplicates get marked.
  HighlightMask mask(complex_ts.n_words(), false);
  std::unordered_map<std::string, long> seen;
  for (std::size_t i = 0; i < complex_ts.n_words(); ++i) {
    std::string w = fold(complex_ts.word(i));
    ++seen[w];
    long keep = budget.count(w) ? budget[w] : 0;
    mask[i] = seen[w] > keep;
  }
  return mask;
}

HighlightScore eval_highlight(const HighlightMask& pred,
                              const HighlightMask& gold) {
  if (pred.size() != gold.size())
    throw DomainError("highlight masks differ in length");
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] && gold[i]) ++tp;
    if (pred[i] && !gold[i]) ++fp;
    if (!pred[i] && gold[i]) ++fn;
  }
  HighlightScore s;
  s.precision = (tp + fp) > 0 ? static_cast<double>(tp) /
                                    static_cast<double>(tp + fp)
                              : (fn == 0 ? 1.0 : 0.0);
  s.recall = (tp + fn) > 0
                 ? static_cast<double>(tp) / static_cast<double>(tp + fn)
                 : 1.0;
  s.f1 = (s.precision + s.recall) > 0
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

double highlight_ter(const TokenizedSentence& ts, const HighlightMask& mask,
                     const std::string& target) {
  if (mask.size() != ts.n_words())
    throw DomainError("highlight mask length differs from word count");
  std::string kept;
  for (std::size_t i = 0; i < ts.n_words(); ++i) {
    if (mask[i]) continue;
    if (!kept.empty()) kept += ' ';
    kept += ts.word(i);
  }
  return ter(kept, target);
}

std::string format_highlight(const TokenizedSentence& ts,
                             const HighlightMask& mask) {
  if (mask.size() != ts.n_words())
    throw DomainError("highlight mask length differs from word count");
  std::unordered_map<std::size_t, std::size_t> word_of_token;
  for (std::size_t i = 0; i < ts.word_indices.size(); ++i)
    word_of_token[ts.word_indices[i]] = i;
  std::string out;
  for (std::size_t t = 0; t < ts.tokens.size(); ++t) {
    if (!out.empty()) out += ' ';
    auto it = word_of_token.find(t);
    if (it != word_of_token.end() && mask[it->second])
      out += "**" + ts.tokens[t] + "**";
    else
      out += ts.tokens[t];
  }
  return out;
}

std::string mask_line(const HighlightMask& mask) {
  std::string out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (i) out += ' ';
    out += mask[i] ? '1' : '0';
  }
  return out;
}

}  // namespace simpkit
