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

#ifndef SIMPKIT_EXPLAIN_HPP_
#define SIMPKIT_EXPLAIN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "simpkit/corpus.hpp"
#include "simpkit/metrics.hpp"
#include "simpkit/textproc.hpp"

namespace simpkit {

// Per-word salience scores derived from model attention.
struct WordWeights {
  std::vector<double> weights;
  enum class Source { kAttention, kOther } source = Source::kAttention;
};

// One flag per word of a sentence; true marks a complexity explanation.
using HighlightMask = std::vector<bool>;

// Collapses subword attention to word weights: mean over a word's subwords
// within each head, then mean across heads.
WordWeights attention_to_word_weights(const AttentionRecord& rec);

enum class ThresholdSide { kBelow, kAbove };

// Marks words whose weight is strictly below (or above) the mean weight.
HighlightMask threshold_highlight(const WordWeights& w,
                                  ThresholdSide side = ThresholdSide::kBelow);

// Random baseline: each word is marked with probability p (p in [0,1]),
// reproducibly for a given seed.
HighlightMask random_highlight(std::size_t n_words, double p, std::uint64_t seed);

// Lexicon baseline: marks words whose age-of-acquisition rating meets the
// cutoff; out-of-lexicon words are never marked.
HighlightMask aoa_highlight(const TokenizedSentence& ts,
                            const LexiconTable& aoa, double cutoff);

// Silver labels from an aligned pair: for every case-folded word type, the
// occurrences of the complex side that exceed the simple side's count are
// marked, latest occurrences first.
HighlightMask gold_highlight(const SentencePair& pair);

struct HighlightScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Word-level precision/recall/F1 of a predicted mask against gold.
// Empty gold makes recall 1; empty prediction makes precision 1 only when
// gold is empty too. Masks must have equal length.
HighlightScore eval_highlight(const HighlightMask& pred,
                              const HighlightMask& gold);

// Edit cost of rewriting the unhighlighted remainder into the target:
// translation edit rate of the kept words against the simple side.
double highlight_ter(const TokenizedSentence& ts, const HighlightMask& mask,
                     const std::string& target);

// "**word**" rendering over the word tokens; punctuation passes through.
std::string format_highlight(const TokenizedSentence& ts,
                             const HighlightMask& mask);

// Space-separated 0/1 line aligned with the words.
std::string mask_line(const HighlightMask& mask);

}  // namespace simpkit

#endif  // SIMPKIT_EXPLAIN_HPP_
