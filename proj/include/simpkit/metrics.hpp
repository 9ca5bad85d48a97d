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

#ifndef SIMPKIT_METRICS_HPP_
#define SIMPKIT_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "simpkit/corpus.hpp"
#include "simpkit/textproc.hpp"

namespace simpkit {

// SARI per-operation F1 values by n-gram order plus their means; the final
// score is the mean of the three operation scores, scaled to 0..100.
struct SariBreakdown {
  double f_add[4] = {0, 0, 0, 0};
  double f_keep[4] = {0, 0, 0, 0};
  double f_del[4] = {0, 0, 0, 0};
  double add = 0;    // mean over n of f_add
  double keep = 0;
  double del = 0;
  double sari = 0;   // 100 * (add + keep + del) / 3
};

struct SariOptions {
  // Score deletions by precision alone instead of F1 (the metric's original
  // formulation); off by default to keep the three operations symmetric.
  bool del_precision_only = false;
};

// Case-folded word-level SARI against one or more references.
// references must be non-empty; every sentence may be empty of tokens.
SariBreakdown sari(const std::string& source, const std::string& prediction,
                   const std::vector<std::string>& references,
                   const SariOptions& opts = {});
SariBreakdown sari_tokens(const std::vector<std::string>& source,
                          const std::vector<std::string>& prediction,
                          const std::vector<std::vector<std::string>>& references,
                          const SariOptions& opts = {});

// Translation edit rate: edits / reference length, case-folded word level.
struct EditCosts {
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t substitutions = 0;
  std::size_t shifts = 0;
  std::size_t total() const {
    return insertions + deletions + substitutions + shifts;
  }
};

struct TerResult {
  double rate = 0;
  EditCosts costs;
  std::size_t reference_length = 0;
};

struct TerOptions {
  bool with_shifts = true;  // false: plain word edit rate
};

TerResult ter_detail(const std::string& hypothesis, const std::string& reference,
                     const TerOptions& opts = {});
double ter(const std::string& hypothesis, const std::string& reference,
           const TerOptions& opts = {});

// Character-level (code point) Levenshtein similarity in [0,1]:
// 1 - distance / max length; two empty strings are identical (1.0).
double levenshtein_similarity(const std::string& a, const std::string& b);

// Word-level Levenshtein distance over surface tokens.
std::size_t edit_distance(const std::string& a, const std::string& b);

// Third-quartile log rank of a sentence's words under a frequency table.
// The table's rows are ranked by descending frequency (ties keep file
// order); unknown words rank one past the table. The quartile uses linear
// interpolation at position 0.75*(n-1) of the sorted log ranks.
// A sentence without words is a domain error.
class WordRanking {
 public:
  explicit WordRanking(const LexiconTable& frequencies);
  std::size_t rank(const std::string& folded_word) const;
  std::size_t size() const { return size_; }

 private:
  std::unordered_map<std::string, std::size_t> rank_;
  std::size_t size_ = 0;
};

double word_rank(const std::string& sentence, const WordRanking& ranking);

// Flesch-Kincaid grade level of running text (tokenized internally,
// n_sentences taken from the argument).
double fkgl(const SentenceStats& stats);

}  // namespace simpkit

#endif  // SIMPKIT_METRICS_HPP_
