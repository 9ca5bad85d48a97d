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

#ifndef SIMPKIT_TEXTPROC_HPP_
#define SIMPKIT_TEXTPROC_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace simpkit {

// A sentence split into surface tokens. word_indices selects the tokens that
// contain at least one letter or digit; everything else is punctuation.
struct TokenizedSentence {
  std::string text;
  std::vector<std::string> tokens;
  std::vector<std::size_t> word_indices;

  std::size_t n_words() const { return word_indices.size(); }
  const std::string& word(std::size_t i) const {
    return tokens[word_indices[i]];
  }
};

// Per-sentence surface statistics feeding the readability formulas.
// n_chars counts letters and digits of word tokens only; n_long_words uses a
// 7+ character threshold, n_complex_words a 3+ syllable threshold.
struct SentenceStats {
  std::size_t n_words = 0;
  std::size_t n_chars = 0;
  std::size_t n_syllables = 0;
  std::size_t n_sentences = 0;
  std::size_t n_complex_words = 0;
  std::size_t n_long_words = 0;
  std::size_t n_monosyllables = 0;
};

// Whitespace tokenization with leading/trailing ASCII punctuation peeled off
// as single-character tokens. Interior punctuation (hyphens, apostrophes)
// stays inside the token; bytes >= 0x80 count as word characters.
TokenizedSentence tokenize(const std::string& text);

// Number of letters and digits in a token.
std::size_t letter_digit_count(const std::string& token);

// Heuristic English syllable count: maximal vowel groups (aeiouy, case
// folded), minus a terminal silent 'e' when another group precedes it,
// never below one. Tokens without letters count one syllable.
// overrides maps case-folded words to fixed counts and wins when present.
std::size_t count_syllables(const std::string& word);
std::size_t count_syllables(const std::string& word,
                            const std::map<std::string, std::size_t>& overrides);

// Aggregates stats over one tokenized sentence (n_sentences = 1).
// Stats over concatenated text equal the field-wise sum of per-sentence
// stats except n_sentences.
SentenceStats sentence_stats(const TokenizedSentence& ts);
SentenceStats sentence_stats(const TokenizedSentence& ts,
                             const std::map<std::string, std::size_t>& syllable_overrides);

// Field-wise sum; n_sentences adds as well, so callers accumulate documents
// by summing per-sentence stats.
SentenceStats operator+(const SentenceStats& a, const SentenceStats& b);

}  // namespace simpkit

#endif  // SIMPKIT_TEXTPROC_HPP_
