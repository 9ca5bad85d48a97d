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

#include "simpkit/textproc.hpp"

#include "simpkit/common.hpp"

namespace simpkit {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Punctuation for peeling: printable ASCII that is neither alphanumeric nor
// whitespace. Multibyte characters are never peeled.
bool is_peelable_punct(unsigned char c) {
  return c < 0x80 && !is_ascii_alnum(static_cast<char>(c)) &&
         !is_space(static_cast<char>(c));
}

bool has_word_char(const std::string& tok) {
  for (unsigned char c : tok) {
    if (is_word_char(c)) return true;
  }
  return false;
}

bool is_vowel(char c) {
  switch (fold_char(c)) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
    case 'y':
      return true;
    default:
      return false;
  }
}

}  // namespace

TokenizedSentence tokenize(const std::string& text) {
  TokenizedSentence ts;
  ts.text = text;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    while (i < n && is_space(text[i])) ++i;
    if (i >= n) break;
    std::size_t j = i;
    while (j < n && !is_space(text[j])) ++j;
    // Chunk [i, j): peel punctuation off both ends, keep the core intact.
    std::size_t b = i, e = j;
    while (b < e && is_peelable_punct(static_cast<unsigned char>(text[b])))
      ++b;
    while (e > b && is_peelable_punct(static_cast<unsigned char>(text[e - 1])))
      --e;
    for (std::size_t k = i; k < b; ++k) ts.tokens.push_back(text.substr(k, 1));
    if (b < e) ts.tokens.push_back(text.substr(b, e - b));
    for (std::size_t k = e; k < j; ++k) ts.tokens.push_back(text.substr(k, 1));
    i = j;
  }
  for (std::size_t t = 0; t < ts.tokens.size(); ++t) {
    if (has_word_char(ts.tokens[t])) ts.word_indices.push_back(t);
  }
  return ts;
}

std::size_t letter_digit_count(const std::string& token) {
  std::size_t n = 0;
  for (unsigned char c : token) {
    if (is_word_char(c)) ++n;
  }
  return n;
}

std::size_t count_syllables(const std::string& word) {
  static const std::map<std::string, std::size_t> kNoOverrides;
  return count_syllables(word, kNoOverrides);
}

std::size_t count_syllables(
    const std::string& word,
    const std::map<std::string, std::size_t>& overrides) {
  if (!overrides.empty()) {
    auto it = overrides.find(fold(word));
    if (it != overrides.end()) return it->second;
  }
  std::size_t groups = 0;
  bool prev_vowel = false;
  char last_letter = 0;
  for (char c : word) {
    if (is_ascii_alpha(c)) {
      bool v = is_vowel(c);
      if (v && !prev_vowel) ++groups;
      prev_vowel = v;
      last_letter = fold_char(c);
    } else {
      // Hyphens and other separators break vowel groups.
      prev_vowel = false;
    }
  }
  if (groups == 0) return 1;
  if (last_letter == 'e' && groups > 1) --groups;
  return groups == 0 ? 1 : groups;
}

SentenceStats sentence_stats(const TokenizedSentence& ts) {
  static const std::map<std::string, std::size_t> kNoOverrides;
  return sentence_stats(ts, kNoOverrides);
}

SentenceStats sentence_stats(
    const TokenizedSentence& ts,
    const std::map<std::string, std::size_t>& syllable_overrides) {
  SentenceStats st;
  st.n_sentences = 1;
  st.n_words = ts.n_words();
  for (std::size_t i = 0; i < ts.n_words(); ++i) {
    const std::string& w = ts.word(i);
    std::size_t chars = letter_digit_count(w);
    std::size_t syll = count_syllables(w, syllable_overrides);
    st.n_chars += chars;
    st.n_syllables += syll;
    if (chars >= 7) ++st.n_long_words;
    if (syll >= 3) ++st.n_complex_words;
    if (syll == 1) ++st.n_monosyllables;
  }
  return st;
}

SentenceStats operator+(const SentenceStats& a, const SentenceStats& b) {
  SentenceStats s;
  s.n_words = a.n_words + b.n_words;
  s.n_chars = a.n_chars + b.n_chars;
  s.n_syllables = a.n_syllables + b.n_syllables;
  s.n_sentences = a.n_sentences + b.n_sentences;
  s.n_complex_words = a.n_complex_words + b.n_complex_words;
  s.n_long_words = a.n_long_words + b.n_long_words;
  s.n_monosyllables = a.n_monosyllables + b.n_monosyllables;
  return s;
}

}  // namespace simpkit
