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

#ifndef SIMPKIT_CORPUS_HPP_
#define SIMPKIT_CORPUS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "simpkit/treequery.hpp"

namespace simpkit {

// One aligned complex/simple sentence pair. Trees are optional side data.
struct SentencePair {
  std::size_t id = 0;
  std::string complex_text;
  std::string simple_text;
  std::optional<ParseTree> complex_tree;
  std::optional<ParseTree> simple_tree;
};

// Tab-separated "complex<TAB>simple", one pair per line, ids assigned by
// line order starting at 0. Errors name the line number.
std::vector<SentencePair> load_pairs(const std::string& path);
void write_pairs(const std::vector<SentencePair>& pairs,
                 const std::string& path);

// One bracketed tree per line aligned with a sentence file; a blank line
// means "no parse". The file must contain exactly n_expected lines.
std::vector<std::optional<ParseTree>> load_trees(const std::string& path,
                                                 std::size_t n_expected);

// Word table with zero or more numeric columns. Keys are case folded;
// insertion order is preserved (word frequency files are rank-ordered).
class LexiconTable {
 public:
  struct Row {
    std::string word;
    std::vector<double> values;
  };

  LexiconTable() = default;
  LexiconTable(std::string name, std::vector<std::string> columns);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  std::optional<std::size_t> column_index(const std::string& column) const;

  // Throws DataError on duplicate words.
  void add(const std::string& word, std::vector<double> values);

  bool contains(const std::string& folded_word) const;
  // Value in the given column, or nullopt when the word is absent.
  std::optional<double> lookup(const std::string& folded_word,
                               std::size_t column = 0) const;

 private:
  std::string name_;
  std::vector<std::string> columns_;
  std::vector<Row> rows_;
  std::unordered_map<std::string, std::size_t> index_;
};

// TSV with header "word<TAB>col..." (a bare "word" header makes a pure
// membership list). Non-numeric cells and duplicate words are errors.
LexiconTable load_lexicon(const std::string& path);

// N-gram frequency table for one register and order.
struct NgramTable {
  std::string register_name;  // spoken|fiction|magazine|news|academic
  int order = 1;
  std::unordered_map<std::string, double> freq;  // key: folded, space-joined
};

// Loads every "<register>.<order>.tsv" found in dir. Lines are
// "gram<TAB>frequency"; the gram's token count must equal the order.
std::vector<NgramTable> load_ngrams(const std::string& dir);

// Attention map for one sentence: per-head weights over subword tokens plus
// the subword-to-word alignment (non-decreasing, contiguous from 0).
struct AttentionRecord {
  std::vector<std::string> tokens;
  std::vector<std::size_t> word_map;
  std::vector<std::vector<double>> heads;  // heads x tokens

  std::size_t n_words() const {
    return word_map.empty() ? 0 : word_map.back() + 1;
  }
};

// JSONL, one record per line: {"tokens": [...], "word_map": [...],
// "heads": [[...], ...]}. Validates shape and alignment invariants.
std::vector<AttentionRecord> load_attention(const std::string& path);

// Feature vector keyed by catalog ids. A key mapped to nullopt was computed
// but undefined (serialized as null); keys never in the map were not
// requested. Present values are finite.
struct FeatureVector {
  std::string catalog_version;
  std::map<std::string, std::optional<double>> values;

  void set(const std::string& id, double v) { values[id] = v; }
  void set_missing(const std::string& id) { values[id] = std::nullopt; }
  std::optional<double> get(const std::string& id) const {
    auto it = values.find(id);
    return it == values.end() ? std::nullopt : it->second;
  }
  std::size_t present_count() const;
};

struct FeatureRow {
  std::size_t id = 0;
  FeatureVector features;
};

// JSONL round-trip of feature rows. Doubles survive bit-exactly. All rows
// must share one catalog version and only use catalog ids.
void export_features(const std::vector<FeatureRow>& rows,
                     const std::string& path);
std::vector<FeatureRow> import_features(const std::string& path);

}  // namespace simpkit

#endif  // SIMPKIT_CORPUS_HPP_
