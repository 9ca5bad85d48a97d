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

#ifndef SIMPKIT_FEATURES_HPP_
#define SIMPKIT_FEATURES_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "simpkit/corpus.hpp"
#include "simpkit/textproc.hpp"
#include "simpkit/treequery.hpp"

namespace simpkit {

// The fixed inventory of complexity features: 16 syntactic, 14 lexical,
// 25 register n-gram, 14 readability, 38 psycholinguistic = 107 ids.
class FeatureCatalog {
 public:
  struct Entry {
    std::string id;
    std::string family;  // syntactic|lexical|ngram|readability|psycholinguistic
    std::string description;
  };

  static const FeatureCatalog& builtin();
  static FeatureCatalog load(const std::string& path);

  const std::string& version() const { return version_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool has(const std::string& id) const;
  const Entry& entry(const std::string& id) const;
  std::vector<std::string> family_ids(const std::string& family) const;

 private:
  std::string version_;
  std::vector<Entry> entries_;
  std::map<std::string, std::size_t> index_;
  void add(Entry e);
  void validate() const;
};

// Readability formula identifiers (public ids match the catalog).
enum class ReadabilityFormula {
  kARI,
  kColemanLiau,
  kDaleChall,
  kDaleChallPSK,
  kFKGL,
  kFleschReadingEase,
  kFryX,
  kFryY,
  kLix,
  kRix,
  kSMOG,
  kGunningFog,
  kFORCAST,
  kSpache,
};

const char* readability_id(ReadabilityFormula f);
std::optional<ReadabilityFormula> readability_from_id(const std::string& id);

// Formula coefficients, loaded from a constants table (formula, name, value).
class ReadabilityConstants {
 public:
  static ReadabilityConstants load(const std::string& path);
  double get(const std::string& formula, const std::string& name) const;

 private:
  std::map<std::string, double> values_;  // "formula/name"
};

// Applies one readability formula to aggregate statistics.
// pct_difficult is the percentage (0..100) of words outside the formula's
// easy-word list; formulas that need it return nullopt when it is absent.
// Zero words is a domain error.
std::optional<double> readability(const SentenceStats& stats,
                                  ReadabilityFormula formula,
                                  const ReadabilityConstants& constants,
                                  std::optional<double> pct_difficult =
                                      std::nullopt);

// Word lists, lexicons and n-gram tables the extractors draw on. Any member
// may be absent; features that need it come back missing.
struct FeatureResources {
  std::shared_ptr<LexiconTable> function_words;  // LD
  std::shared_ptr<LexiconTable> stopwords;       // NonStopWordsRate
  std::shared_ptr<LexiconTable> afl;             // academic formulas
  std::shared_ptr<LexiconTable> anc;
  std::shared_ptr<LexiconTable> bnc;
  std::shared_ptr<LexiconTable> nawl;
  std::shared_ptr<LexiconTable> ngsl;
  std::shared_ptr<LexiconTable> dale_chall;      // easy words
  std::shared_ptr<LexiconTable> spache;          // easy words
  std::shared_ptr<LexiconTable> aoa;             // col 0: age of acquisition
  std::shared_ptr<LexiconTable> prevalence;      // col 0: crowd prevalence
  std::shared_ptr<LexiconTable> prevalence_categories;  // 35 Prev.* columns
  std::shared_ptr<LexiconTable> word_frequencies;       // rank-ordered
  std::map<std::string, std::size_t> syllable_overrides;
  std::vector<NgramTable> ngrams;

  // Picks up the conventional file names present under dir:
  // function_words.tsv stopwords.tsv afl.tsv anc.tsv bnc.tsv nawl.tsv
  // ngsl.tsv dale_chall.tsv spache.tsv aoa.tsv prevalence.tsv
  // prevalence_categories.tsv word_frequencies.tsv syllables.tsv ngrams/.
  static FeatureResources load(const std::string& dir);
};

// Everything feature extraction needs, bundled once per run.
struct FeatureContext {
  FeatureResources resources;
  ReadabilityConstants readability_constants;
  std::shared_ptr<SyntaxPatterns> patterns;
  bool ngram_mean = false;         // mean instead of summed frequency
  std::string wpcorp_column = "Prev.AllAP";  // corpus prevalence proxy

  const FeatureCatalog& catalog() const { return FeatureCatalog::builtin(); }
};

// Family extractors. Results carry every id of the family; undefined values
// are present-but-missing (serialized as null).
FeatureVector lexical_features(const TokenizedSentence& ts,
                               const FeatureContext& ctx);
FeatureVector readability_features(const TokenizedSentence& ts,
                                   const FeatureContext& ctx);
FeatureVector ngram_features(const TokenizedSentence& ts,
                             const FeatureContext& ctx);
FeatureVector psycholinguistic_features(const TokenizedSentence& ts,
                                        const FeatureContext& ctx);
FeatureVector syntactic_features(const ParseTree* tree,
                                 const FeatureContext& ctx);

// All 107 features; tree may be null (syntactic family comes back missing).
FeatureVector full_vector(const std::string& text, const ParseTree* tree,
                          const FeatureContext& ctx);

// Sliding-window trend of one feature over an ordered document.
// values[i] averages sentences i..i+w-1, skipping missing sentences; a
// window with no defined value is missing. w >= 1; w > n collapses to one
// window over everything.
struct ContourSeries {
  std::string feature_id;
  std::size_t window = 1;
  std::vector<std::optional<double>> values;
};

ContourSeries contour(const std::vector<FeatureVector>& sentences,
                      const std::string& feature_id, std::size_t w);

// Loads readability constants and the pattern library from data_dir and,
// when resources_dir is non-empty, the word lists and n-gram tables.
FeatureContext make_context(const std::string& data_dir,
                            const std::string& resources_dir = "");

}  // namespace simpkit

#endif  // SIMPKIT_FEATURES_HPP_
