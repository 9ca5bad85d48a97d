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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include "simpkit/common.hpp"
#include "simpkit/corpus.hpp"
#include "simpkit/features.hpp"

using namespace simpkit;
namespace fs = std::filesystem;

namespace {

const std::string kDataDir = SIMPKIT_DATA_DIR;

const ReadabilityConstants& constants() {
  static const ReadabilityConstants k =
      ReadabilityConstants::load(kDataDir + "/readability_constants.tsv");
  return k;
}

SentenceStats stats(std::size_t words, std::size_t sentences,
                    std::size_t syllables, std::size_t chars = 0,
                    std::size_t complex_w = 0, std::size_t long_w = 0,
                    std::size_t mono = 0) {
  SentenceStats s;
  s.n_words = words;
  s.n_sentences = sentences;
  s.n_syllables = syllables;
  s.n_chars = chars;
  s.n_complex_words = complex_w;
  s.n_long_words = long_w;
  s.n_monosyllables = mono;
  return s;
}

std::shared_ptr<LexiconTable> word_list(const std::string& name,
                                        std::vector<std::string> words) {
  auto t = std::make_shared<LexiconTable>(name, std::vector<std::string>{});
  for (auto& w : words) t->add(w, {});
  return t;
}

FeatureContext bare_context() {
  FeatureContext ctx;
  ctx.readability_constants = constants();
  return ctx;
}

}  // namespace

TEST_CASE("catalog inventory") {
  const FeatureCatalog& c = FeatureCatalog::builtin();
  CHECK(c.size() == 107);
  CHECK(c.version() == "107.1");
  CHECK(c.family_ids("syntactic").size() == 16);
  CHECK(c.family_ids("lexical").size() == 14);
  CHECK(c.family_ids("ngram").size() == 25);
  CHECK(c.family_ids("readability").size() == 14);
  CHECK(c.family_ids("psycholinguistic").size() == 38);
  CHECK(c.has("MLS"));
  CHECK(c.has("ngram3acad"));
  CHECK(c.has("ngram1spok"));
  CHECK(c.has("Prev.USASDBP"));
  CHECK(c.has("AoA-max"));
  CHECK_FALSE(c.has("nope"));
  CHECK(c.entry("MLS").family == "syntactic");
  CHECK(c.entry("FKGL").family == "readability");
  CHECK_THROWS_AS(c.entry("nope"), ConfigError);
  CHECK_THROWS_AS(c.family_ids("nope"), ConfigError);
}

TEST_CASE("catalog file round-trip") {
  const FeatureCatalog& b = FeatureCatalog::builtin();
  fs::path p = fs::temp_directory_path() / "simpkit_catalog.tsv";
  {
    std::ofstream out(p);
    out << "# feature catalog, version=" << b.version() << "\n";
    for (const auto& e : b.entries())
      out << e.id << "\t" << e.family << "\t" << e.description << "\n";
  }
  FeatureCatalog loaded = FeatureCatalog::load(p.string());
  CHECK(loaded.version() == b.version());
  REQUIRE(loaded.size() == b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(loaded.entries()[i].id == b.entries()[i].id);
    CHECK(loaded.entries()[i].family == b.entries()[i].family);
  }
}

TEST_CASE("readability formulas hit pinned values") {
  const ReadabilityConstants& k = constants();
  auto val = [&](const SentenceStats& s, ReadabilityFormula f,
                 std::optional<double> pct = std::nullopt) {
    return *readability(s, f, k, pct);
  };
  CHECK(val(stats(10, 1, 15), ReadabilityFormula::kFKGL) ==
        doctest::Approx(6.01).epsilon(1e-12));
  CHECK(val(stats(10, 1, 15), ReadabilityFormula::kFleschReadingEase) ==
        doctest::Approx(69.785).epsilon(1e-12));
  CHECK(val(stats(20, 1, 0, 0, 0, 5), ReadabilityFormula::kLix) ==
        doctest::Approx(45.0));
  CHECK(val(stats(10, 1, 0, 50), ReadabilityFormula::kARI) ==
        doctest::Approx(7.12).epsilon(1e-12));
  CHECK(val(stats(10, 1, 0, 0, 3), ReadabilityFormula::kGunningFog) ==
        doctest::Approx(16.0));
  CHECK(val(stats(150, 1, 0, 0, 0, 0, 90), ReadabilityFormula::kFORCAST) ==
        doctest::Approx(11.0));
  CHECK(val(stats(100, 5, 0, 450), ReadabilityFormula::kColemanLiau) ==
        doctest::Approx(9.18).epsilon(1e-12));
  CHECK(val(stats(100, 5, 141), ReadabilityFormula::kFryX) ==
        doctest::Approx(141.0));
  CHECK(val(stats(100, 5, 141), ReadabilityFormula::kFryY) ==
        doctest::Approx(5.0));
  CHECK(val(stats(10, 2, 0, 0, 0, 5), ReadabilityFormula::kRix) ==
        doctest::Approx(2.5));
  CHECK(val(stats(100, 10, 0, 0, 12), ReadabilityFormula::kSMOG) ==
        doctest::Approx(1.0430 * 6.0 + 3.1291).epsilon(1e-12));
}

TEST_CASE("difficult-word formulas use the percentage argument") {
  const ReadabilityConstants& k = constants();
  SentenceStats s = stats(20, 1, 0);
  CHECK(*readability(s, ReadabilityFormula::kDaleChall, k, 10.0) ==
        doctest::Approx(6.2075).epsilon(1e-12));
  // At or below the threshold the adjustment constant is not added.
  CHECK(*readability(s, ReadabilityFormula::kDaleChall, k, 4.0) ==
        doctest::Approx(1.6236).epsilon(1e-12));
  CHECK(*readability(s, ReadabilityFormula::kDaleChallPSK, k, 10.0) ==
        doctest::Approx(3.2672 + 0.0596 * 20 + 0.1155 * 10).epsilon(1e-12));
  SentenceStats sp = stats(20, 2, 0);
  CHECK(*readability(sp, ReadabilityFormula::kSpache, k, 10.0) ==
        doctest::Approx(0.141 * 10 + 0.086 * 10 + 0.839).epsilon(1e-12));
  CHECK_FALSE(readability(s, ReadabilityFormula::kDaleChall, k).has_value());
  CHECK_FALSE(readability(s, ReadabilityFormula::kDaleChallPSK, k).has_value());
  CHECK_FALSE(readability(s, ReadabilityFormula::kSpache, k).has_value());
}

TEST_CASE("readability rejects empty input") {
  const ReadabilityConstants& k = constants();
  CHECK_THROWS_AS(readability(stats(0, 1, 0), ReadabilityFormula::kFKGL, k),
                  DomainError);
  CHECK_THROWS_AS(readability(stats(10, 0, 5), ReadabilityFormula::kFKGL, k),
                  DomainError);
}

TEST_CASE("readability constants loader validates rows") {
  fs::path p = fs::temp_directory_path() / "simpkit_bad_constants.tsv";
  {
    std::ofstream out(p);
    out << "FKGL\twords_per_sentence\tnotanumber\n";
  }
  CHECK_THROWS_AS(ReadabilityConstants::load(p.string()), DataError);
  CHECK_THROWS_AS(constants().get("FKGL", "no_such_constant"), DataError);
}

TEST_CASE("lexical features on a tiny sentence") {
  FeatureContext ctx = bare_context();
  ctx.resources.function_words = word_list("function_words", {"the"});
  ctx.resources.stopwords = word_list("stopwords", {"the", "saw"});
  ctx.resources.afl = word_list("afl", {"saw"});
  ctx.resources.anc = word_list("anc", {"the", "cat"});
  ctx.resources.bnc = word_list("bnc", {"the", "cat", "saw"});
  ctx.resources.ngsl = word_list("ngsl", {"the"});
  ctx.resources.nawl = word_list("nawl", {"cat"});
  FeatureVector fv = lexical_features(tokenize("The cat saw the cat ."), ctx);
  CHECK(fv.get("NDW") == 3.0);
  CHECK(fv.get("TTR") == doctest::Approx(0.6));
  CHECK(fv.get("MLWc") == doctest::Approx(3.0));
  CHECK(fv.get("MLWs") == doctest::Approx(1.0));
  CHECK(fv.get("rTTR") == doctest::Approx(3.0 / std::sqrt(5.0)));
  CHECK(fv.get("cTTR") == doctest::Approx(3.0 / std::sqrt(10.0)));
  CHECK(fv.get("CNDW") == 3.0);  // short sentence: plain distinct count
  CHECK(fv.get("LD") == doctest::Approx(0.6));               // cat saw cat
  CHECK(fv.get("NonStopWordsRate") == doctest::Approx(0.4));  // cat cat
  CHECK(fv.get("AFL") == doctest::Approx(0.2));
  CHECK(fv.get("NAWL") == doctest::Approx(0.4));
  CHECK(fv.get("ANC") == doctest::Approx(0.2));   // saw is off the list
  CHECK(fv.get("BNC") == doctest::Approx(0.0));
  CHECK(fv.get("NGSL") == doctest::Approx(0.6));
}

TEST_CASE("type-token variants at ten distinct words") {
  FeatureContext ctx = bare_context();
  FeatureVector fv =
      lexical_features(tokenize("one two three four five six seven eight nine ten"),
                       ctx);
  CHECK(fv.get("cTTR") == doctest::Approx(2.23606797749979).epsilon(1e-12));
  CHECK(fv.get("rTTR") ==
        doctest::Approx(3.1622776601683795).epsilon(1e-12));
  CHECK(fv.get("TTR") == 1.0);
  // Word lists were not supplied, so list-based features stay missing.
  CHECK(fv.values.count("LD") == 1);
  CHECK_FALSE(fv.get("LD").has_value());
}

TEST_CASE("CNDW averages sliding ten-token windows") {
  FeatureContext ctx = bare_context();
  FeatureVector fv =
      lexical_features(tokenize("a a a a a a a a a a b b"), ctx);
  // Twelve words, three windows with 1, 2, and 2 distinct words.
  CHECK(fv.get("CNDW") == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("empty sentence leaves lexical features missing") {
  FeatureContext ctx = bare_context();
  FeatureVector fv = lexical_features(tokenize("..."), ctx);
  CHECK(fv.present_count() == 0);
  CHECK(fv.values.size() == 14);
}

TEST_CASE("ngram features sum or average corpus frequencies") {
  FeatureContext ctx = bare_context();
  NgramTable uni;
  uni.register_name = "news";
  uni.order = 1;
  uni.freq = {{"the", 100.0}, {"cat", 40.0}};
  NgramTable bi;
  bi.register_name = "news";
  bi.order = 2;
  bi.freq = {{"the cat", 15.0}};
  ctx.resources.ngrams = {uni, bi};

  FeatureVector fv = ngram_features(tokenize("The cat the ."), ctx);
  CHECK(fv.get("ngram1news") == doctest::Approx(240.0));
  CHECK(fv.get("ngram2news") == doctest::Approx(15.0));
  // Tables that were not supplied stay missing.
  CHECK_FALSE(fv.get("ngram3news").has_value());
  CHECK_FALSE(fv.get("ngram1acad").has_value());

  ctx.ngram_mean = true;
  fv = ngram_features(tokenize("The cat the ."), ctx);
  CHECK(fv.get("ngram1news") == doctest::Approx(80.0));
  CHECK(fv.get("ngram2news") == doctest::Approx(7.5));

  // A sentence shorter than the order has no grams: the value is zero.
  fv = ngram_features(tokenize("The"), ctx);
  CHECK(fv.get("ngram2news") == 0.0);
}

TEST_CASE("psycholinguistic features average lexicon lookups") {
  FeatureContext ctx = bare_context();
  auto aoa = std::make_shared<LexiconTable>(
      "aoa", std::vector<std::string>{"aoa"});
  aoa->add("cat", {3.0});
  aoa->add("dog", {12.0});
  ctx.resources.aoa = aoa;
  auto prev = std::make_shared<LexiconTable>(
      "prevalence", std::vector<std::string>{"prevalence"});
  prev->add("cat", {2.0});
  prev->add("dog", {1.0});
  ctx.resources.prevalence = prev;
  auto cats = std::make_shared<LexiconTable>(
      "prevalence_categories",
      std::vector<std::string>{"Prev.AllAP", "Prev.USAWF"});
  cats->add("cat", {1.8, 0.9});
  cats->add("dog", {1.6, 0.7});
  ctx.resources.prevalence_categories = cats;

  FeatureVector fv =
      psycholinguistic_features(tokenize("Cat dog zyxwv ."), ctx);
  CHECK(fv.get("AoA-mean") == doctest::Approx(7.5));
  CHECK(fv.get("AoA-max") == doctest::Approx(12.0));
  CHECK(fv.get("WordPrevalence") == doctest::Approx(1.5));
  CHECK(fv.get("Prev.AllAP") == doctest::Approx(1.7));
  CHECK(fv.get("Prev.USAWF") == doctest::Approx(0.8));
  // Columns the table lacks stay missing.
  CHECK_FALSE(fv.get("Prev.FemSD").has_value());
  // No word found in a lexicon: the aggregate is missing, not zero.
  FeatureVector oov = psycholinguistic_features(tokenize("zyxwv"), ctx);
  CHECK_FALSE(oov.get("AoA-mean").has_value());
  CHECK(oov.values.size() == 38);
}

TEST_CASE("syntactic features need a tree and patterns") {
  FeatureContext ctx = make_context(kDataDir);
  FeatureVector none = syntactic_features(nullptr, ctx);
  CHECK(none.present_count() == 0);
  CHECK(none.values.size() == 16);
  ParseTree t = parse_bracketed(
      "(S (NP (DT The) (NN dog)) (VP (VBD barked)) (. .))");
  FeatureVector fv = syntactic_features(&t, ctx);
  CHECK(fv.present_count() == 16);
  CHECK(fv.get("MLS") == doctest::Approx(3.0));
  CHECK(fv.get("T/S") == doctest::Approx(1.0));
  FeatureContext no_patterns = bare_context();
  CHECK_THROWS_AS(syntactic_features(&t, no_patterns), ConfigError);
}

TEST_CASE("full_vector covers the whole catalog with bundled data") {
  FeatureContext ctx = make_context(kDataDir);
  std::vector<SentencePair> pairs = load_pairs(kDataDir + "/mini_corpus.tsv");
  REQUIRE(pairs.size() == 20);
  auto trees = load_trees(kDataDir + "/mini_corpus.complex.ptb", 20);
  REQUIRE(trees[0].has_value());
  FeatureVector with_tree =
      full_vector(pairs[0].complex_text, &*trees[0], ctx);
  CHECK(with_tree.values.size() == 107);
  CHECK(with_tree.present_count() == 107);
  FeatureVector without_tree = full_vector(pairs[0].complex_text, nullptr, ctx);
  CHECK(without_tree.values.size() == 107);
  CHECK(without_tree.present_count() == 91);
  CHECK(with_tree.get("MLS") == doctest::Approx(10.0));
}

TEST_CASE("contour slides a window over sentence features") {
  auto mk = [](std::optional<double> v) {
    FeatureVector fv;
    fv.catalog_version = "107.1";
    if (v.has_value())
      fv.set("MLS", *v);
    else
      fv.set_missing("MLS");
    return fv;
  };
  std::vector<FeatureVector> rows = {mk(2.0), mk(4.0), mk(6.0)};
  ContourSeries cs = contour(rows, "MLS", 2);
  REQUIRE(cs.values.size() == 2);
  CHECK(*cs.values[0] == doctest::Approx(3.0));
  CHECK(*cs.values[1] == doctest::Approx(5.0));

  ContourSeries wide = contour(rows, "MLS", 5);
  REQUIRE(wide.values.size() == 1);
  CHECK(*wide.values[0] == doctest::Approx(4.0));

  std::vector<FeatureVector> gappy = {mk(2.0), mk(std::nullopt), mk(6.0)};
  ContourSeries skip = contour(gappy, "MLS", 3);
  REQUIRE(skip.values.size() == 1);
  CHECK(*skip.values[0] == doctest::Approx(4.0));

  std::vector<FeatureVector> all_missing = {mk(std::nullopt), mk(std::nullopt)};
  ContourSeries none = contour(all_missing, "MLS", 2);
  REQUIRE(none.values.size() == 1);
  CHECK_FALSE(none.values[0].has_value());

  CHECK_THROWS_AS(contour(rows, "NotAFeature", 2), ConfigError);
  CHECK_THROWS_AS(contour(rows, "MLS", 0), ConfigError);
  CHECK(contour({}, "MLS", 2).values.empty());
}

TEST_CASE("make_context falls back to the data directory for resources") {
  FeatureContext ctx = make_context(kDataDir);
  CHECK(ctx.resources.aoa != nullptr);
  CHECK(ctx.resources.word_frequencies != nullptr);
  CHECK_FALSE(ctx.resources.ngrams.empty());
  CHECK(ctx.patterns != nullptr);
  CHECK(ctx.wpcorp_column == "Prev.AllAP");
}
