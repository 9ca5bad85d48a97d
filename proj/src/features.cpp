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

#include "simpkit/features.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "simpkit/common.hpp"

namespace simpkit {

namespace {

const char* kCatalogVersion = "107.1";

const char* kNgramOrders[] = {"1", "2", "3", "4", "5"};

struct NgramRegister {
  const char* short_id;
  const char* full;
};
const NgramRegister kNgramRegisters[] = {
    {"spok", "spoken"}, {"fic", "fiction"},   {"mag", "magazine"},
    {"news", "news"},   {"acad", "academic"},
};

const char* kPrevCategories[] = {"All", "Fem", "Male", "UK", "USA"};
const char* kPrevMeasures[] = {"AP", "BP", "CD", "SD", "SDAP", "SDBP", "WF"};

}  // namespace

void FeatureCatalog::add(Entry e) {
  index_[e.id] = entries_.size();
  entries_.push_back(std::move(e));
}

void FeatureCatalog::validate() const {
  std::map<std::string, std::size_t> family_counts;
  for (const auto& e : entries_) ++family_counts[e.family];
  auto want = [&](const char* fam, std::size_t n) {
    auto it = family_counts.find(fam);
    if (it == family_counts.end() || it->second != n) {
      std::ostringstream os;
      os << "feature catalog: family '" << fam << "' must have " << n
         << " entries";
      throw DataError(os.str());
    }
  };
  want("syntactic", 16);
  want("lexical", 14);
  want("ngram", 25);
  want("readability", 14);
  want("psycholinguistic", 38);
  if (entries_.size() != 107)
    throw DataError("feature catalog must have 107 entries");
  if (index_.size() != entries_.size())
    throw DataError("feature catalog has duplicate ids");
}

const FeatureCatalog& FeatureCatalog::builtin() {
  static const FeatureCatalog* kCatalog = [] {
    auto* c = new FeatureCatalog();
    c->version_ = kCatalogVersion;
    auto syn = [&](const char* id, const char* d) {
      c->add({id, "syntactic", d});
    };
    syn("MLC", "mean length of clause (words)");
    syn("MLS", "mean length of sentence (words)");
    syn("MLT", "mean length of T-unit (words)");
    syn("C/S", "clauses per sentence");
    syn("C/T", "clauses per T-unit");
    syn("DepC/C", "dependent clauses per clause");
    syn("T/S", "T-units per sentence");
    syn("CompT/T", "complex T-units per T-unit");
    syn("DepC/T", "dependent clauses per T-unit");
    syn("CoordP/C", "coordinate phrases per clause");
    syn("CoordP/T", "coordinate phrases per T-unit");
    syn("NP.PostMod", "mean NP postmodifier length (words)");
    syn("NP.PreMod", "mean NP premodifier length (words)");
    syn("CompN/C", "complex nominals per clause");
    syn("CompN/T", "complex nominals per T-unit");
    syn("VP/T", "verb phrases per T-unit");
    auto lex = [&](const char* id, const char* d) {
      c->add({id, "lexical", d});
    };
    lex("MLWc", "mean word length in characters");
    lex("MLWs", "mean word length in syllables");
    lex("LD", "lexical density: share of non-function words");
    lex("NDW", "number of distinct words");
    lex("CNDW", "distinct words per 10-token window");
    lex("TTR", "type-token ratio");
    lex("cTTR", "corrected type-token ratio");
    lex("rTTR", "root type-token ratio");
    lex("AFL", "share of words on the academic formulas list");
    lex("ANC", "share of words beyond the ANC top list");
    lex("BNC", "share of words beyond the BNC top list");
    lex("NAWL", "share of words on the new academic word list");
    lex("NGSL", "share of words beyond the new general service list");
    lex("NonStopWordsRate", "share of words outside the stopword list");
    for (const char* order : kNgramOrders) {
      for (const auto& reg : kNgramRegisters) {
        std::string id = std::string("ngram") + order + reg.short_id;
        std::string desc = std::string(reg.full) + " " + order +
                           "-gram corpus frequency";
        c->add({id, "ngram", desc});
      }
    }
    auto rd = [&](const char* id, const char* d) {
      c->add({id, "readability", d});
    };
    rd("ARI", "automated readability index");
    rd("ColemanLiau", "Coleman-Liau index");
    rd("DaleChall", "Dale-Chall grade");
    rd("DaleChallPSK", "Powers-Sumner-Kearl Dale-Chall grade");
    rd("FKGL", "Flesch-Kincaid grade level");
    rd("FleschReadingEase", "Flesch reading ease");
    rd("Fry-x", "Fry graph x: syllables per 100 words");
    rd("Fry-y", "Fry graph y: sentences per 100 words");
    rd("Lix", "Lix index");
    rd("Rix", "Rix index");
    rd("SMOG", "SMOG grade");
    rd("GunningFog", "Gunning fog index");
    rd("FORCAST", "FORCAST grade");
    rd("Spache", "Spache grade");
    auto psy = [&](const std::string& id, const std::string& d) {
      c->add({id, "psycholinguistic", d});
    };
    psy("AoA-mean", "mean age of acquisition");
    psy("AoA-max", "maximum age of acquisition");
    psy("WordPrevalence", "mean crowdsourced word prevalence");
    for (const char* cat : kPrevCategories) {
      for (const char* m : kPrevMeasures) {
        psy(std::string("Prev.") + cat + m,
            std::string("word prevalence, ") + cat + " " + m);
      }
    }
    c->validate();
    return c;
  }();
  return *kCatalog;
}

FeatureCatalog FeatureCatalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  FeatureCatalog c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      auto eq = t.find("version=");
      if (eq != std::string::npos) c.version_ = trim(t.substr(eq + 8));
      continue;
    }
    std::vector<std::string> cells = split(line, '\t');
    if (cells.size() != 3)
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": expected id<TAB>family<TAB>description");
    if (c.index_.count(cells[0]))
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": duplicate feature id " + cells[0]);
    c.add({cells[0], cells[1], cells[2]});
  }
  c.validate();
  return c;
}

bool FeatureCatalog::has(const std::string& id) const {
  return index_.count(id) > 0;
}

const FeatureCatalog::Entry& FeatureCatalog::entry(
    const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ConfigError("unknown feature id: " + id);
  return entries_[it->second];
}

std::vector<std::string> FeatureCatalog::family_ids(
    const std::string& family) const {
  std::vector<std::string> ids;
  for (const auto& e : entries_)
    if (e.family == family) ids.push_back(e.id);
  if (ids.empty()) throw ConfigError("unknown feature family: " + family);
  return ids;
}

// ---------------------------------------------------------------------------
// Readability
// ---------------------------------------------------------------------------

const char* readability_id(ReadabilityFormula f) {
  switch (f) {
    case ReadabilityFormula::kARI: return "ARI";
    case ReadabilityFormula::kColemanLiau: return "ColemanLiau";
    case ReadabilityFormula::kDaleChall: return "DaleChall";
    case ReadabilityFormula::kDaleChallPSK: return "DaleChallPSK";
    case ReadabilityFormula::kFKGL: return "FKGL";
    case ReadabilityFormula::kFleschReadingEase: return "FleschReadingEase";
    case ReadabilityFormula::kFryX: return "Fry-x";
    case ReadabilityFormula::kFryY: return "Fry-y";
    case ReadabilityFormula::kLix: return "Lix";
    case ReadabilityFormula::kRix: return "Rix";
    case ReadabilityFormula::kSMOG: return "SMOG";
    case ReadabilityFormula::kGunningFog: return "GunningFog";
    case ReadabilityFormula::kFORCAST: return "FORCAST";
    case ReadabilityFormula::kSpache: return "Spache";
  }
  return "";
}

std::optional<ReadabilityFormula> readability_from_id(const std::string& id) {
  static const std::map<std::string, ReadabilityFormula> kMap = {
      {"ARI", ReadabilityFormula::kARI},
      {"ColemanLiau", ReadabilityFormula::kColemanLiau},
      {"DaleChall", ReadabilityFormula::kDaleChall},
      {"DaleChallPSK", ReadabilityFormula::kDaleChallPSK},
      {"FKGL", ReadabilityFormula::kFKGL},
      {"FleschReadingEase", ReadabilityFormula::kFleschReadingEase},
      {"Fry-x", ReadabilityFormula::kFryX},
      {"Fry-y", ReadabilityFormula::kFryY},
      {"Lix", ReadabilityFormula::kLix},
      {"Rix", ReadabilityFormula::kRix},
      {"SMOG", ReadabilityFormula::kSMOG},
      {"GunningFog", ReadabilityFormula::kGunningFog},
      {"FORCAST", ReadabilityFormula::kFORCAST},
      {"Spache", ReadabilityFormula::kSpache},
  };
  auto it = kMap.find(id);
  if (it == kMap.end()) return std::nullopt;
  return it->second;
}

ReadabilityConstants ReadabilityConstants::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  ReadabilityConstants rc;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> cells = split(line, '\t');
    if (cells.size() != 3)
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": expected formula<TAB>name<TAB>value");
    try {
      std::size_t used = 0;
      double v = std::stod(cells[2], &used);
      if (used != cells[2].size() || !std::isfinite(v))
        throw std::invalid_argument(cells[2]);
      rc.values_[cells[0] + "/" + cells[1]] = v;
    } catch (const std::exception&) {
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": bad value '" + cells[2] + "'");
    }
  }
  if (rc.values_.empty()) throw DataError(path + ": no constants");
  return rc;
}

double ReadabilityConstants::get(const std::string& formula,
                                 const std::string& name) const {
  auto it = values_.find(formula + "/" + name);
  if (it == values_.end())
    throw DataError("readability constant missing: " + formula + "/" + name);
  return it->second;
}

std::optional<double> readability(const SentenceStats& stats,
                                  ReadabilityFormula formula,
                                  const ReadabilityConstants& k,
                                  std::optional<double> pct_difficult) {
  if (stats.n_words == 0)
    throw DomainError("readability formulas need at least one word");
  if (stats.n_sentences == 0)
    throw DomainError("readability formulas need at least one sentence");
  const double w = static_cast<double>(stats.n_words);
  const double s = static_cast<double>(stats.n_sentences);
  const double chars = static_cast<double>(stats.n_chars);
  const double syll = static_cast<double>(stats.n_syllables);
  const double cplx = static_cast<double>(stats.n_complex_words);
  const double lng = static_cast<double>(stats.n_long_words);
  const double mono = static_cast<double>(stats.n_monosyllables);
  switch (formula) {
    case ReadabilityFormula::kARI:
      return k.get("ARI", "chars_per_word") * (chars / w) +
             k.get("ARI", "words_per_sentence") * (w / s) +
             k.get("ARI", "intercept");
    case ReadabilityFormula::kColemanLiau:
      return k.get("ColemanLiau", "letters_per_100") * (100.0 * chars / w) +
             k.get("ColemanLiau", "sentences_per_100") * (100.0 * s / w) +
             k.get("ColemanLiau", "intercept");
    case ReadabilityFormula::kDaleChall: {
      if (!pct_difficult.has_value()) return std::nullopt;
      double grade = k.get("DaleChall", "pct_difficult") * *pct_difficult +
                     k.get("DaleChall", "words_per_sentence") * (w / s);
      if (*pct_difficult > k.get("DaleChall", "adjustment_threshold"))
        grade += k.get("DaleChall", "adjustment");
      return grade;
    }
    case ReadabilityFormula::kDaleChallPSK:
      if (!pct_difficult.has_value()) return std::nullopt;
      return k.get("DaleChallPSK", "intercept") +
             k.get("DaleChallPSK", "words_per_sentence") * (w / s) +
             k.get("DaleChallPSK", "pct_difficult") * *pct_difficult;
    case ReadabilityFormula::kFKGL:
      return k.get("FKGL", "words_per_sentence") * (w / s) +
             k.get("FKGL", "syllables_per_word") * (syll / w) +
             k.get("FKGL", "intercept");
    case ReadabilityFormula::kFleschReadingEase:
      return k.get("FleschReadingEase", "intercept") -
             k.get("FleschReadingEase", "words_per_sentence") * (w / s) -
             k.get("FleschReadingEase", "syllables_per_word") * (syll / w);
    case ReadabilityFormula::kFryX:
      return k.get("Fry", "scale") * (syll / w);
    case ReadabilityFormula::kFryY:
      return k.get("Fry", "scale") * (s / w);
    case ReadabilityFormula::kLix:
      return w / s + k.get("Lix", "long_word_scale") * (lng / w);
    case ReadabilityFormula::kRix:
      return lng / s;
    case ReadabilityFormula::kSMOG:
      return k.get("SMOG", "scale") *
                 std::sqrt(cplx * k.get("SMOG", "sentences_norm") / s) +
             k.get("SMOG", "intercept");
    case ReadabilityFormula::kGunningFog:
      return k.get("GunningFog", "scale") *
             (w / s + k.get("GunningFog", "complex_scale") * (cplx / w));
    case ReadabilityFormula::kFORCAST:
      return k.get("FORCAST", "intercept") -
             k.get("FORCAST", "mono_scale") * (mono / w);
    case ReadabilityFormula::kSpache:
      if (!pct_difficult.has_value()) return std::nullopt;
      return k.get("Spache", "words_per_sentence") * (w / s) +
             k.get("Spache", "pct_difficult") * *pct_difficult +
             k.get("Spache", "intercept");
  }
  throw ConfigError("unknown readability formula");
}

// ---------------------------------------------------------------------------
// Resources
// ---------------------------------------------------------------------------

FeatureResources FeatureResources::load(const std::string& dir) {
  namespace fs = std::filesystem;
  FeatureResources r;
  if (dir.empty()) return r;
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
  auto maybe = [&](const char* file) -> std::shared_ptr<LexiconTable> {
    fs::path p = fs::path(dir) / file;
    if (!fs::is_regular_file(p)) return nullptr;
    return std::make_shared<LexiconTable>(load_lexicon(p.string()));
  };
  r.function_words = maybe("function_words.tsv");
  r.stopwords = maybe("stopwords.tsv");
  r.afl = maybe("afl.tsv");
  r.anc = maybe("anc.tsv");
  r.bnc = maybe("bnc.tsv");
  r.nawl = maybe("nawl.tsv");
  r.ngsl = maybe("ngsl.tsv");
  r.dale_chall = maybe("dale_chall.tsv");
  r.spache = maybe("spache.tsv");
  r.aoa = maybe("aoa.tsv");
  r.prevalence = maybe("prevalence.tsv");
  r.prevalence_categories = maybe("prevalence_categories.tsv");
  r.word_frequencies = maybe("word_frequencies.tsv");
  if (auto syl = maybe("syllables.tsv")) {
    for (const auto& row : syl->rows()) {
      if (row.values.empty() || row.values[0] < 1)
        throw DataError("syllables.tsv: counts must be >= 1");
      r.syllable_overrides[row.word] =
          static_cast<std::size_t>(row.values[0]);
    }
  }
  fs::path ng = fs::path(dir) / "ngrams";
  if (fs::is_directory(ng)) r.ngrams = load_ngrams(ng.string());
  return r;
}

// ---------------------------------------------------------------------------
// Family extractors
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> folded_words(const TokenizedSentence& ts) {
  std::vector<std::string> out;
  out.reserve(ts.n_words());
  for (std::size_t i = 0; i < ts.n_words(); ++i) out.push_back(fold(ts.word(i)));
  return out;
}

void mark_all_missing(FeatureVector* fv, const FeatureCatalog& cat,
                      const std::string& family) {
  for (const auto& id : cat.family_ids(family)) fv->set_missing(id);
}

// Share of words for which pred holds.
template <typename Pred>
double share(const std::vector<std::string>& words, Pred pred) {
  std::size_t hits = 0;
  for (const auto& w : words)
    if (pred(w)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(words.size());
}

}  // namespace

FeatureVector lexical_features(const TokenizedSentence& ts,
                               const FeatureContext& ctx) {
  FeatureVector fv;
  fv.catalog_version = ctx.catalog().version();
  mark_all_missing(&fv, ctx.catalog(), "lexical");
  const std::size_t n = ts.n_words();
  if (n == 0) return fv;
  std::vector<std::string> words = folded_words(ts);
  const double dn = static_cast<double>(n);

  double total_chars = 0, total_syll = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total_chars += static_cast<double>(letter_digit_count(ts.word(i)));
    total_syll += static_cast<double>(
        count_syllables(ts.word(i), ctx.resources.syllable_overrides));
  }
  fv.set("MLWc", total_chars / dn);
  fv.set("MLWs", total_syll / dn);

  std::unordered_set<std::string> types(words.begin(), words.end());
  const double t = static_cast<double>(types.size());
  fv.set("NDW", t);
  fv.set("TTR", t / dn);
  fv.set("rTTR", t / std::sqrt(dn));
  fv.set("cTTR", t / std::sqrt(2.0 * dn));

  // Distinct words per 10-token sliding window; short sentences fall back
  // to the plain distinct count.
  const std::size_t kWindow = 10;
  if (n <= kWindow) {
    fv.set("CNDW", t);
  } else {
    double sum = 0;
    std::size_t windows = n - kWindow + 1;
    for (std::size_t i = 0; i < windows; ++i) {
      std::unordered_set<std::string> seen(words.begin() + i,
                                           words.begin() + i + kWindow);
      sum += static_cast<double>(seen.size());
    }
    fv.set("CNDW", sum / static_cast<double>(windows));
  }

  const auto& res = ctx.resources;
  if (res.function_words)
    fv.set("LD", share(words, [&](const std::string& w) {
             return !res.function_words->contains(w);
           }));
  if (res.stopwords)
    fv.set("NonStopWordsRate", share(words, [&](const std::string& w) {
             return !res.stopwords->contains(w);
           }));
  if (res.afl)
    fv.set("AFL", share(words, [&](const std::string& w) {
             return res.afl->contains(w);
           }));
  if (res.nawl)
    fv.set("NAWL", share(words, [&](const std::string& w) {
             return res.nawl->contains(w);
           }));
  if (res.anc)
    fv.set("ANC", share(words, [&](const std::string& w) {
             return !res.anc->contains(w);
           }));
  if (res.bnc)
    fv.set("BNC", share(words, [&](const std::string& w) {
             return !res.bnc->contains(w);
           }));
  if (res.ngsl)
    fv.set("NGSL", share(words, [&](const std::string& w) {
             return !res.ngsl->contains(w);
           }));
  return fv;
}

FeatureVector readability_features(const TokenizedSentence& ts,
                                   const FeatureContext& ctx) {
  FeatureVector fv;
  fv.catalog_version = ctx.catalog().version();
  mark_all_missing(&fv, ctx.catalog(), "readability");
  if (ts.n_words() == 0) return fv;
  SentenceStats st = sentence_stats(ts, ctx.resources.syllable_overrides);
  std::vector<std::string> words = folded_words(ts);

  auto pct_outside =
      [&](const std::shared_ptr<LexiconTable>& lex) -> std::optional<double> {
    if (!lex) return std::nullopt;
    return 100.0 * share(words, [&](const std::string& w) {
             return !lex->contains(w);
           });
  };
  std::optional<double> pct_dale = pct_outside(ctx.resources.dale_chall);
  std::optional<double> pct_spache = pct_outside(ctx.resources.spache);

  for (const auto& id : ctx.catalog().family_ids("readability")) {
    ReadabilityFormula f = *readability_from_id(id);
    std::optional<double> pct;
    if (f == ReadabilityFormula::kDaleChall ||
        f == ReadabilityFormula::kDaleChallPSK)
      pct = pct_dale;
    else if (f == ReadabilityFormula::kSpache)
      pct = pct_spache;
    std::optional<double> v =
        readability(st, f, ctx.readability_constants, pct);
    if (v.has_value()) fv.set(id, *v);
  }
  return fv;
}

FeatureVector ngram_features(const TokenizedSentence& ts,
                             const FeatureContext& ctx) {
  FeatureVector fv;
  fv.catalog_version = ctx.catalog().version();
  mark_all_missing(&fv, ctx.catalog(), "ngram");
  std::vector<std::string> words = folded_words(ts);
  for (const auto& table : ctx.resources.ngrams) {
    const char* short_id = nullptr;
    for (const auto& reg : kNgramRegisters)
      if (table.register_name == reg.full) short_id = reg.short_id;
    if (short_id == nullptr) continue;
    std::string id =
        "ngram" + std::to_string(table.order) + short_id;
    if (!ctx.catalog().has(id)) continue;
    const std::size_t order = static_cast<std::size_t>(table.order);
    double sum = 0;
    std::size_t grams = 0;
    if (words.size() >= order) {
      for (std::size_t i = 0; i + order <= words.size(); ++i) {
        std::string key;
        for (std::size_t k = 0; k < order; ++k) {
          if (k) key += ' ';
          key += words[i + k];
        }
        auto it = table.freq.find(key);
        if (it != table.freq.end()) sum += it->second;
        ++grams;
      }
    }
    if (ctx.ngram_mean)
      fv.set(id, grams == 0 ? 0.0 : sum / static_cast<double>(grams));
    else
      fv.set(id, sum);
  }
  return fv;
}

FeatureVector psycholinguistic_features(const TokenizedSentence& ts,
                                        const FeatureContext& ctx) {
  FeatureVector fv;
  fv.catalog_version = ctx.catalog().version();
  mark_all_missing(&fv, ctx.catalog(), "psycholinguistic");
  std::vector<std::string> words = folded_words(ts);
  const auto& res = ctx.resources;

  if (res.aoa) {
    double sum = 0, mx = 0;
    std::size_t hits = 0;
    for (const auto& w : words) {
      if (auto v = res.aoa->lookup(w, 0)) {
        sum += *v;
        mx = hits == 0 ? *v : std::max(mx, *v);
        ++hits;
      }
    }
    if (hits > 0) {
      fv.set("AoA-mean", sum / static_cast<double>(hits));
      fv.set("AoA-max", mx);
    }
  }
  if (res.prevalence) {
    double sum = 0;
    std::size_t hits = 0;
    for (const auto& w : words) {
      if (auto v = res.prevalence->lookup(w, 0)) {
        sum += *v;
        ++hits;
      }
    }
    if (hits > 0) fv.set("WordPrevalence", sum / static_cast<double>(hits));
  }
  if (res.prevalence_categories) {
    const auto& lex = *res.prevalence_categories;
    for (const char* cat : kPrevCategories) {
      for (const char* m : kPrevMeasures) {
        std::string id = std::string("Prev.") + cat + m;
        auto col = lex.column_index(id);
        if (!col.has_value()) continue;
        double sum = 0;
        std::size_t hits = 0;
        for (const auto& w : words) {
          if (auto v = lex.lookup(w, *col)) {
            sum += *v;
            ++hits;
          }
        }
        if (hits > 0) fv.set(id, sum / static_cast<double>(hits));
      }
    }
  }
  return fv;
}

FeatureVector syntactic_features(const ParseTree* tree,
                                 const FeatureContext& ctx) {
  FeatureVector fv;
  fv.catalog_version = ctx.catalog().version();
  mark_all_missing(&fv, ctx.catalog(), "syntactic");
  if (tree == nullptr) return fv;
  if (!ctx.patterns) throw ConfigError("syntactic features need a pattern library");
  SyntacticMeasures m = syntactic_measures(*tree, *ctx.patterns);
  for (const auto& [id, v] : m.to_map()) fv.set(id, v);
  return fv;
}

FeatureVector full_vector(const std::string& text, const ParseTree* tree,
                          const FeatureContext& ctx) {
  TokenizedSentence ts = tokenize(text);
  FeatureVector fv = syntactic_features(tree, ctx);
  for (FeatureVector part :
       {lexical_features(ts, ctx), ngram_features(ts, ctx),
        readability_features(ts, ctx), psycholinguistic_features(ts, ctx)}) {
    for (auto& [id, v] : part.values) fv.values[id] = v;
  }
  return fv;
}

ContourSeries contour(const std::vector<FeatureVector>& sentences,
                      const std::string& feature_id, std::size_t w) {
  if (w < 1) throw ConfigError("contour window must be >= 1");
  if (!FeatureCatalog::builtin().has(feature_id))
    throw ConfigError("unknown feature id: " + feature_id);
  ContourSeries cs;
  cs.feature_id = feature_id;
  cs.window = w;
  const std::size_t n = sentences.size();
  if (n == 0) return cs;
  const std::size_t count = w >= n ? 1 : n - w + 1;
  const std::size_t span = std::min(w, n);
  for (std::size_t i = 0; i < count; ++i) {
    double sum = 0;
    std::size_t hits = 0;
    for (std::size_t k = i; k < i + span; ++k) {
      if (auto v = sentences[k].get(feature_id)) {
        sum += *v;
        ++hits;
      }
    }
    if (hits > 0)
      cs.values.push_back(sum / static_cast<double>(hits));
    else
      cs.values.push_back(std::nullopt);
  }
  return cs;
}

FeatureContext make_context(const std::string& data_dir,
                            const std::string& resources_dir) {
  namespace fs = std::filesystem;
  FeatureContext ctx;
  ctx.readability_constants = ReadabilityConstants::load(
      (fs::path(data_dir) / "readability_constants.tsv").string());
  ctx.patterns = std::make_shared<SyntaxPatterns>(
      SyntaxPatterns::load((fs::path(data_dir) / "syntax_patterns.txt").string()));
  ctx.resources = FeatureResources::load(
      resources_dir.empty() ? data_dir : resources_dir);
  return ctx;
}

}  // namespace simpkit
