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

#include "simpkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "simpkit/common.hpp"

namespace simpkit {

namespace {

std::vector<std::string> folded_tokens(const std::string& text) {
  TokenizedSentence ts = tokenize(text);
  std::vector<std::string> out;
  out.reserve(ts.tokens.size());
  for (const auto& t : ts.tokens) out.push_back(fold(t));
  return out;
}

using GramCounts = std::map<std::string, double>;

GramCounts gram_counts(const std::vector<std::string>& tokens, std::size_t n) {
  GramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (std::size_t k = 0; k < n; ++k) {
      if (k) key += '\x1f';  // tokens never contain control bytes as separators
      key += tokens[i + k];
    }
    counts[key] += 1.0;
  }
  return counts;
}

struct OpScore {
  double p = 0, r = 0, f = 0;
};

// Precision/recall over one edit operation: "claimed" holds the n-grams the
// system produced for the operation, "desired" those the references support.
OpScore op_score(const GramCounts& claimed, const GramCounts& desired,
                 bool precision_only) {
  double claimed_total = 0, desired_total = 0, matched = 0;
  for (const auto& [g, c] : claimed) {
    claimed_total += c;
    auto it = desired.find(g);
    if (it != desired.end()) matched += std::min(c, it->second);
  }
  for (const auto& [g, c] : desired) desired_total += c;
  OpScore s;
  s.p = claimed_total > 0 ? matched / claimed_total
                          : (desired_total == 0 ? 1.0 : 0.0);
  s.r = desired_total > 0 ? matched / desired_total
                          : (claimed_total == 0 ? 1.0 : 0.0);
  if (precision_only)
    s.f = s.p;
  else
    s.f = (s.p + s.r) > 0 ? 2.0 * s.p * s.r / (s.p + s.r) : 0.0;
  return s;
}

GramCounts counts_max_diff(const GramCounts& a, const GramCounts& b) {
  GramCounts out;
  for (const auto& [g, c] : a) {
    auto it = b.find(g);
    double v = c - (it == b.end() ? 0.0 : it->second);
    if (v > 0) out[g] = v;
  }
  return out;
}

GramCounts counts_min(const GramCounts& a, const GramCounts& b) {
  GramCounts out;
  for (const auto& [g, c] : a) {
    auto it = b.find(g);
    if (it != b.end()) {
      double v = std::min(c, it->second);
      if (v > 0) out[g] = v;
    }
  }
  return out;
}

}  // namespace

SariBreakdown sari_tokens(
    const std::vector<std::string>& source,
    const std::vector<std::string>& prediction,
    const std::vector<std::vector<std::string>>& references,
    const SariOptions& opts) {
  if (references.empty())
    throw DomainError("sari needs at least one reference");
  SariBreakdown out;
  const double nref = static_cast<double>(references.size());
  for (std::size_t n = 1; n <= 4; ++n) {
    GramCounts in = gram_counts(source, n);
    GramCounts o = gram_counts(prediction, n);
    GramCounts rbar;
    for (const auto& ref : references)
      for (const auto& [g, c] : gram_counts(ref, n)) rbar[g] += c;
    for (auto& [g, c] : rbar) c /= nref;

    OpScore keep =
        op_score(counts_min(in, o), counts_min(in, rbar), false);
    OpScore del = op_score(counts_max_diff(in, o), counts_max_diff(in, rbar),
                           opts.del_precision_only);
    OpScore add = op_score(counts_max_diff(o, in), counts_max_diff(rbar, in),
                           false);
    out.f_keep[n - 1] = keep.f;
    out.f_del[n - 1] = del.f;
    out.f_add[n - 1] = add.f;
  }
  for (std::size_t i = 0; i < 4; ++i) {
    out.keep += out.f_keep[i] / 4.0;
    out.del += out.f_del[i] / 4.0;
    out.add += out.f_add[i] / 4.0;
  }
  out.sari = 100.0 * (out.add + out.keep + out.del) / 3.0;
  return out;
}

SariBreakdown sari(const std::string& source, const std::string& prediction,
                   const std::vector<std::string>& references,
                   const SariOptions& opts) {
  std::vector<std::vector<std::string>> refs;
  refs.reserve(references.size());
  for (const auto& r : references) refs.push_back(folded_tokens(r));
  return sari_tokens(folded_tokens(source), folded_tokens(prediction), refs,
                     opts);
}

// ---------------------------------------------------------------------------
// Edit distances
// ---------------------------------------------------------------------------

namespace {

// Levenshtein distance with unit costs over any comparable sequence.
template <typename T>
std::size_t levenshtein(const std::vector<T>& a, const std::vector<T>& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

// Distance plus an operation breakdown (deterministic backtrace preferring
// match/substitution, then deletion, then insertion).
EditCosts levenshtein_costs(const std::vector<std::string>& a,
                            const std::vector<std::string>& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<std::size_t>> d(n + 1,
                                          std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i][j] = std::min({sub, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }
  EditCosts costs;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        d[i][j] == d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)) {
      if (a[i - 1] != b[j - 1]) ++costs.substitutions;
      --i;
      --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      ++costs.deletions;
      --i;
    } else {
      ++costs.insertions;
      --j;
    }
  }
  return costs;
}

// Does hyp[i, i+len) occur anywhere in ref as a contiguous block?
bool span_in_reference(const std::vector<std::string>& hyp, std::size_t i,
                       std::size_t len, const std::vector<std::string>& ref) {
  if (ref.size() < len) return false;
  for (std::size_t r = 0; r + len <= ref.size(); ++r) {
    bool ok = true;
    for (std::size_t k = 0; k < len && ok; ++k)
      ok = hyp[i + k] == ref[r + k];
    if (ok) return true;
  }
  return false;
}

std::vector<std::string> apply_shift(const std::vector<std::string>& hyp,
                                     std::size_t i, std::size_t len,
                                     std::size_t dest) {
  std::vector<std::string> rest;
  rest.reserve(hyp.size());
  for (std::size_t k = 0; k < hyp.size(); ++k)
    if (k < i || k >= i + len) rest.push_back(hyp[k]);
  std::vector<std::string> out;
  out.reserve(hyp.size());
  out.insert(out.end(), rest.begin(), rest.begin() + dest);
  out.insert(out.end(), hyp.begin() + i, hyp.begin() + i + len);
  out.insert(out.end(), rest.begin() + dest, rest.end());
  return out;
}

constexpr std::size_t kMaxShiftSpan = 10;

}  // namespace

TerResult ter_detail(const std::string& hypothesis,
                     const std::string& reference, const TerOptions& opts) {
  std::vector<std::string> hyp = folded_tokens(hypothesis);
  std::vector<std::string> ref = folded_tokens(reference);
  if (ref.empty())
    throw DomainError("ter needs a non-empty reference");
  TerResult result;
  result.reference_length = ref.size();

  std::size_t shifts = 0;
  std::size_t current_d = levenshtein(hyp, ref);
  if (opts.with_shifts) {
    // Greedily take the block shift with the largest edit-distance drop;
    // every accepted shift costs one edit and strictly lowers the distance,
    // so the loop terminates.
    while (current_d > 0) {
      std::size_t best_d = current_d;
      std::vector<std::string> best_hyp;
      const std::size_t n = hyp.size();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t len = 1; len <= std::min(kMaxShiftSpan, n - i);
             ++len) {
          if (!span_in_reference(hyp, i, len, ref)) continue;
          for (std::size_t dest = 0; dest + len <= n; ++dest) {
            if (dest == i) continue;
            std::vector<std::string> moved = apply_shift(hyp, i, len, dest);
            std::size_t d = levenshtein(moved, ref);
            if (d < best_d) {
              best_d = d;
              best_hyp = std::move(moved);
            }
          }
        }
      }
      // Only pay a shift when it buys more than its own cost amortizes:
      // require a strict distance decrease.
      if (best_d >= current_d) break;
      hyp = std::move(best_hyp);
      current_d = best_d;
      ++shifts;
    }
  }
  result.costs = levenshtein_costs(hyp, ref);
  result.costs.shifts = shifts;
  result.rate = static_cast<double>(result.costs.total()) /
                static_cast<double>(ref.size());
  return result;
}

double ter(const std::string& hypothesis, const std::string& reference,
           const TerOptions& opts) {
  return ter_detail(hypothesis, reference, opts).rate;
}

double levenshtein_similarity(const std::string& a, const std::string& b) {
  std::vector<uint32_t> ca = utf8_decode(a);
  std::vector<uint32_t> cb = utf8_decode(b);
  std::size_t mx = std::max(ca.size(), cb.size());
  if (mx == 0) return 1.0;
  std::size_t d = levenshtein(ca, cb);
  return 1.0 - static_cast<double>(d) / static_cast<double>(mx);
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  return levenshtein(tokenize(a).tokens, tokenize(b).tokens);
}

// ---------------------------------------------------------------------------
// Word rank
// ---------------------------------------------------------------------------

WordRanking::WordRanking(const LexiconTable& frequencies) {
  // Stable sort on descending frequency keeps file order among ties.
  std::vector<std::size_t> order(frequencies.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     double fa = frequencies.rows()[a].values.empty()
                                     ? 0.0
                                     : frequencies.rows()[a].values[0];
                     double fb = frequencies.rows()[b].values.empty()
                                     ? 0.0
                                     : frequencies.rows()[b].values[0];
                     return fa > fb;
                   });
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    rank_[frequencies.rows()[order[pos]].word] = pos + 1;
  size_ = frequencies.size();
}

std::size_t WordRanking::rank(const std::string& folded_word) const {
  auto it = rank_.find(folded_word);
  return it == rank_.end() ? size_ + 1 : it->second;
}

double word_rank(const std::string& sentence, const WordRanking& ranking) {
  TokenizedSentence ts = tokenize(sentence);
  if (ts.n_words() == 0)
    throw DomainError("word_rank needs at least one word");
  std::vector<double> logs;
  logs.reserve(ts.n_words());
  for (std::size_t i = 0; i < ts.n_words(); ++i)
    logs.push_back(std::log(static_cast<double>(ranking.rank(fold(ts.word(i))))));
  std::sort(logs.begin(), logs.end());
  const double q = 0.75 * static_cast<double>(logs.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(q));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(q));
  if (lo == hi) return logs[lo];
  return logs[lo] + (q - static_cast<double>(lo)) * (logs[hi] - logs[lo]);
}

double fkgl(const SentenceStats& stats) {
  if (stats.n_words == 0) throw DomainError("fkgl needs at least one word");
  if (stats.n_sentences == 0)
    throw DomainError("fkgl needs at least one sentence");
  const double w = static_cast<double>(stats.n_words);
  const double s = static_cast<double>(stats.n_sentences);
  const double syll = static_cast<double>(stats.n_syllables);
  return 0.39 * (w / s) + 11.8 * (syll / w) - 15.59;
}

}  // namespace simpkit
