#!/usr/bin/env python3
# Copyright 2026 The simpkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled demo lexicons under data/.

The shipped lexicons are small, synthetic stand-ins for the licensed
resources (AoA norms, prevalence norms, register n-gram counts, graded
word lists).  They cover the vocabulary of the bundled demo corpus and
treebank so that every feature extractor has something to chew on.  The
value formulas below are arbitrary but deterministic; tests freeze the
emitted numbers, so rerun this script only when the demo corpus changes,
and re-pin any test expectations that move.

Usage: python3 tools/make_lexicons.py [data_dir]
"""

import os
import re
import sys

REGISTERS = {"spoken": 80, "fiction": 90, "magazine": 100, "news": 110,
             "academic": 120}

FUNCTION_WORDS = """
a an and are at be because but by did do for from had has have he her his
i in is it its not of on or she that the they this to was were who will
with would you
""".split()

STOPWORDS = """
a about an and are as at be because but by did do for from had has have he
her his i if in is it its no not of on or she so that the their them they
this to up was we were what who will with would you
""".split()


def corpus_words(path):
    words = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            for side in line.rstrip("\n").split("\t"):
                for tok in side.split():
                    w = tok.lower()
                    if any(c.isalnum() for c in w):
                        words.append(w)
    return words


def treebank_words(path):
    words = []
    with open(path, encoding="utf-8") as fh:
        for m in re.finditer(r"\(([^()\s]+) ([^()\s]+)\)", fh.read()):
            w = m.group(2).lower()
            if any(c.isalnum() for c in w):
                words.append(w)
    return words


def corpus_ngrams(paths, order):
    counts = {}
    with open(paths[0], encoding="utf-8") as fh:
        for line in fh:
            for side in line.rstrip("\n").split("\t"):
                toks = [t.lower() for t in side.split()
                        if any(c.isalnum() for c in t)]
                for i in range(len(toks) - order + 1):
                    g = " ".join(toks[i:i + order])
                    counts[g] = counts.get(g, 0) + 1
    return counts


def write_list(path, words):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("word\n")
        for w in sorted(set(words)):
            fh.write(w + "\n")


def write_table(path, header, rows):
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write("\t".join(header) + "\n")
        for row in rows:
            fh.write("\t".join(str(c) for c in row) + "\n")


def main():
    data = sys.argv[1] if len(sys.argv) > 1 else "data"
    corpus = os.path.join(data, "mini_corpus.tsv")
    treebank = os.path.join(data, "mini_treebank.ptb")

    extras = ["simplification", "rhythm", "kitten", "sitting", "reads",
              "book", "dog", "barked", "cat", "sat", "mat", "run", "ran",
              "big", "small", "hello", "world"]
    vocab = sorted(set(corpus_words(corpus) + treebank_words(treebank) +
                       extras + FUNCTION_WORDS + STOPWORDS))

    write_list(os.path.join(data, "function_words.tsv"), FUNCTION_WORDS)
    write_list(os.path.join(data, "stopwords.tsv"), STOPWORDS)
    # Graded "easy"/"frequent" lists keyed to word length so the demo
    # corpus shows a sophistication gradient.
    write_list(os.path.join(data, "dale_chall.tsv"),
               [w for w in vocab if len(w) <= 5] + FUNCTION_WORDS)
    write_list(os.path.join(data, "spache.tsv"),
               [w for w in vocab if len(w) <= 4] + FUNCTION_WORDS)
    write_list(os.path.join(data, "ngsl.tsv"),
               [w for w in vocab if len(w) <= 5] + FUNCTION_WORDS)
    write_list(os.path.join(data, "anc.tsv"),
               [w for w in vocab if len(w) <= 6] + FUNCTION_WORDS)
    write_list(os.path.join(data, "bnc.tsv"),
               [w for w in vocab if len(w) <= 7] + FUNCTION_WORDS)
    write_list(os.path.join(data, "afl.tsv"),
               [w for w in vocab if len(w) >= 9])
    write_list(os.path.join(data, "nawl.tsv"),
               [w for w in vocab if len(w) >= 8])

    aoa = [(w, round(min(12.0, 1.4 + 0.45 * len(w)), 2)) for w in vocab]
    write_table(os.path.join(data, "aoa.tsv"), ["word", "AoA"], aoa)

    prev = [(w, round(max(0.5, 2.6 - 0.08 * len(w)), 2)) for w in vocab]
    write_table(os.path.join(data, "prevalence.tsv"),
                ["word", "prevalence"], prev)

    cats = ["All", "Fem", "Male", "UK", "USA"]
    measures = ["AP", "BP", "CD", "SD", "SDAP", "SDBP", "WF"]
    cols = ["Prev.%s%s" % (c, m) for c in cats for m in measures]
    rows = []
    for w, p in prev:
        rows.append([w] + [round(p + 0.01 * j, 2) for j in range(len(cols))])
    write_table(os.path.join(data, "prevalence_categories.tsv"),
                ["word"] + cols, rows)

    by_len = sorted(vocab, key=lambda w: (len(w), w))
    freqs = [(w, 10 * (len(by_len) - i)) for i, w in enumerate(by_len)]
    write_table(os.path.join(data, "word_frequencies.tsv"),
                ["word", "frequency"], freqs)

    # Heuristic-beating syllable counts exercised by tests.
    write_table(os.path.join(data, "syllables.tsv"), ["word", "syllables"],
                [("area", 3), ("cafe", 2), ("people", 2)])

    ngdir = os.path.join(data, "ngrams")
    os.makedirs(ngdir, exist_ok=True)
    for reg, weight in sorted(REGISTERS.items()):
        for order in range(1, 6):
            counts = corpus_ngrams([corpus], order)
            rows = [(g, c * weight) for g, c in sorted(counts.items())]
            write_table(os.path.join(ngdir, "%s.%d.tsv" % (reg, order)),
                        None, rows)


if __name__ == "__main__":
    main()
