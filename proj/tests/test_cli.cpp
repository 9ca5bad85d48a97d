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
//
// End-to-end checks that run the real command line binary against temporary
// directories: exit codes, sidecar files, output shapes and determinism.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "simpkit/common.hpp"
#include "simpkit/corpus.hpp"
#include "simpkit/features.hpp"
#include "simpkit/textproc.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace simpkit;

namespace {

std::string bin() { return SIMPKIT_BIN_PATH; }
std::string data_dir() { return SIMPKIT_DATA_DIR; }
std::string corpus() { return data_dir() + "/mini_corpus.tsv"; }
std::string complex_trees() { return data_dir() + "/mini_corpus.complex.ptb"; }
std::string simple_trees() { return data_dir() + "/mini_corpus.simple.ptb"; }

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() /
           ("simpkit_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

// Runs the binary with the given argument string; stdout/stderr land in the
// per-directory log so failures can be inspected.
int run(const TempDir& dir, const std::string& args) {
  std::string cmd = "\"" + bin() + "\" " + args + " >>\"" +
                    dir.file("cli.log") + "\" 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing file: " << path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& path) {
  std::vector<std::string> out;
  std::string text = slurp(path);
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << content;
}

// Splits the bundled pair corpus into one-sentence-per-line side files.
void write_sides(const TempDir& dir, const std::string& complex_path,
                 const std::string& simple_path) {
  std::string complex_text, simple_text;
  for (const std::string& line : lines_of(corpus())) {
    std::size_t tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    complex_text += line.substr(0, tab) + "\n";
    simple_text += line.substr(tab + 1) + "\n";
  }
  write_file(dir.file(complex_path), complex_text);
  write_file(dir.file(simple_path), simple_text);
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

bool contains(const std::string& s, const std::string& needle) {
  return s.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("analyze writes two feature records per pair plus a config sidecar") {
  TempDir dir("analyze");
  std::string out = dir.file("feat.jsonl");
  int rc = run(dir, "analyze --pairs \"" + corpus() + "\" --trees \"" +
                        complex_trees() + "\" --trees-simple \"" +
                        simple_trees() + "\" --out \"" + out + "\"");
  CHECK(rc == 0);

  std::vector<FeatureRow> rows = import_features(out);
  REQUIRE(rows.size() == 40);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].id == i);
    CHECK(rows[i].features.values.size() == 107);
  }

  json cfg = json::parse(slurp(out + ".config.json"));
  CHECK(cfg.at("command") == "analyze");
  CHECK(cfg.at("seed") == 42);
  CHECK(cfg.at("out") == out);
  CHECK(cfg.at("pairs") == corpus());
}

TEST_CASE("analyze family filter restricts records to that family") {
  TempDir dir("family");
  std::string out = dir.file("readability.jsonl");
  int rc = run(dir, "analyze --pairs \"" + corpus() +
                        "\" --features readability --out \"" + out + "\"");
  CHECK(rc == 0);

  std::vector<FeatureRow> rows = import_features(out);
  REQUIRE(rows.size() == 40);
  std::set<std::string> want;
  for (const std::string& id :
       FeatureCatalog::builtin().family_ids("readability"))
    want.insert(id);
  CHECK(want.size() == 14);
  std::set<std::string> got;
  for (const auto& [id, v] : rows[0].features.values) got.insert(id);
  CHECK(got == want);
}

TEST_CASE("missing inputs and unknown names exit with the configuration code") {
  TempDir dir("badcfg");
  // The resolved-config sidecar is written before inputs are validated.
  std::string out = dir.file("x.jsonl");
  CHECK(run(dir, "analyze --pairs /no/such/file.tsv --out \"" + out + "\"") ==
        2);
  CHECK(fs::is_regular_file(out + ".config.json"));

  CHECK(run(dir, "analyze --pairs \"" + corpus() +
                     "\" --resources /no/such/dir --out \"" + out + "\"") == 2);
  CHECK(run(dir, "analyze --pairs \"" + corpus() +
                     "\" --features nosuchfamily --out \"" + out + "\"") == 2);
  CHECK(run(dir, "evaluate --metric bogus --pred \"" + corpus() +
                     "\" --out \"" + out + "\"") == 2);
  // CLI-level errors: missing required flag, unknown subcommand.
  CHECK(run(dir, "analyze --out \"" + out + "\"") == 2);
  CHECK(run(dir, "frobnicate") == 2);
  CHECK(run(dir, "--help") == 0);
}

TEST_CASE("the data dir environment override is honored") {
  TempDir dir("envdata");
  std::string out = dir.file("x.jsonl");
  std::string cmd = "SIMPKIT_DATA=/no/such/place \"" + bin() +
                    "\" analyze --pairs \"" + corpus() + "\" --out \"" + out +
                    "\" >>\"" + dir.file("cli.log") + "\" 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  CHECK(WEXITSTATUS(rc) == 2);
}

TEST_CASE("annotate train prefixes each pair with the default three tokens") {
  TempDir dir("anntrain");
  std::string out = dir.file("annotated.txt");
  int rc =
      run(dir, "annotate --pairs \"" + corpus() + "\" --out \"" + out + "\"");
  CHECK(rc == 0);

  std::vector<std::string> lines = lines_of(out);
  REQUIRE(lines.size() == 20);
  for (const std::string& line : lines) {
    CHECK(starts_with(line, "<NbChars_"));
    CHECK(contains(line, "<LevSim_"));
    CHECK(contains(line, "<WordRank_"));
  }
  // The annotated text carries the complex side, tokens first.
  CHECK(contains(lines[0], "The marvelous investigator examined"));
  std::size_t last_tok = lines[0].rfind('>');
  REQUIRE(last_tok != std::string::npos);
  CHECK(lines[0].substr(last_tok + 2) ==
        "The marvelous investigator examined the complicated mechanism in "
        "the laboratory .");
}

TEST_CASE("annotate inference applies the fixed tokens to every line") {
  TempDir dir("anninf");
  write_file(dir.file("src.txt"), "First .\nSecond sentence here .\n");
  std::string out = dir.file("annotated.txt");
  int rc = run(dir, "annotate --mode inference --src \"" + dir.file("src.txt") +
                        "\" --tokens NbChars=0.80,LevSim=0.75 --out \"" + out +
                        "\"");
  CHECK(rc == 0);
  std::vector<std::string> lines = lines_of(out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "<NbChars_0.80> <LevSim_0.75> First .");
  CHECK(lines[1] == "<NbChars_0.80> <LevSim_0.75> Second sentence here .");
}

TEST_CASE("token strings that are not bin multiples are rejected") {
  TempDir dir("anntok");
  write_file(dir.file("src.txt"), "First .\n");
  std::string base = "annotate --mode inference --src \"" +
                     dir.file("src.txt") + "\" --out \"" + dir.file("o.txt") +
                     "\" --tokens ";
  CHECK(run(dir, base + "MLS=0.83") == 2);
  CHECK(run(dir, base + "MLS=2.05") == 2);
  CHECK(run(dir, base + "NotAFeature=0.80") == 2);
  CHECK(run(dir, base + "MLS0.80") == 2);
  CHECK(run(dir, "annotate --pairs \"" + corpus() +
                     "\" --features Nope --out \"" + dir.file("o.txt") +
                     "\"") == 2);
}

TEST_CASE("evaluate scores identity output at the sari ceiling") {
  TempDir dir("evaluate");
  write_sides(dir, "src.txt", "ref.txt");
  std::string out = dir.file("scores.tsv");
  int rc = run(dir, "evaluate --metric all --src \"" + dir.file("src.txt") +
                        "\" --pred \"" + dir.file("ref.txt") + "\" --refs \"" +
                        dir.file("ref.txt") + "\" --out \"" + out + "\"");
  CHECK(rc == 0);

  std::vector<std::string> lines = lines_of(out);
  REQUIRE(lines.size() == 22);  // header + 20 rows + mean
  CHECK(lines[0] == "id\tsari\tfkgl\tter");
  std::vector<std::string> mean = split(lines.back(), '\t');
  REQUIRE(mean.size() == 4);
  CHECK(mean[0] == "mean");
  CHECK(std::stod(mean[1]) == doctest::Approx(100.0).epsilon(1e-9));
  CHECK(std::stod(mean[3]) == doctest::Approx(0.0));
}

TEST_CASE("highlight writes formatted text plus a parallel mask file") {
  TempDir dir("hlaoa");
  std::string out = dir.file("marked.txt");
  int rc = run(dir, "highlight --method aoa --pairs \"" + corpus() +
                        "\" --cutoff 8 --out \"" + out + "\"");
  CHECK(rc == 0);

  std::vector<std::string> text = lines_of(out);
  std::vector<std::string> masks = lines_of(out + ".mask");
  REQUIRE(text.size() == 20);
  REQUIRE(masks.size() == 20);
  std::vector<std::string> corpus_lines = lines_of(corpus());
  for (std::size_t i = 0; i < masks.size(); ++i) {
    std::vector<std::string> bits = split(masks[i], ' ');
    for (const std::string& b : bits) CHECK((b == "0" || b == "1"));
    // One mask entry per word of the complex side.
    std::string complex_side =
        corpus_lines[i].substr(0, corpus_lines[i].find('\t'));
    CHECK(bits.size() == tokenize(complex_side).n_words());
  }

  // Pair mode adds the gold-agreement report.
  std::vector<std::string> report = lines_of(out + ".eval.tsv");
  REQUIRE(report.size() == 22);
  CHECK(report[0] == "id\tprecision\trecall\tf1\tter");
  CHECK(starts_with(report.back(), "mean\t"));
}

TEST_CASE("highlight with zero probability leaves the text untouched") {
  TempDir dir("hlzero");
  write_sides(dir, "src.txt", "ref.txt");
  std::string out = dir.file("marked.txt");
  int rc = run(dir, "highlight --method random --p 0 --src \"" +
                        dir.file("src.txt") + "\" --out \"" + out + "\"");
  CHECK(rc == 0);
  CHECK(slurp(out) == slurp(dir.file("src.txt")));
  for (const std::string& mask : lines_of(out + ".mask"))
    CHECK(!contains(mask, "1"));
}

TEST_CASE("random highlight is reproducible per seed and varies across seeds") {
  TempDir dir("hlseed");
  write_sides(dir, "src.txt", "ref.txt");
  std::string base = "highlight --method random --p 0.5 --src \"" +
                     dir.file("src.txt") + "\" ";
  CHECK(run(dir, base + "--seed 7 --out \"" + dir.file("a.txt") + "\"") == 0);
  CHECK(run(dir, base + "--seed 7 --out \"" + dir.file("b.txt") + "\"") == 0);
  CHECK(run(dir, base + "--seed 8 --out \"" + dir.file("c.txt") + "\"") == 0);
  CHECK(slurp(dir.file("a.txt")) == slurp(dir.file("b.txt")));
  CHECK(slurp(dir.file("a.txt.mask")) == slurp(dir.file("b.txt.mask")));
  CHECK(slurp(dir.file("a.txt.mask")) != slurp(dir.file("c.txt.mask")));
}

TEST_CASE("attention highlight consumes subword alignments") {
  TempDir dir("hlatt");
  write_file(dir.file("src.txt"), "alpha beta gamma .\n");
  // Three words (the period is punctuation); "gamma" is split into two
  // subwords with low attention, so the below-mean threshold marks it.
  json rec;
  rec["tokens"] = {"alpha", "beta", "gam", "##ma"};
  rec["word_map"] = {0, 1, 2, 2};
  rec["heads"] = {{0.5, 0.5, 0.05, 0.15}};
  write_file(dir.file("att.jsonl"), rec.dump() + "\n");

  std::string out = dir.file("marked.txt");
  int rc = run(dir, "highlight --method attention --attention \"" +
                        dir.file("att.jsonl") + "\" --src \"" +
                        dir.file("src.txt") + "\" --out \"" + out + "\"");
  CHECK(rc == 0);
  std::vector<std::string> text = lines_of(out);
  REQUIRE(text.size() == 1);
  CHECK(text[0] == "alpha beta **gamma** .");
  CHECK(lines_of(out + ".mask")[0] == "0 0 1");

  // A record whose word count disagrees with the sentence is a data error.
  write_file(dir.file("src2.txt"), "alpha beta gamma delta .\n");
  CHECK(run(dir, "highlight --method attention --attention \"" +
                     dir.file("att.jsonl") + "\" --src \"" +
                     dir.file("src2.txt") + "\" --out \"" + out + "\"") == 3);
}

TEST_CASE("classify train then eval reaches full accuracy on the mini corpus") {
  TempDir dir("classify");
  std::string feats = dir.file("feat.jsonl");
  REQUIRE(run(dir, "analyze --pairs \"" + corpus() + "\" --trees \"" +
                       complex_trees() + "\" --trees-simple \"" +
                       simple_trees() + "\" --out \"" + feats + "\"") == 0);

  std::string model = dir.file("model.tsv");
  CHECK(run(dir, "classify --mode train --input \"" + feats + "\" --out \"" +
                     model + "\"") == 0);
  CHECK(fs::is_regular_file(model));

  std::string report = dir.file("eval.tsv");
  CHECK(run(dir, "classify --mode eval --input \"" + feats + "\" --model \"" +
                     model + "\" --out \"" + report + "\"") == 0);
  std::vector<std::string> lines = lines_of(report);
  REQUIRE(lines.size() == 42);  // header + 40 rows + mean
  CHECK(lines[0] == "id\tp\tpredicted\tlabel");
  CHECK(contains(lines.back(), "accuracy=1.000000"));
  CHECK(contains(lines.back(), "f1=1.000000"));

  std::string preds = dir.file("preds.tsv");
  CHECK(run(dir, "classify --mode predict --input \"" + feats +
                     "\" --model \"" + model + "\" --out \"" + preds +
                     "\"") == 0);
  std::vector<std::string> pred_lines = lines_of(preds);
  REQUIRE(pred_lines.size() == 41);
  CHECK(pred_lines[0] == "id\tp\tlabel");
  // Even ids carry the complex side and should be predicted as class 1.
  CHECK(split(pred_lines[1], '\t').back() == "1");
  CHECK(split(pred_lines[2], '\t').back() == "0");

  // An explicit label file overrides the id-parity default.
  std::string labels;
  for (int i = 0; i < 40; ++i)
    labels += std::to_string(i) + "\t" + (i % 2 == 0 ? "1" : "0") + "\n";
  write_file(dir.file("labels.tsv"), labels);
  CHECK(run(dir, "classify --mode eval --input \"" + feats + "\" --model \"" +
                     model + "\" --labels \"" + dir.file("labels.tsv") +
                     "\" --out \"" + report + "\"") == 0);
  CHECK(contains(lines_of(report).back(), "accuracy=1.000000"));
}

TEST_CASE("select-tokens runs the scorer command and writes a search trace") {
  TempDir dir("select");
  write_sides(dir, "validation.txt", "refs.txt");
  // Every added control token puts one more word on the first line, so this
  // scorer improves strictly with each greedy step. It also logs the
  // annotated file it was handed, proving the plumbing end to end.
  write_file(dir.file("wordcount.sh"),
             "echo \"$1\" >> \"" + dir.file("calls.log") + "\"\n" +
                 "head -n 1 \"$1\" | wc -w\nexit 0\n");

  std::string out = dir.file("trace.tsv");
  int rc = run(dir, "select-tokens --pairs \"" + corpus() +
                        "\" --validation \"" + dir.file("validation.txt") +
                        "\" --refs \"" + dir.file("refs.txt") +
                        "\" --scorer-cmd \"sh " + dir.file("wordcount.sh") +
                        "\" --features NbChars,LevSim --candidates-k 2 "
                        "--jobs 1 --out \"" + out + "\"");
  CHECK(rc == 0);

  std::vector<std::string> lines = lines_of(out);
  REQUIRE(lines.size() >= 2);
  CHECK(starts_with(lines[0], "baseline\t\t"));
  CHECK(starts_with(lines.back(), "selected\t"));
  // One token per feature: both features improve the score, none repeats.
  REQUIRE(lines.size() == 4);  // baseline, two steps, selected
  CHECK(starts_with(lines[1], "step1\t<"));
  CHECK(starts_with(lines[2], "step2\t<"));
  std::string selected = lines.back().substr(std::string("selected\t").size());
  CHECK(contains(selected, "<NbChars_"));
  CHECK(contains(selected, "<LevSim_"));
  // The scorer received annotated corpora from the default scratch dir
  // (the files themselves are cleaned up after each call).
  CHECK(fs::is_directory(out + ".work"));
  std::string calls = slurp(dir.file("calls.log"));
  CHECK(contains(calls, "combo_"));
  CHECK(contains(calls, out + ".work"));
}

TEST_CASE("a failing scorer exits with the scorer code but keeps the trace") {
  TempDir dir("selfail");
  write_sides(dir, "validation.txt", "refs.txt");
  write_file(dir.file("fail.sh"), "exit 3\n");

  std::string out = dir.file("trace.tsv");
  int rc = run(dir, "select-tokens --pairs \"" + corpus() +
                        "\" --validation \"" + dir.file("validation.txt") +
                        "\" --refs \"" + dir.file("refs.txt") +
                        "\" --scorer-cmd \"sh " + dir.file("fail.sh") +
                        "\" --features NbChars --jobs 1 --out \"" + out +
                        "\"");
  CHECK(rc == 4);
  // The partial trace was persisted before the failure exit.
  std::vector<std::string> lines = lines_of(out);
  REQUIRE(!lines.empty());
  CHECK(starts_with(lines[0], "baseline\t"));
  CHECK(starts_with(lines.back(), "selected\t"));
}

TEST_CASE("identical configuration and seed reproduce byte-identical output") {
  TempDir dir("repro");
  std::string args = "analyze --pairs \"" + corpus() + "\" --trees \"" +
                     complex_trees() + "\" --features syntactic,readability ";
  CHECK(run(dir, args + "--jobs 1 --out \"" + dir.file("a.jsonl") + "\"") == 0);
  CHECK(run(dir, args + "--jobs 1 --out \"" + dir.file("b.jsonl") + "\"") == 0);
  CHECK(run(dir, args + "--jobs 4 --out \"" + dir.file("c.jsonl") + "\"") == 0);
  std::string a = slurp(dir.file("a.jsonl"));
  CHECK(a == slurp(dir.file("b.jsonl")));
  // Parallel extraction must not change content or row order.
  CHECK(a == slurp(dir.file("c.jsonl")));
}

TEST_CASE("analyze can emit a sliding-window contour sidecar") {
  TempDir dir("contour");
  std::string out = dir.file("feat.jsonl");
  int rc = run(dir, "analyze --pairs \"" + corpus() +
                        "\" --features readability --contour FKGL "
                        "--window 5 --out \"" + out + "\"");
  CHECK(rc == 0);
  std::vector<std::string> lines = lines_of(out + ".contour.tsv");
  REQUIRE(lines.size() == 17);  // header + 20 - 5 + 1 windows
  CHECK(lines[0] == "window\tFKGL");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> cells = split(lines[i], '\t');
    REQUIRE(cells.size() == 2);
    CHECK(cells[0] == std::to_string(i - 1));
    CHECK(cells[1] != "NA");
  }
}
