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

#include "simpkit/corpus.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "simpkit/common.hpp"

namespace simpkit {

namespace {

using nlohmann::json;

[[noreturn]] void line_error(const std::string& path, std::size_t lineno,
                             const std::string& what) {
  std::ostringstream os;
  os << path << ":" << lineno << ": " << what;
  throw DataError(os.str());
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  return in;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

double parse_double(const std::string& path, std::size_t lineno,
                    const std::string& cell) {
  try {
    std::size_t used = 0;
    double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    if (!std::isfinite(v)) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    line_error(path, lineno, "not a finite number: '" + cell + "'");
  }
}

}  // namespace

std::vector<SentencePair> load_pairs(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<SentencePair> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) line_error(path, lineno, "empty line");
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      line_error(path, lineno, "expected one tab separator");
    if (line.find('\t', tab + 1) != std::string::npos)
      line_error(path, lineno, "more than one tab separator");
    SentencePair p;
    p.id = pairs.size();
    p.complex_text = line.substr(0, tab);
    p.simple_text = line.substr(tab + 1);
    if (trim(p.complex_text).empty() || trim(p.simple_text).empty())
      line_error(path, lineno, "empty sentence field");
    pairs.push_back(std::move(p));
  }
  return pairs;
}

void write_pairs(const std::vector<SentencePair>& pairs,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  for (const auto& p : pairs) {
    if (p.complex_text.find('\t') != std::string::npos ||
        p.simple_text.find('\t') != std::string::npos ||
        p.complex_text.find('\n') != std::string::npos ||
        p.simple_text.find('\n') != std::string::npos)
      throw DataError("sentence contains tab or newline, cannot round-trip");
    out << p.complex_text << '\t' << p.simple_text << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<std::optional<ParseTree>> load_trees(const std::string& path,
                                                 std::size_t n_expected) {
  std::ifstream in = open_input(path);
  std::vector<std::optional<ParseTree>> trees;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (trim(line).empty()) {
      trees.emplace_back(std::nullopt);
      continue;
    }
    try {
      trees.emplace_back(parse_bracketed(line));
    } catch (const ParseError& e) {
      line_error(path, lineno, e.what());
    }
  }
  if (trees.size() != n_expected) {
    std::ostringstream os;
    os << path << ": expected " << n_expected << " tree lines, found "
       << trees.size();
    throw DataError(os.str());
  }
  return trees;
}

LexiconTable::LexiconTable(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {}

std::optional<std::size_t> LexiconTable::column_index(
    const std::string& column) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i] == column) return i;
  return std::nullopt;
}

void LexiconTable::add(const std::string& word, std::vector<double> values) {
  std::string key = fold(word);
  if (index_.count(key))
    throw DataError("duplicate word in lexicon '" + name_ + "': " + word);
  index_[key] = rows_.size();
  rows_.push_back({key, std::move(values)});
}

bool LexiconTable::contains(const std::string& folded_word) const {
  return index_.count(folded_word) > 0;
}

std::optional<double> LexiconTable::lookup(const std::string& folded_word,
                                           std::size_t column) const {
  auto it = index_.find(folded_word);
  if (it == index_.end()) return std::nullopt;
  const auto& vals = rows_[it->second].values;
  if (column >= vals.size()) return std::nullopt;
  return vals[column];
}

LexiconTable load_lexicon(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": missing header");
  line = strip_cr(line);
  std::vector<std::string> header = split(line, '\t');
  if (header.empty() || header[0] != "word")
    throw DataError(path + ": header must start with 'word'");
  std::vector<std::string> columns(header.begin() + 1, header.end());
  std::string name = std::filesystem::path(path).stem().string();
  LexiconTable table(name, columns);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    std::vector<std::string> cells = split(line, '\t');
    if (cells.size() != header.size())
      line_error(path, lineno, "expected " + std::to_string(header.size()) +
                                   " columns, found " +
                                   std::to_string(cells.size()));
    if (trim(cells[0]).empty()) line_error(path, lineno, "empty word");
    std::vector<double> values;
    values.reserve(cells.size() - 1);
    for (std::size_t i = 1; i < cells.size(); ++i)
      values.push_back(parse_double(path, lineno, cells[i]));
    try {
      table.add(cells[0], std::move(values));
    } catch (const DataError& e) {
      line_error(path, lineno, e.what());
    }
  }
  return table;
}

std::vector<NgramTable> load_ngrams(const std::string& dir) {
  namespace fs = std::filesystem;
  static const char* kRegisters[] = {"spoken", "fiction", "magazine", "news",
                                     "academic"};
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
  std::vector<NgramTable> tables;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    std::string base = file.filename().string();
    // <register>.<order>.tsv
    std::vector<std::string> parts = split(base, '.');
    if (parts.size() != 3 || parts[2] != "tsv") continue;
    bool known = false;
    for (const char* r : kRegisters) known = known || parts[0] == r;
    if (!known)
      throw DataError(file.string() + ": unknown register '" + parts[0] + "'");
    int order = 0;
    try {
      order = std::stoi(parts[1]);
    } catch (const std::exception&) {
      throw DataError(file.string() + ": bad n-gram order '" + parts[1] + "'");
    }
    if (order < 1 || order > 5)
      throw DataError(file.string() + ": n-gram order out of range [1,5]");
    NgramTable table;
    table.register_name = parts[0];
    table.order = order;
    std::ifstream in = open_input(file.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      line = strip_cr(line);
      if (line.empty()) continue;
      std::size_t tab = line.find('\t');
      if (tab == std::string::npos)
        line_error(file.string(), lineno, "expected gram<TAB>frequency");
      std::string gram = trim(line.substr(0, tab));
      double freq = parse_double(file.string(), lineno, line.substr(tab + 1));
      std::vector<std::string> toks;
      for (const std::string& t : split(gram, ' '))
        if (!t.empty()) toks.push_back(fold(t));
      if (static_cast<int>(toks.size()) != order)
        line_error(file.string(), lineno,
                   "gram has " + std::to_string(toks.size()) +
                       " tokens, table order is " + std::to_string(order));
      std::string key;
      for (std::size_t i = 0; i < toks.size(); ++i) {
        if (i) key += ' ';
        key += toks[i];
      }
      table.freq[key] = freq;
    }
    tables.push_back(std::move(table));
  }
  return tables;
}

std::vector<AttentionRecord> load_attention(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<AttentionRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      line_error(path, lineno, std::string("bad JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("tokens") || !j.contains("word_map") ||
        !j.contains("heads"))
      line_error(path, lineno, "record needs tokens, word_map and heads");
    AttentionRecord rec;
    try {
      rec.tokens = j.at("tokens").get<std::vector<std::string>>();
      rec.word_map = j.at("word_map").get<std::vector<std::size_t>>();
      rec.heads = j.at("heads").get<std::vector<std::vector<double>>>();
    } catch (const json::exception& e) {
      line_error(path, lineno, std::string("bad field type: ") + e.what());
    }
    const std::size_t t = rec.tokens.size();
    if (t == 0) line_error(path, lineno, "empty token list");
    if (rec.word_map.size() != t)
      line_error(path, lineno, "word_map length differs from tokens");
    if (rec.word_map[0] != 0)
      line_error(path, lineno, "word_map must start at 0");
    for (std::size_t i = 1; i < t; ++i) {
      if (rec.word_map[i] != rec.word_map[i - 1] &&
          rec.word_map[i] != rec.word_map[i - 1] + 1)
        line_error(path, lineno, "word_map must be contiguous non-decreasing");
    }
    if (rec.heads.empty()) line_error(path, lineno, "empty heads matrix");
    for (const auto& row : rec.heads) {
      if (row.size() != t)
        line_error(path, lineno, "head row length differs from tokens");
      for (double w : row) {
        if (!std::isfinite(w) || w < 0)
          line_error(path, lineno, "attention weights must be finite and >= 0");
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::size_t FeatureVector::present_count() const {
  std::size_t n = 0;
  for (const auto& [k, v] : values) {
    (void)k;
    if (v.has_value()) ++n;
  }
  return n;
}

void export_features(const std::vector<FeatureRow>& rows,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  const std::string* version = nullptr;
  for (const auto& row : rows) {
    if (version == nullptr) {
      version = &row.features.catalog_version;
    } else if (*version != row.features.catalog_version) {
      throw DataError("feature rows mix catalog versions: '" + *version +
                      "' vs '" + row.features.catalog_version + "'");
    }
    json feats = json::object();
    for (const auto& [id, v] : row.features.values) {
      if (v.has_value())
        feats[id] = *v;
      else
        feats[id] = nullptr;
    }
    json j{{"id", row.id},
           {"catalog", row.features.catalog_version},
           {"features", std::move(feats)}};
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<FeatureRow> import_features(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<FeatureRow> rows;
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::string> version;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      line_error(path, lineno, std::string("bad JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("features") ||
        !j.contains("catalog"))
      line_error(path, lineno, "record needs id, catalog and features");
    FeatureRow row;
    try {
      row.id = j.at("id").get<std::size_t>();
      row.features.catalog_version = j.at("catalog").get<std::string>();
      for (const auto& [key, val] : j.at("features").items()) {
        if (val.is_null()) {
          row.features.set_missing(key);
        } else if (val.is_number()) {
          row.features.set(key, val.get<double>());
        } else {
          line_error(path, lineno, "feature '" + key + "' is not a number");
        }
      }
    } catch (const json::exception& e) {
      line_error(path, lineno, std::string("bad field type: ") + e.what());
    }
    if (!version.has_value())
      version = row.features.catalog_version;
    else if (*version != row.features.catalog_version)
      line_error(path, lineno, "catalog version mismatch");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace simpkit
