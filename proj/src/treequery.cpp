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

#include "simpkit/treequery.hpp"

#include <fstream>
#include <regex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "simpkit/common.hpp"

namespace simpkit {

std::size_t ParseTree::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.node_count();
  return n;
}

void ParseTree::leaves(std::vector<const ParseTree*>* out) const {
  if (is_leaf()) {
    out->push_back(this);
    return;
  }
  for (const auto& c : children) c.leaves(out);
}

std::string ParseTree::to_string() const {
  if (is_leaf()) return label;
  std::string s = "(" + label;
  for (const auto& c : children) {
    s += ' ';
    s += c.to_string();
  }
  s += ')';
  return s;
}

namespace {

[[noreturn]] void tree_error(const std::string& what, std::size_t offset) {
  std::ostringstream os;
  os << what << " at offset " << offset;
  throw ParseError(os.str());
}

bool is_tree_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

struct TreeReader {
  const std::string& text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && is_tree_space(text[pos])) ++pos;
  }

  std::string read_atom() {
    std::size_t start = pos;
    while (pos < text.size() && !is_tree_space(text[pos]) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    return text.substr(start, pos - start);
  }

  ParseTree parse_node() {
    std::size_t open = pos;
    if (pos >= text.size() || text[pos] != '(')
      tree_error("expected '('", pos);
    ++pos;
    skip_space();
    ParseTree node;
    node.label = read_atom();
    skip_space();
    while (pos < text.size() && text[pos] != ')') {
      if (text[pos] == '(') {
        node.children.push_back(parse_node());
      } else {
        ParseTree leaf;
        leaf.label = read_atom();
        if (leaf.label.empty()) tree_error("unexpected character", pos);
        node.children.push_back(std::move(leaf));
      }
      skip_space();
    }
    if (pos >= text.size()) tree_error("unbalanced '('", open);
    ++pos;  // ')'
    if (node.children.empty())
      tree_error("constituent with no children", open);
    if (node.label.empty() &&
        (node.children.size() != 1 || node.children[0].is_leaf()))
      tree_error("constituent without label", open);
    return node;
  }
};

}  // namespace

ParseTree parse_bracketed(const std::string& text) {
  TreeReader r{text};
  r.skip_space();
  if (r.pos >= text.size()) tree_error("empty input", 0);
  ParseTree root = r.parse_node();
  r.skip_space();
  if (r.pos < text.size()) tree_error("trailing content", r.pos);
  // Strip a ROOT/TOP/unlabeled wrapper around a single constituent.
  if ((root.label.empty() || root.label == "ROOT" || root.label == "TOP") &&
      root.children.size() == 1 && !root.children[0].is_leaf()) {
    ParseTree inner = std::move(root.children[0]);
    return inner;
  }
  if (root.label.empty()) tree_error("constituent without label", 0);
  return root;
}

// ---------------------------------------------------------------------------
// Pattern compilation
// ---------------------------------------------------------------------------

struct TreePattern::Node {
  bool is_regex = false;
  std::string literal;
  std::regex re;

  enum class Op { kChild, kParent, kDominates, kDominatedBy, kNext, kPrev };
  struct Rel {
    Op op;
    bool negated = false;
    std::unique_ptr<Node> target;
  };
  std::vector<Rel> rels;

  bool label_matches(const std::string& label) const {
    if (is_regex) return std::regex_search(label, re);
    return label == literal;
  }
};

namespace {

[[noreturn]] void pattern_error(const std::string& what, std::size_t offset) {
  std::ostringstream os;
  os << "pattern error: " << what << " at offset " << offset;
  throw ParseError(os.str());
}

struct PatternLexer {
  enum class Kind { kEnd, kLParen, kRParen, kBang, kOp, kLabel, kRegex };
  struct Token {
    Kind kind;
    std::size_t offset;
    std::string text;                 // label body or regex body
    TreePattern::Node::Op op = TreePattern::Node::Op::kChild;
  };

  const std::string& s;
  std::size_t pos = 0;

  static bool is_delim(char c) {
    return c == '(' || c == ')' || c == '!' || c == '<' || c == '>' ||
           c == '$' || c == '&' || c == '/';
  }

  Token next() {
    while (pos < s.size() && (is_tree_space(s[pos]) || s[pos] == '&')) ++pos;
    if (pos >= s.size()) return {Kind::kEnd, pos, ""};
    std::size_t at = pos;
    char c = s[pos];
    using Op = TreePattern::Node::Op;
    if (c == '(') {
      ++pos;
      return {Kind::kLParen, at, "("};
    }
    if (c == ')') {
      ++pos;
      return {Kind::kRParen, at, ")"};
    }
    if (c == '!') {
      ++pos;
      return {Kind::kBang, at, "!"};
    }
    if (c == '<') {
      ++pos;
      if (pos < s.size() && s[pos] == '<') {
        ++pos;
        return {Kind::kOp, at, "<<", Op::kDominates};
      }
      return {Kind::kOp, at, "<", Op::kChild};
    }
    if (c == '>') {
      ++pos;
      if (pos < s.size() && s[pos] == '>') {
        ++pos;
        return {Kind::kOp, at, ">>", Op::kDominatedBy};
      }
      return {Kind::kOp, at, ">", Op::kParent};
    }
    if (c == '$') {
      ++pos;
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        char d = s[pos++];
        return {Kind::kOp, at, std::string("$") + d,
                d == '+' ? Op::kNext : Op::kPrev};
      }
      pattern_error("expected '+' or '-' after '$'", at);
    }
    if (c == '/') {
      ++pos;
      std::string body;
      while (pos < s.size() && s[pos] != '/') {
        if (s[pos] == '\\' && pos + 1 < s.size()) {
          if (s[pos + 1] == '/') {
            body += '/';
          } else {
            body += s[pos];
            body += s[pos + 1];
          }
          pos += 2;
        } else {
          body += s[pos++];
        }
      }
      if (pos >= s.size()) pattern_error("unterminated regex", at);
      ++pos;  // closing '/'
      return {Kind::kRegex, at, body};
    }
    std::string body;
    while (pos < s.size() && !is_tree_space(s[pos]) && !is_delim(s[pos]))
      body += s[pos++];
    if (body.empty()) pattern_error("unexpected character", at);
    return {Kind::kLabel, at, body};
  }
};

struct PatternParser {
  PatternLexer lex;
  PatternLexer::Token tok;

  explicit PatternParser(const std::string& s) : lex{s} { advance(); }
  void advance() { tok = lex.next(); }

  std::unique_ptr<TreePattern::Node> parse_label() {
    auto node = std::make_unique<TreePattern::Node>();
    if (tok.kind == PatternLexer::Kind::kLabel) {
      node->literal = tok.text;
    } else if (tok.kind == PatternLexer::Kind::kRegex) {
      node->is_regex = true;
      node->literal = tok.text;
      try {
        node->re = std::regex(tok.text, std::regex::ECMAScript);
      } catch (const std::regex_error& e) {
        pattern_error(std::string("bad regex: ") + e.what(), tok.offset);
      }
    } else {
      pattern_error("expected node label", tok.offset);
    }
    advance();
    return node;
  }

  std::unique_ptr<TreePattern::Node> parse_node() {
    auto node = parse_label();
    while (tok.kind == PatternLexer::Kind::kBang ||
           tok.kind == PatternLexer::Kind::kOp) {
      TreePattern::Node::Rel rel;
      if (tok.kind == PatternLexer::Kind::kBang) {
        rel.negated = true;
        advance();
        if (tok.kind != PatternLexer::Kind::kOp)
          pattern_error("expected relation after '!'", tok.offset);
      }
      rel.op = tok.op;
      advance();
      if (tok.kind == PatternLexer::Kind::kLParen) {
        advance();
        rel.target = parse_node();
        if (tok.kind != PatternLexer::Kind::kRParen)
          pattern_error("expected ')'", tok.offset);
        advance();
      } else {
        rel.target = parse_label();
      }
      node->rels.push_back(std::move(rel));
    }
    return node;
  }
};

}  // namespace

TreePattern::TreePattern() = default;
TreePattern::TreePattern(TreePattern&&) noexcept = default;
TreePattern& TreePattern::operator=(TreePattern&&) noexcept = default;
TreePattern::~TreePattern() = default;

TreePattern TreePattern::compile(const std::string& expr) {
  PatternParser p(expr);
  TreePattern pat;
  pat.expr_ = expr;
  pat.root_ = p.parse_node();
  if (p.tok.kind != PatternLexer::Kind::kEnd)
    pattern_error("trailing content", p.tok.offset);
  return pat;
}

// ---------------------------------------------------------------------------
// Pattern evaluation
// ---------------------------------------------------------------------------

namespace {

// Parent/position index for one tree; rebuilt per match call.
struct TreeIndex {
  struct Info {
    const ParseTree* parent = nullptr;
    std::size_t child_pos = 0;
  };
  std::unordered_map<const ParseTree*, Info> info;
  std::vector<const ParseTree*> preorder;

  explicit TreeIndex(const ParseTree& root) {
    build(&root, nullptr, 0);
  }
  void build(const ParseTree* n, const ParseTree* parent, std::size_t pos) {
    info[n] = {parent, pos};
    preorder.push_back(n);
    for (std::size_t i = 0; i < n->children.size(); ++i)
      build(&n->children[i], n, i);
  }
};

bool eval_node(const TreeIndex& idx, const ParseTree* n,
               const TreePattern::Node* p);

bool eval_rel(const TreeIndex& idx, const ParseTree* n,
              const TreePattern::Node::Rel& rel) {
  using Op = TreePattern::Node::Op;
  const TreePattern::Node* t = rel.target.get();
  switch (rel.op) {
    case Op::kChild: {
      for (const auto& c : n->children)
        if (eval_node(idx, &c, t)) return true;
      return false;
    }
    case Op::kParent: {
      const ParseTree* p = idx.info.at(n).parent;
      return p != nullptr && eval_node(idx, p, t);
    }
    case Op::kDominates: {
      // Any strict descendant.
      std::vector<const ParseTree*> stack;
      for (const auto& c : n->children) stack.push_back(&c);
      while (!stack.empty()) {
        const ParseTree* d = stack.back();
        stack.pop_back();
        if (eval_node(idx, d, t)) return true;
        for (const auto& c : d->children) stack.push_back(&c);
      }
      return false;
    }
    case Op::kDominatedBy: {
      for (const ParseTree* a = idx.info.at(n).parent; a != nullptr;
           a = idx.info.at(a).parent)
        if (eval_node(idx, a, t)) return true;
      return false;
    }
    case Op::kNext: {
      const auto& in = idx.info.at(n);
      if (in.parent == nullptr) return false;
      if (in.child_pos + 1 >= in.parent->children.size()) return false;
      return eval_node(idx, &in.parent->children[in.child_pos + 1], t);
    }
    case Op::kPrev: {
      const auto& in = idx.info.at(n);
      if (in.parent == nullptr || in.child_pos == 0) return false;
      return eval_node(idx, &in.parent->children[in.child_pos - 1], t);
    }
  }
  return false;
}

bool eval_node(const TreeIndex& idx, const ParseTree* n,
               const TreePattern::Node* p) {
  if (!p->label_matches(n->label)) return false;
  for (const auto& rel : p->rels) {
    bool hit = eval_rel(idx, n, rel);
    if (rel.negated ? hit : !hit) return false;
  }
  return true;
}

std::vector<const ParseTree*> match_with_index(const TreeIndex& idx,
                                               const TreePattern& pattern) {
  std::vector<const ParseTree*> out;
  for (const ParseTree* n : idx.preorder)
    if (eval_node(idx, n, pattern.root())) out.push_back(n);
  return out;
}

}  // namespace

std::vector<const ParseTree*> match_pattern(const ParseTree& tree,
                                            const TreePattern& pattern) {
  TreeIndex idx(tree);
  return match_with_index(idx, pattern);
}

std::vector<const ParseTree*> match_pattern(const ParseTree& tree,
                                            const std::string& pattern_expr) {
  return match_pattern(tree, TreePattern::compile(pattern_expr));
}

// ---------------------------------------------------------------------------
// Pattern library and unit counting
// ---------------------------------------------------------------------------

SyntaxPatterns SyntaxPatterns::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open pattern file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return from_string(buf.str());
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

SyntaxPatterns SyntaxPatterns::from_string(const std::string& text) {
  SyntaxPatterns sp;
  std::istringstream in(text);
  std::string line;
  std::string current;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.back() == ':' && t.find_first_of(" \t/<>$!()") == std::string::npos) {
      current = t.substr(0, t.size() - 1);
      sp.blocks_[current];  // block may stay empty
      continue;
    }
    if (current.empty())
      throw DataError("pattern line " + std::to_string(lineno) +
                      " outside any block");
    try {
      sp.blocks_[current].push_back(TreePattern::compile(t));
    } catch (const ParseError& e) {
      throw DataError("pattern line " + std::to_string(lineno) + ": " +
                      e.what());
    }
  }
  return sp;
}

const std::vector<TreePattern>& SyntaxPatterns::block(
    const std::string& id) const {
  auto it = blocks_.find(id);
  if (it == blocks_.end())
    throw DataError("pattern library has no block '" + id + "'");
  return it->second;
}

bool SyntaxPatterns::has_block(const std::string& id) const {
  return blocks_.find(id) != blocks_.end();
}

UnitCounts& UnitCounts::operator+=(const UnitCounts& o) {
  words += o.words;
  sentences += o.sentences;
  clauses += o.clauses;
  tunits += o.tunits;
  dep_clauses += o.dep_clauses;
  complex_tunits += o.complex_tunits;
  coord_phrases += o.coord_phrases;
  complex_nominals += o.complex_nominals;
  verb_phrases += o.verb_phrases;
  premod_words += o.premod_words;
  premod_nps += o.premod_nps;
  postmod_words += o.postmod_words;
  postmod_nps += o.postmod_nps;
  return *this;
}

namespace {

std::unordered_set<const ParseTree*> match_union(
    const TreeIndex& idx, const std::vector<TreePattern>& patterns) {
  std::unordered_set<const ParseTree*> out;
  for (const auto& p : patterns) {
    for (const ParseTree* n : match_with_index(idx, p)) out.insert(n);
  }
  return out;
}

bool node_in_label_class(const TreeIndex& idx, const ParseTree* n,
                         const std::vector<TreePattern>& patterns) {
  for (const auto& p : patterns)
    if (eval_node(idx, n, p.root())) return true;
  return false;
}

// Words below n: leaves whose immediate parent is not punctuation-tagged.
std::size_t words_below(const TreeIndex& idx, const ParseTree* n,
                        const std::vector<TreePattern>& punct) {
  if (n->is_leaf()) return 0;
  std::size_t count = 0;
  for (const auto& c : n->children) {
    if (c.is_leaf()) {
      if (!node_in_label_class(idx, n, punct)) ++count;
    } else {
      count += words_below(idx, &c, punct);
    }
  }
  return count;
}

}  // namespace

UnitCounts count_units(const ParseTree& tree, const SyntaxPatterns& patterns) {
  TreeIndex idx(tree);
  const auto& punct = patterns.block("punct");

  UnitCounts uc;
  uc.sentences = 1;
  uc.words = words_below(idx, &tree, punct);

  auto clause_set = match_union(idx, patterns.block("clause"));
  auto tunit_set = match_union(idx, patterns.block("tunit"));
  auto dep_set = match_union(idx, patterns.block("depclause"));
  uc.clauses = clause_set.size();
  uc.tunits = tunit_set.size();
  uc.dep_clauses = dep_set.size();
  uc.coord_phrases = match_union(idx, patterns.block("coordphrase")).size();
  uc.complex_nominals =
      match_union(idx, patterns.block("compnominal")).size();
  uc.verb_phrases = match_union(idx, patterns.block("verbphrase")).size();

  // A complex T-unit owns at least one dependent clause. Each dependent
  // clause is attributed to its nearest enclosing T-unit so a wrapper node
  // covering coordinated T-units is not marked for all of them.
  std::unordered_set<const ParseTree*> complex_tunits;
  for (const ParseTree* d : dep_set) {
    for (const ParseTree* a = d; a != nullptr; a = idx.info.at(a).parent) {
      if (tunit_set.count(a)) {
        complex_tunits.insert(a);
        break;
      }
    }
  }
  uc.complex_tunits = complex_tunits.size();

  const auto& head_class = patterns.block("np_head");
  const auto& premod_class = patterns.block("np_premod");
  const auto& postmod_class = patterns.block("np_postmod");
  for (const ParseTree* n : idx.preorder) {
    if (n->label != "NP" || n->is_leaf()) continue;
    // Head: last child in the head class; NPs without one are skipped.
    std::size_t head = n->children.size();
    for (std::size_t i = 0; i < n->children.size(); ++i) {
      if (node_in_label_class(idx, &n->children[i], head_class)) head = i;
    }
    if (head == n->children.size()) continue;
    std::size_t pre_w = 0, post_w = 0, post_consts = 0;
    for (std::size_t i = 0; i < head; ++i) {
      const ParseTree* c = &n->children[i];
      if (node_in_label_class(idx, c, premod_class))
        pre_w += words_below(idx, c, punct);
    }
    for (std::size_t i = head + 1; i < n->children.size(); ++i) {
      const ParseTree* c = &n->children[i];
      if (node_in_label_class(idx, c, postmod_class)) {
        ++post_consts;
        post_w += words_below(idx, c, punct);
      }
    }
    if (pre_w > 0) {
      ++uc.premod_nps;
      uc.premod_words += pre_w;
    }
    if (post_consts > 0) {
      ++uc.postmod_nps;
      uc.postmod_words += post_w;
    }
  }
  return uc;
}

namespace {

double unit_ratio(std::size_t num, std::size_t den, const char* id,
                  std::set<std::string>* degenerate) {
  if (den == 0) {
    degenerate->insert(id);
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

SyntacticMeasures measures_from_counts(const UnitCounts& c) {
  SyntacticMeasures m;
  auto* dg = &m.degenerate;
  m.mlc = unit_ratio(c.words, c.clauses, "MLC", dg);
  m.mls = unit_ratio(c.words, c.sentences, "MLS", dg);
  m.mlt = unit_ratio(c.words, c.tunits, "MLT", dg);
  m.c_s = unit_ratio(c.clauses, c.sentences, "C/S", dg);
  m.c_t = unit_ratio(c.clauses, c.tunits, "C/T", dg);
  m.t_s = unit_ratio(c.tunits, c.sentences, "T/S", dg);
  m.depc_c = unit_ratio(c.dep_clauses, c.clauses, "DepC/C", dg);
  m.depc_t = unit_ratio(c.dep_clauses, c.tunits, "DepC/T", dg);
  m.compt_t = unit_ratio(c.complex_tunits, c.tunits, "CompT/T", dg);
  m.coordp_c = unit_ratio(c.coord_phrases, c.clauses, "CoordP/C", dg);
  m.coordp_t = unit_ratio(c.coord_phrases, c.tunits, "CoordP/T", dg);
  m.compn_c = unit_ratio(c.complex_nominals, c.clauses, "CompN/C", dg);
  m.compn_t = unit_ratio(c.complex_nominals, c.tunits, "CompN/T", dg);
  m.vp_t = unit_ratio(c.verb_phrases, c.tunits, "VP/T", dg);
  m.np_premod = unit_ratio(c.premod_words, c.premod_nps, "NP.PreMod", dg);
  m.np_postmod = unit_ratio(c.postmod_words, c.postmod_nps, "NP.PostMod", dg);
  return m;
}

SyntacticMeasures syntactic_measures(const ParseTree& tree,
                                     const SyntaxPatterns& patterns) {
  return measures_from_counts(count_units(tree, patterns));
}

std::map<std::string, double> SyntacticMeasures::to_map() const {
  return {
      {"MLC", mlc},         {"MLS", mls},
      {"MLT", mlt},         {"C/S", c_s},
      {"C/T", c_t},         {"T/S", t_s},
      {"DepC/C", depc_c},   {"DepC/T", depc_t},
      {"CompT/T", compt_t}, {"CoordP/C", coordp_c},
      {"CoordP/T", coordp_t}, {"CompN/C", compn_c},
      {"CompN/T", compn_t}, {"VP/T", vp_t},
      {"NP.PreMod", np_premod}, {"NP.PostMod", np_postmod},
  };
}

}  // namespace simpkit
