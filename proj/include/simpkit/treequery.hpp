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

#ifndef SIMPKIT_TREEQUERY_HPP_
#define SIMPKIT_TREEQUERY_HPP_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace simpkit {

// Constituency tree node. Leaves carry the surface token in their label;
// internal nodes carry the category or part-of-speech tag.
struct ParseTree {
  std::string label;
  std::vector<ParseTree> children;

  bool is_leaf() const { return children.empty(); }
  // A preterminal directly tags one token: (DT The).
  bool is_preterminal() const {
    return children.size() == 1 && children[0].is_leaf();
  }

  std::size_t node_count() const;
  void leaves(std::vector<const ParseTree*>* out) const;
  std::string to_string() const;
};

// Parses one bracketed tree. A ROOT/TOP/unlabeled single-child wrapper is
// stripped. Errors report the character offset.
ParseTree parse_bracketed(const std::string& text);

// Node-matching pattern over trees, a small subset of the usual tree-query
// languages:
//
//   pattern  := node
//   node     := label relation*
//   label    := literal | /regex/
//   relation := '!'? op target
//   op       := '<' (has child) | '>' (has parent) | '<<' (dominates)
//             | '>>' (dominated by) | '$+' (next sibling) | '$-' (prev sibling)
//   target   := label | '(' node ')'
//
// Literal labels match exactly; /regex/ uses search semantics, so anchor
// with ^...$ for whole-label matches. Several relations on one node are a
// conjunction; '!' negates a single relation.
class TreePattern {
 public:
  // Throws ParseError on syntax errors (message carries the offset).
  static TreePattern compile(const std::string& expr);
  TreePattern(TreePattern&&) noexcept;
  TreePattern& operator=(TreePattern&&) noexcept;
  TreePattern(const TreePattern&) = delete;
  TreePattern& operator=(const TreePattern&) = delete;
  ~TreePattern();

  const std::string& expr() const { return expr_; }

  struct Node;  // compiled form

  const Node* root() const { return root_.get(); }

 private:
  TreePattern();
  std::string expr_;
  std::unique_ptr<Node> root_;
};

// All nodes of tree matching the pattern, in preorder.
std::vector<const ParseTree*> match_pattern(const ParseTree& tree,
                                            const TreePattern& pattern);
std::vector<const ParseTree*> match_pattern(const ParseTree& tree,
                                            const std::string& pattern_expr);

// Pattern library describing syntactic units. Format: blocks headed by
// "<id>:" on its own line followed by one pattern per line; '#' starts a
// comment. A unit's node set is the union over its block's patterns.
//
// Expected ids: clause, tunit, depclause, coordphrase, compnominal,
// verbphrase, plus single-pattern label classes punct, np_head, np_premod,
// np_postmod.
class SyntaxPatterns {
 public:
  static SyntaxPatterns load(const std::string& path);
  static SyntaxPatterns from_string(const std::string& text);

  const std::vector<TreePattern>& block(const std::string& id) const;
  bool has_block(const std::string& id) const;

 private:
  std::map<std::string, std::vector<TreePattern>> blocks_;
};

// Production-unit counts for one tree (sentences is always 1).
struct UnitCounts {
  std::size_t words = 0;
  std::size_t sentences = 1;
  std::size_t clauses = 0;
  std::size_t tunits = 0;
  std::size_t dep_clauses = 0;
  std::size_t complex_tunits = 0;
  std::size_t coord_phrases = 0;
  std::size_t complex_nominals = 0;
  std::size_t verb_phrases = 0;
  std::size_t premod_words = 0;
  std::size_t premod_nps = 0;
  std::size_t postmod_words = 0;
  std::size_t postmod_nps = 0;

  UnitCounts& operator+=(const UnitCounts& o);
};

// The fourteen large-grained ratios plus the two NP modification scores.
// A ratio with a zero denominator is reported as 0 and its id is listed in
// degenerate; values are never NaN.
struct SyntacticMeasures {
  double mlc = 0, mls = 0, mlt = 0;
  double c_s = 0, c_t = 0, t_s = 0;
  double depc_c = 0, depc_t = 0, compt_t = 0;
  double coordp_c = 0, coordp_t = 0;
  double compn_c = 0, compn_t = 0, vp_t = 0;
  double np_premod = 0, np_postmod = 0;
  std::set<std::string> degenerate;

  // Keys use the public feature ids (MLC, MLS, ..., NP.PreMod, NP.PostMod).
  std::map<std::string, double> to_map() const;
};

UnitCounts count_units(const ParseTree& tree, const SyntaxPatterns& patterns);

// Ratios from counts; pass the sum of per-tree counts for corpus-level
// measures. sentences must be >= 1.
SyntacticMeasures measures_from_counts(const UnitCounts& c);

SyntacticMeasures syntactic_measures(const ParseTree& tree,
                                     const SyntaxPatterns& patterns);

}  // namespace simpkit

#endif  // SIMPKIT_TREEQUERY_HPP_
