// Copyright 2026 The tagkit authors
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

#ifndef TAGKIT_DTREE_HPP_
#define TAGKIT_DTREE_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tagkit/corpus.hpp"
#include "tagkit/lexicon.hpp"
#include "tagkit/tagset.hpp"

namespace tagkit {

struct DTreeParams {
  int context_length = 2;       // preceding tags forming the context
  double min_gain = 0.7;        // context tree pruning threshold (bits)
  double eq_class_weight = 0.15;
  double affix_gain = 1.2;      // affix tree pruning threshold (bits)
  bool operator==(const DTreeParams&) const = default;
};

// G = H(parent) - (n_yes/n) H(yes) - (n_no/n) H(no), Shannon entropy in
// bits, 0 log 0 = 0. Children must partition the parent.
double info_gain(const std::map<std::string, long long>& parent,
                 const std::map<std::string, long long>& yes,
                 const std::map<std::string, long long>& no);
// Dense-count form used internally; no partition check.
double info_gain_counts(const std::vector<long long>& yes,
                        const std::vector<long long>& no);

// Binary decision tree over preceding-tag contexts. Tests ask whether the
// tag at relative position -p equals a given tag; leaves hold raw counts
// of the current tag (smoothed on lookup).
struct ContextTree {
  struct Node {
    int test_pos = 0;    // 1..context_length for test nodes, 0 for leaves
    int test_tag = -1;   // tag id (boundary id allowed)
    int yes = -1;
    int no = -1;
    double split_gain = 0.0;            // gain recorded when the split was made
    std::vector<long long> counts;      // current-tag counts over real tags
  };
  std::vector<Node> nodes;  // nodes[0] is the root; empty when untrained
  bool empty() const { return nodes.empty(); }
  std::size_t test_node_count() const;
};

// Character trie over reversed word endings; each node holds the tag
// counts of the training tokens whose form ends in the node's suffix.
struct AffixTree {
  struct Node {
    std::string ch;  // codepoint leading to this node, empty at the root
    std::vector<std::pair<int, long long>> counts;  // tag id -> count, sorted
    long long total = 0;
    std::vector<int> children;  // indices, sorted by ch
    int parent = -1;
  };
  std::vector<Node> nodes;
  bool empty() const { return nodes.empty(); }
};

struct DTreeModel {
  DTreeParams params;
  std::vector<std::string> tag_names;  // real tags, sorted; boundary id = size()
  Lexicon lexicon;
  TagPriors priors;
  // Ambiguity class (identical lexicon tag set) -> tag counts.
  std::map<std::vector<int>, std::vector<long long>> class_counts;
  ContextTree context_tree;
  AffixTree affix_tree;

  int tag_id(std::string_view name) const;  // -1 when absent
  int boundary_id() const { return static_cast<int>(tag_names.size()); }
};

// Open-class tags feeding the affix tree; unknown words are open-class.
const std::vector<std::string>& default_open_class_tags();

DTreeModel dtree_train(const Corpus& train, const Lexicon& lex,
                       const DTreeParams& params, const Tagset& tagset);

// Distribution over real tags at the deepest trie node matching the
// reversed ending of form; the root distribution when nothing matches.
std::vector<double> affix_lookup(const DTreeModel& m, std::string_view form);

// Smoothed P(tag | form) for known forms: (1-w) lexical relative frequency
// plus w times the ambiguity-class distribution.
double smoothed_conditional(const DTreeModel& m, std::string_view form,
                            std::string_view tag);

// Generative emission weight: smoothed conditional (or affix distribution
// for unknown forms) divided by the tag prior.
double emission_weight(const DTreeModel& m, std::string_view form,
                       std::string_view tag);

// Decode-time lookups, exposed so exhaustive enumeration can score paths
// with the exact same quantities.
std::vector<std::string> candidate_tags(const DTreeModel& m, std::string_view form);
double transition_log(const DTreeModel& m, std::string_view prev2,
                      std::string_view prev1, std::string_view cur);
double emission_log(const DTreeModel& m, std::string_view form, std::string_view tag);

Sentence viterbi_tag_sentence(const RawSentence& forms, const DTreeModel& m);
Corpus dtree_tag(const RawCorpus& raw, const DTreeModel& m, int jobs = 1);

void write_dtree_model(const DTreeModel& m, std::ostream& out);
void save_dtree_model(const DTreeModel& m, const std::string& path);
DTreeModel read_dtree_model(std::istream& in);
DTreeModel load_dtree_model(const std::string& path);

}  // namespace tagkit

#endif  // TAGKIT_DTREE_HPP_
