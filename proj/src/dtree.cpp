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

#include "tagkit/dtree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "tagkit/error.hpp"
#include "tagkit/utf8.hpp"

namespace tagkit {

namespace {

constexpr double kLeafSmoothing = 0.1;  // add-lambda over the tagset
constexpr int kMaxAffixDepth = 5;
// Splits with smaller gain are numerical noise, never worth a node.
constexpr double kMinSplitGain = 1e-9;

double entropy_bits(const std::vector<long long>& counts, long long total) {
  if (total <= 0) return 0.0;
  double sum = 0.0;
  for (long long c : counts)
    if (c > 0) sum += static_cast<double>(c) * std::log2(static_cast<double>(c));
  double n = static_cast<double>(total);
  return std::log2(n) - sum / n;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double info_gain_counts(const std::vector<long long>& yes,
                        const std::vector<long long>& no) {
  if (yes.size() != no.size())
    throw DataError("info gain: children over different tag universes");
  long long n_yes = 0, n_no = 0;
  std::vector<long long> parent(yes.size(), 0);
  for (std::size_t i = 0; i < yes.size(); ++i) {
    if (yes[i] < 0 || no[i] < 0) throw DataError("info gain: negative count");
    parent[i] = yes[i] + no[i];
    n_yes += yes[i];
    n_no += no[i];
  }
  long long n = n_yes + n_no;
  if (n == 0) throw DataError("info gain: empty parent distribution");
  double h_parent = entropy_bits(parent, n);
  double h_yes = entropy_bits(yes, n_yes);
  double h_no = entropy_bits(no, n_no);
  double gain = h_parent -
                (static_cast<double>(n_yes) / static_cast<double>(n)) * h_yes -
                (static_cast<double>(n_no) / static_cast<double>(n)) * h_no;
  return gain > 0.0 ? gain : 0.0;
}

double info_gain(const std::map<std::string, long long>& parent,
                 const std::map<std::string, long long>& yes,
                 const std::map<std::string, long long>& no) {
  std::set<std::string> keys;
  for (const auto& kv : parent) keys.insert(kv.first);
  for (const auto& kv : yes) keys.insert(kv.first);
  for (const auto& kv : no) keys.insert(kv.first);
  auto at = [](const std::map<std::string, long long>& m, const std::string& k) {
    auto it = m.find(k);
    return it == m.end() ? 0ll : it->second;
  };
  std::vector<long long> y, nn;
  for (const auto& k : keys) {
    long long py = at(yes, k), pn = at(no, k);
    if (py + pn != at(parent, k))
      throw DataError("info gain: children do not partition the parent for '" +
                      k + "'");
    y.push_back(py);
    nn.push_back(pn);
  }
  return info_gain_counts(y, nn);
}

std::size_t ContextTree::test_node_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes)
    if (node.test_pos > 0) ++n;
  return n;
}

int DTreeModel::tag_id(std::string_view name) const {
  if (name == kBoundaryTag) return boundary_id();
  auto it = std::lower_bound(tag_names.begin(), tag_names.end(), name);
  if (it == tag_names.end() || *it != name) return -1;
  return static_cast<int>(it - tag_names.begin());
}

const std::vector<std::string>& default_open_class_tags() {
  static const std::vector<std::string> tags = {
      "ADJA", "ADJD", "ADV",   "CARD",  "CARDNUM", "FM",   "NE",
      "NN",   "VVFIN", "VVIMP", "VVINF", "VVIZU",   "VVPP", "XY"};
  return tags;
}

// ---------------------------------------------------------------------------
// Training

namespace {

struct CtxBuildNode {
  std::vector<long long> counts;
  int test_pos = 0;  // 1-based context position; 0 = leaf
  int test_tag = -1;
  double split_gain = 0.0;
  std::unique_ptr<CtxBuildNode> yes, no;
};

struct CtxTrainer {
  int clen;
  int n_tags;      // real tags
  int n_ctx_tags;  // real tags + boundary
  // flattened samples: clen context slots then the current tag
  std::vector<int> data;
  int stride() const { return clen + 1; }
  int ctx(std::size_t sample, int pos) const {
    return data[sample * stride() + pos - 1];
  }
  int cur(std::size_t sample) const { return data[sample * stride() + clen]; }

  std::unique_ptr<CtxBuildNode> build(std::vector<std::size_t>& idx) {
    auto node = std::make_unique<CtxBuildNode>();
    node->counts.assign(n_tags, 0);
    for (std::size_t s : idx) ++node->counts[cur(s)];
    long long total = static_cast<long long>(idx.size());
    if (entropy_bits(node->counts, total) <= 0.0) return node;

    double best_gain = 0.0;
    int best_pos = -1, best_tag = -1;
    std::vector<long long> joint(static_cast<std::size_t>(n_ctx_tags) * n_tags);
    std::vector<long long> row_sums(n_ctx_tags);
    std::vector<long long> yes_counts(n_tags), no_counts(n_tags);
    for (int pos = 1; pos <= clen; ++pos) {
      std::fill(joint.begin(), joint.end(), 0);
      std::fill(row_sums.begin(), row_sums.end(), 0);
      for (std::size_t s : idx) {
        int a = ctx(s, pos);
        ++joint[static_cast<std::size_t>(a) * n_tags + cur(s)];
        ++row_sums[a];
      }
      for (int a = 0; a < n_ctx_tags; ++a) {
        if (row_sums[a] == 0 || row_sums[a] == total) continue;
        for (int t = 0; t < n_tags; ++t) {
          long long y = joint[static_cast<std::size_t>(a) * n_tags + t];
          yes_counts[t] = y;
          no_counts[t] = node->counts[t] - y;
        }
        double gain = info_gain_counts(yes_counts, no_counts);
        if (gain > best_gain && gain > kMinSplitGain) {
          best_gain = gain;
          best_pos = pos;
          best_tag = a;
        }
      }
    }
    if (best_pos < 0) return node;

    std::vector<std::size_t> yes_idx, no_idx;
    yes_idx.reserve(idx.size());
    no_idx.reserve(idx.size());
    for (std::size_t s : idx)
      (ctx(s, best_pos) == best_tag ? yes_idx : no_idx).push_back(s);
    idx.clear();
    idx.shrink_to_fit();

    node->test_pos = best_pos;
    node->test_tag = best_tag;
    node->split_gain = best_gain;
    node->yes = build(yes_idx);
    node->no = build(no_idx);
    return node;
  }
};

// Deletes test nodes whose (leaf) children fail the gain threshold;
// post-order, so collapses cascade toward the root in a single pass.
void prune_context(CtxBuildNode* node, double min_gain) {
  if (node->test_pos == 0) return;
  prune_context(node->yes.get(), min_gain);
  prune_context(node->no.get(), min_gain);
  if (node->yes->test_pos == 0 && node->no->test_pos == 0 &&
      node->split_gain < min_gain) {
    node->test_pos = 0;
    node->test_tag = -1;
    node->split_gain = 0.0;
    node->yes.reset();
    node->no.reset();
  }
}

int flatten_context(const CtxBuildNode* node, ContextTree* tree) {
  int index = static_cast<int>(tree->nodes.size());
  tree->nodes.emplace_back();
  {
    ContextTree::Node& out = tree->nodes.back();
    out.test_pos = node->test_pos;
    out.test_tag = node->test_tag;
    out.split_gain = node->split_gain;
    out.counts = node->counts;
  }
  if (node->test_pos > 0) {
    int yes = flatten_context(node->yes.get(), tree);
    int no = flatten_context(node->no.get(), tree);
    tree->nodes[index].yes = yes;
    tree->nodes[index].no = no;
  }
  return index;
}

struct AffixBuildNode {
  std::map<int, long long> counts;
  long long total = 0;
  std::map<std::string, std::unique_ptr<AffixBuildNode>> children;
};

void prune_affix(AffixBuildNode* node, double affix_gain, int n_tags) {
  for (auto& [ch, child] : node->children)
    prune_affix(child.get(), affix_gain, n_tags);
  for (auto it = node->children.begin(); it != node->children.end();) {
    AffixBuildNode* child = it->second.get();
    if (!child->children.empty()) {
      ++it;
      continue;
    }
    std::vector<long long> yes(n_tags, 0), no(n_tags, 0);
    for (const auto& [t, c] : node->counts) no[t] = c;
    for (const auto& [t, c] : child->counts) {
      yes[t] = c;
      no[t] -= c;
    }
    if (info_gain_counts(yes, no) < affix_gain)
      it = node->children.erase(it);
    else
      ++it;
  }
}

int flatten_affix(const AffixBuildNode* node, const std::string& ch, int parent,
                  AffixTree* tree) {
  int index = static_cast<int>(tree->nodes.size());
  tree->nodes.emplace_back();
  {
    AffixTree::Node& out = tree->nodes.back();
    out.ch = ch;
    out.parent = parent;
    out.total = node->total;
    for (const auto& [t, c] : node->counts) out.counts.emplace_back(t, c);
  }
  std::vector<int> children;
  for (const auto& [child_ch, child] : node->children)
    children.push_back(flatten_affix(child.get(), child_ch, index, tree));
  tree->nodes[index].children = std::move(children);
  return index;
}

}  // namespace

DTreeModel dtree_train(const Corpus& train, const Lexicon& lex,
                       const DTreeParams& params, const Tagset& tagset) {
  if (train.token_count() == 0)
    throw DataError("cannot train on an empty corpus");
  if (params.context_length < 1)
    throw UsageError("context length must be at least 1");
  if (params.min_gain < 0 || params.affix_gain < 0)
    throw UsageError("gain thresholds must be non-negative");
  if (params.eq_class_weight < 0 || params.eq_class_weight > 1)
    throw UsageError("equivalence class weight must be within [0,1]");
  if (tagset.contains(kBoundaryTag))
    throw ValidationError("tagset must not contain the boundary tag");

  DTreeModel m;
  m.params = params;
  m.tag_names = tagset.tags();
  std::sort(m.tag_names.begin(), m.tag_names.end());
  m.lexicon = lex;
  m.priors = tag_priors(train);

  for (const auto& sentence : train.sentences)
    for (const auto& token : sentence.tokens)
      if (m.tag_id(token.tag) < 0 || token.tag == kBoundaryTag)
        throw ValidationError("training tag not in tagset: '" + token.tag + "'");
  for (const auto& [form, entry] : lex)
    for (const auto& tc : entry.tags)
      if (m.tag_id(tc.tag) < 0 || tc.tag == kBoundaryTag)
        throw ValidationError("lexicon tag not in tagset: '" + tc.tag + "'");

  const int n_tags = static_cast<int>(m.tag_names.size());
  const int boundary = m.boundary_id();

  // Ambiguity class distributions over tokens whose form the lexicon knows.
  for (const auto& sentence : train.sentences)
    for (const auto& token : sentence.tokens) {
      const LexiconEntry* entry = lex.find(token.form);
      if (!entry) continue;
      std::vector<int> key;
      key.reserve(entry->tags.size());
      for (const auto& tc : entry->tags) key.push_back(m.tag_id(tc.tag));
      std::sort(key.begin(), key.end());
      auto [it, inserted] = m.class_counts.try_emplace(
          std::move(key), std::vector<long long>(n_tags, 0));
      ++it->second[m.tag_id(token.tag)];
    }

  // Context tree over preceding-tag samples, boundary-padded per sentence.
  CtxTrainer trainer;
  trainer.clen = params.context_length;
  trainer.n_tags = n_tags;
  trainer.n_ctx_tags = n_tags + 1;
  for (const auto& sentence : train.sentences) {
    std::vector<int> context(params.context_length, boundary);
    for (const auto& token : sentence.tokens) {
      // slot p-1 holds the tag at relative position -p
      for (int p = 0; p < params.context_length; ++p)
        trainer.data.push_back(context[p]);
      int cur = m.tag_id(token.tag);
      trainer.data.push_back(cur);
      for (int p = params.context_length - 1; p > 0; --p)
        context[p] = context[p - 1];
      context[0] = cur;
    }
  }
  std::vector<std::size_t> idx(trainer.data.size() / trainer.stride());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::unique_ptr<CtxBuildNode> root = trainer.build(idx);
  prune_context(root.get(), params.min_gain);
  flatten_context(root.get(), &m.context_tree);

  // Affix tree over reversed endings of open-class tokens.
  std::set<std::string> open_class(default_open_class_tags().begin(),
                                   default_open_class_tags().end());
  AffixBuildNode affix_root;
  for (const auto& sentence : train.sentences)
    for (const auto& token : sentence.tokens) {
      if (open_class.find(token.tag) == open_class.end()) continue;
      int tid = m.tag_id(token.tag);
      AffixBuildNode* node = &affix_root;
      ++node->counts[tid];
      ++node->total;
      std::vector<std::string> chars = utf8_chars(token.form);
      int depth = 0;
      for (auto it = chars.rbegin(); it != chars.rend() && depth < kMaxAffixDepth;
           ++it, ++depth) {
        auto [child_it, inserted] = node->children.try_emplace(*it, nullptr);
        if (inserted) child_it->second = std::make_unique<AffixBuildNode>();
        node = child_it->second.get();
        ++node->counts[tid];
        ++node->total;
      }
    }
  prune_affix(&affix_root, params.affix_gain, n_tags);
  flatten_affix(&affix_root, "", -1, &m.affix_tree);
  return m;
}

// ---------------------------------------------------------------------------
// Lookups

namespace {

// Walks the context tree; context[p-1] holds the tag id at position -p.
const ContextTree::Node& context_leaf(const DTreeModel& m,
                                      const std::vector<int>& context) {
  const ContextTree& tree = m.context_tree;
  if (tree.empty()) throw DataError("decision tree model is untrained");
  int index = 0;
  while (tree.nodes[index].test_pos > 0) {
    const auto& node = tree.nodes[index];
    index = context[node.test_pos - 1] == node.test_tag ? node.yes : node.no;
  }
  return tree.nodes[index];
}

double leaf_prob(const DTreeModel& m, const ContextTree::Node& leaf, int tid) {
  long long total = 0;
  for (long long c : leaf.counts) total += c;
  double t_count = static_cast<double>(m.tag_names.size());
  return (static_cast<double>(leaf.counts[tid]) + kLeafSmoothing) /
         (static_cast<double>(total) + kLeafSmoothing * t_count);
}

// Deepest affix node matching the reversed ending of `form`.
const AffixTree::Node* affix_node(const DTreeModel& m, std::string_view form) {
  if (m.affix_tree.empty()) return nullptr;
  const AffixTree& tree = m.affix_tree;
  int index = 0;
  std::vector<std::string> chars = utf8_chars(form);
  for (auto it = chars.rbegin(); it != chars.rend(); ++it) {
    int next = -1;
    for (int child : tree.nodes[index].children)
      if (tree.nodes[child].ch == *it) {
        next = child;
        break;
      }
    if (next < 0) break;
    index = next;
  }
  return &tree.nodes[index];
}

double prior_of_id(const DTreeModel& m, int tid) {
  return m.priors.prob(m.tag_names[tid]);
}

// P(tag | form) for forms the lexicon knows, as id-level pieces.
double smoothed_conditional_id(const DTreeModel& m, const LexiconEntry& entry,
                               int tid) {
  long long total = 0;
  for (const auto& tc : entry.tags) total += tc.count;

  auto lexical = [&](int want) -> double {
    if (entry.origin == EntryOrigin::kExternal || total == 0) {
      // External entries carry no counts; fall back to prior proportions
      // over the entry's tags (uniform when the priors are silent).
      double denom = 0.0;
      for (const auto& tc : entry.tags) denom += m.priors.prob(tc.tag);
      for (const auto& tc : entry.tags) {
        if (m.tag_id(tc.tag) != want) continue;
        if (denom > 0.0) return m.priors.prob(tc.tag) / denom;
        return 1.0 / static_cast<double>(entry.tags.size());
      }
      return 0.0;
    }
    for (const auto& tc : entry.tags)
      if (m.tag_id(tc.tag) == want)
        return static_cast<double>(tc.count) / static_cast<double>(total);
    return 0.0;
  };

  std::vector<int> key;
  key.reserve(entry.tags.size());
  for (const auto& tc : entry.tags) key.push_back(m.tag_id(tc.tag));
  std::sort(key.begin(), key.end());
  auto it = m.class_counts.find(key);

  double p_lex = lexical(tid);
  double p_class;
  if (it != m.class_counts.end()) {
    long long class_total = 0;
    for (long long c : it->second) class_total += c;
    p_class = class_total > 0 ? static_cast<double>(it->second[tid]) /
                                    static_cast<double>(class_total)
                              : p_lex;
  } else {
    p_class = p_lex;  // class never observed in training
  }
  double w = m.params.eq_class_weight;
  return (1.0 - w) * p_lex + w * p_class;
}

std::vector<double> affix_distribution(const DTreeModel& m,
                                       std::string_view form) {
  const int n_tags = static_cast<int>(m.tag_names.size());
  std::vector<double> dist(n_tags, 0.0);
  const AffixTree::Node* node = affix_node(m, form);
  if (node != nullptr && node->total > 0) {
    for (const auto& [t, c] : node->counts)
      dist[t] = static_cast<double>(c) / static_cast<double>(node->total);
    return dist;
  }
  // No affix evidence at all: uniform over tags the priors know.
  int positive = 0;
  for (int t = 0; t < n_tags; ++t)
    if (prior_of_id(m, t) > 0.0) ++positive;
  if (positive == 0) throw DataError("model has no tag priors");
  for (int t = 0; t < n_tags; ++t)
    if (prior_of_id(m, t) > 0.0) dist[t] = 1.0 / positive;
  return dist;
}

struct TokenScores {
  std::vector<int> cands;        // ascending tag ids (= tag name order)
  std::vector<double> log_emit;  // parallel to cands
};

// Candidates with a normalizable positive emission weight.
TokenScores token_scores(const DTreeModel& m, const std::string& form) {
  TokenScores out;
  const LexiconEntry* entry = m.lexicon.find(form);
  if (entry) {
    std::vector<int> ids;
    for (const auto& tc : entry->tags) ids.push_back(m.tag_id(tc.tag));
    std::sort(ids.begin(), ids.end());
    for (int tid : ids) {
      double prior = prior_of_id(m, tid);
      if (prior <= 0.0) continue;  // tag unseen in training: not decodable
      double p = smoothed_conditional_id(m, *entry, tid);
      if (p <= 0.0) continue;
      out.cands.push_back(tid);
      out.log_emit.push_back(std::log(p / prior));
    }
    if (out.cands.empty())
      throw DataError("no decodable tag for known form '" + form + "'");
    return out;
  }
  std::vector<double> dist = affix_distribution(m, form);
  for (int t = 0; t < static_cast<int>(dist.size()); ++t) {
    if (dist[t] <= 0.0) continue;
    double prior = prior_of_id(m, t);
    if (prior <= 0.0) continue;
    out.cands.push_back(t);
    out.log_emit.push_back(std::log(dist[t] / prior));
  }
  if (out.cands.empty())
    throw DataError("no decodable tag for unknown form '" + form + "'");
  return out;
}

}  // namespace

std::vector<double> affix_lookup(const DTreeModel& m, std::string_view form) {
  return affix_distribution(m, form);
}

double smoothed_conditional(const DTreeModel& m, std::string_view form,
                            std::string_view tag) {
  const LexiconEntry* entry = m.lexicon.find(form);
  if (!entry)
    throw DataError("smoothed conditional is undefined for unknown form '" +
                    std::string(form) + "'");
  int tid = m.tag_id(tag);
  if (tid < 0 || tid == m.boundary_id())
    throw ValidationError("tag not in model tagset: '" + std::string(tag) + "'");
  return smoothed_conditional_id(m, *entry, tid);
}

double emission_weight(const DTreeModel& m, std::string_view form,
                       std::string_view tag) {
  int tid = m.tag_id(tag);
  if (tid < 0 || tid == m.boundary_id())
    throw ValidationError("tag not in model tagset: '" + std::string(tag) + "'");
  const LexiconEntry* entry = m.lexicon.find(form);
  double p;
  if (entry) {
    bool in_entry = false;
    for (const auto& tc : entry->tags)
      if (tc.tag == tag) in_entry = true;
    if (!in_entry) return 0.0;  // known forms only emit their lexicon tags
    p = smoothed_conditional_id(m, *entry, tid);
  } else {
    p = affix_distribution(m, form)[tid];
  }
  if (p == 0.0) return 0.0;
  double prior = prior_of_id(m, tid);
  if (prior <= 0.0)
    throw DataError("cannot normalize by zero prior for tag '" +
                    std::string(tag) + "'");
  return p / prior;
}

std::vector<std::string> candidate_tags(const DTreeModel& m,
                                        std::string_view form) {
  TokenScores scores = token_scores(m, std::string(form));
  std::vector<std::string> out;
  out.reserve(scores.cands.size());
  for (int tid : scores.cands) out.push_back(m.tag_names[tid]);
  return out;
}

double transition_log(const DTreeModel& m, std::string_view prev2,
                      std::string_view prev1, std::string_view cur) {
  if (m.params.context_length != 2)
    throw UsageError("transition_log expects a context length of 2");
  int p1 = m.tag_id(prev1), p2 = m.tag_id(prev2), c = m.tag_id(cur);
  if (p1 < 0 || p2 < 0 || c < 0 || c == m.boundary_id())
    throw ValidationError("transition over tags outside the model tagset");
  std::vector<int> context{p1, p2};
  return std::log(leaf_prob(m, context_leaf(m, context), c));
}

double emission_log(const DTreeModel& m, std::string_view form,
                    std::string_view tag) {
  double w = emission_weight(m, form, tag);
  return w > 0.0 ? std::log(w) : -std::numeric_limits<double>::infinity();
}

Sentence viterbi_tag_sentence(const RawSentence& forms, const DTreeModel& m) {
  const int n = static_cast<int>(forms.size());
  Sentence out;
  if (n == 0) return out;
  const int clen = m.params.context_length;
  const int boundary = m.boundary_id();

  std::vector<TokenScores> tokens;
  tokens.reserve(forms.size());
  for (const auto& form : forms) tokens.push_back(token_scores(m, form));

  // Candidate ids for any (possibly negative) position; boundary otherwise.
  auto cands_at = [&](int pos) -> std::vector<int> {
    if (pos < 0) return {boundary};
    return tokens[pos].cands;
  };

  // A decoding state fixes the tags of positions i-clen+1 .. i. States are
  // enumerated as the mixed-radix product of the candidate lists, so state
  // order is lexicographic in tag-name order and ties resolve to the
  // name-smallest predecessor.
  struct Layer {
    std::vector<double> score;
    std::vector<int> back;
    std::vector<int> dims;   // candidate list sizes, oldest position first
    std::vector<std::vector<int>> cands;
  };
  std::vector<Layer> layers(n);

  std::vector<int> context(clen);
  for (int i = 0; i < n; ++i) {
    Layer& layer = layers[i];
    layer.cands.resize(clen);
    layer.dims.resize(clen);
    for (int j = 0; j < clen; ++j) {
      layer.cands[j] = cands_at(i - clen + 1 + j);
      layer.dims[j] = static_cast<int>(layer.cands[j].size());
    }
    long long n_states = 1;
    for (int d : layer.dims) n_states *= d;
    layer.score.assign(n_states, -std::numeric_limits<double>::infinity());
    layer.back.assign(n_states, -1);

    std::vector<int> digits(clen, 0);
    for (long long s = 0; s < n_states; ++s) {
      // digits -> tag ids of positions i-clen+1 .. i
      int cur_tid = layer.cands[clen - 1][digits[clen - 1]];
      double emit = tokens[i].log_emit[digits[clen - 1]];

      const std::vector<int>& ext = cands_at(i - clen);
      double best = -std::numeric_limits<double>::infinity();
      int best_back = -1;
      for (std::size_t e = 0; e < ext.size(); ++e) {
        // context slot p-1 = tag at position i-p
        context[clen - 1] = ext[e];
        for (int j = 0; j < clen - 1; ++j)
          context[clen - 2 - j] = layer.cands[j][digits[j]];
        double trans = std::log(leaf_prob(m, context_leaf(m, context), cur_tid));
        double score;
        int back;
        if (i == 0) {
          score = trans;
          back = 0;
        } else {
          const Layer& prev = layers[i - 1];
          long long prev_index = static_cast<long long>(e);
          for (int j = 0; j < clen - 1; ++j)
            prev_index = prev_index * prev.dims[j + 1] + digits[j];
          if (prev.score[prev_index] ==
              -std::numeric_limits<double>::infinity())
            continue;
          score = prev.score[prev_index] + trans;
          back = static_cast<int>(prev_index);
        }
        if (score > best) {
          best = score;
          best_back = back;
        }
      }
      layer.score[s] = best + emit;
      layer.back[s] = best_back;

      for (int j = clen - 1; j >= 0; --j) {
        if (++digits[j] < layer.dims[j]) break;
        digits[j] = 0;
      }
    }
  }

  // Name-smallest final state among the maxima, then unwind.
  const Layer& last = layers[n - 1];
  long long best_state = 0;
  for (long long s = 1; s < static_cast<long long>(last.score.size()); ++s)
    if (last.score[s] > last.score[best_state]) best_state = s;

  std::vector<int> chosen(n);
  long long state = best_state;
  for (int i = n - 1; i >= 0; --i) {
    const Layer& layer = layers[i];
    long long rem = state;
    std::vector<int> digits(clen);
    for (int j = clen - 1; j >= 0; --j) {
      digits[j] = static_cast<int>(rem % layer.dims[j]);
      rem /= layer.dims[j];
    }
    chosen[i] = layer.cands[clen - 1][digits[clen - 1]];
    state = layer.back[static_cast<std::size_t>(state)];
  }
  out.tokens.reserve(forms.size());
  for (int i = 0; i < n; ++i)
    out.tokens.push_back({forms[i], m.tag_names[chosen[i]]});
  return out;
}

Corpus dtree_tag(const RawCorpus& raw, const DTreeModel& m, int jobs) {
  Corpus out;
  out.sentences.resize(raw.size());
  if (jobs <= 1 || raw.size() < 2) {
    for (std::size_t i = 0; i < raw.size(); ++i)
      out.sentences[i] = viterbi_tag_sentence(raw[i], m);
    return out;
  }
  const int workers = std::min<int>(jobs, static_cast<int>(raw.size()));
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (std::size_t i = w; i < raw.size(); i += workers)
        out.sentences[i] = viterbi_tag_sentence(raw[i], m);
    });
  }
  for (auto& t : threads) t.join();
  return out;
}

// ---------------------------------------------------------------------------
// Model file

namespace {

std::string hex_encode(std::string_view s) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (unsigned char b : s) {
    out += digits[b >> 4];
    out += digits[b & 0xF];
  }
  return out;
}

std::string hex_decode(const std::string& s, long lineno) {
  if (s.size() % 2 != 0) throw ParseError("odd-length hex label", lineno);
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw ParseError("invalid hex digit in label", lineno);
  };
  std::string out;
  for (std::size_t i = 0; i < s.size(); i += 2)
    out += static_cast<char>((nibble(s[i]) << 4) | nibble(s[i + 1]));
  return out;
}

void write_context_node(const ContextTree& tree, int index,
                        const std::vector<std::string>& tag_names,
                        std::ostream& out) {
  const auto& node = tree.nodes[index];
  if (node.test_pos > 0) {
    std::string_view name =
        node.test_tag == static_cast<int>(tag_names.size())
            ? kBoundaryTag
            : std::string_view(tag_names[node.test_tag]);
    out << "t " << node.test_pos << ' ' << name << '\n';
    write_context_node(tree, node.yes, tag_names, out);
    write_context_node(tree, node.no, tag_names, out);
  } else {
    out << 'l';
    for (std::size_t t = 0; t < node.counts.size(); ++t)
      if (node.counts[t] > 0) out << ' ' << tag_names[t] << ' ' << node.counts[t];
    out << '\n';
  }
}

void write_affix_node(const AffixTree& tree, int index,
                      const std::vector<std::string>& tag_names,
                      std::ostream& out) {
  const auto& node = tree.nodes[index];
  out << 'a' << ' ' << (node.ch.empty() ? std::string("-") : hex_encode(node.ch))
      << ' ' << node.children.size();
  for (const auto& [t, c] : node.counts) out << ' ' << tag_names[t] << ' ' << c;
  out << '\n';
  for (int child : node.children) write_affix_node(tree, child, tag_names, out);
}

struct LineReader {
  std::istream& in;
  long lineno = 0;
  std::string next() {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("unexpected end of model file", lineno);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }
};

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string f;
  while (in >> f) out.push_back(f);
  return out;
}

int read_context_node(LineReader& reader, DTreeModel& m, ContextTree* tree,
                      int depth) {
  if (depth > 4096) throw ParseError("context tree too deep", reader.lineno);
  std::string line = reader.next();
  std::vector<std::string> fields = fields_of(line);
  if (fields.empty()) throw ParseError("empty context tree line", reader.lineno);
  int index = static_cast<int>(tree->nodes.size());
  tree->nodes.emplace_back();
  if (fields[0] == "t") {
    if (fields.size() != 3)
      throw ParseError("malformed context test node", reader.lineno);
    int pos = std::atoi(fields[1].c_str());
    if (pos < 1 || pos > m.params.context_length)
      throw ParseError("context test position out of range", reader.lineno);
    int tid = m.tag_id(fields[2]);
    if (tid < 0)
      throw ParseError("unknown tag in context test: '" + fields[2] + "'",
                       reader.lineno);
    tree->nodes[index].test_pos = pos;
    tree->nodes[index].test_tag = tid;
    int yes = read_context_node(reader, m, tree, depth + 1);
    int no = read_context_node(reader, m, tree, depth + 1);
    tree->nodes[index].yes = yes;
    tree->nodes[index].no = no;
    // restore aggregate counts and the recorded split gain
    auto& node = tree->nodes[index];
    node.counts.assign(m.tag_names.size(), 0);
    for (std::size_t t = 0; t < node.counts.size(); ++t)
      node.counts[t] = tree->nodes[yes].counts[t] + tree->nodes[no].counts[t];
    node.split_gain =
        info_gain_counts(tree->nodes[yes].counts, tree->nodes[no].counts);
  } else if (fields[0] == "l") {
    if (fields.size() % 2 != 1)
      throw ParseError("malformed context leaf", reader.lineno);
    auto& node = tree->nodes[index];
    node.counts.assign(m.tag_names.size(), 0);
    for (std::size_t f = 1; f + 1 < fields.size(); f += 2) {
      int tid = m.tag_id(fields[f]);
      if (tid < 0 || tid == m.boundary_id())
        throw ParseError("unknown tag in leaf: '" + fields[f] + "'",
                         reader.lineno);
      long long c = std::strtoll(fields[f + 1].c_str(), nullptr, 10);
      if (c <= 0) throw ParseError("non-positive leaf count", reader.lineno);
      node.counts[tid] = c;
    }
  } else {
    throw ParseError("expected context tree node, got '" + fields[0] + "'",
                     reader.lineno);
  }
  return index;
}

int read_affix_node(LineReader& reader, DTreeModel& m, AffixTree* tree,
                    int parent, int depth) {
  if (depth > kMaxAffixDepth + 1)
    throw ParseError("affix tree too deep", reader.lineno);
  std::string line = reader.next();
  std::vector<std::string> fields = fields_of(line);
  if (fields.size() < 3 || fields[0] != "a" || fields.size() % 2 != 1)
    throw ParseError("malformed affix node", reader.lineno);
  int index = static_cast<int>(tree->nodes.size());
  tree->nodes.emplace_back();
  {
    auto& node = tree->nodes[index];
    node.ch = fields[1] == "-" ? std::string() : hex_decode(fields[1], reader.lineno);
    node.parent = parent;
    for (std::size_t f = 3; f < fields.size(); f += 2) {
      int tid = m.tag_id(fields[f]);
      if (tid < 0 || tid == m.boundary_id())
        throw ParseError("unknown tag in affix node: '" + fields[f] + "'",
                         reader.lineno);
      long long c = std::strtoll(fields[f + 1].c_str(), nullptr, 10);
      if (c <= 0) throw ParseError("non-positive affix count", reader.lineno);
      node.counts.emplace_back(tid, c);
      node.total += c;
    }
    std::sort(node.counts.begin(), node.counts.end());
  }
  int n_children = std::atoi(fields[2].c_str());
  if (n_children < 0) throw ParseError("negative child count", reader.lineno);
  std::vector<int> children;
  for (int k = 0; k < n_children; ++k)
    children.push_back(read_affix_node(reader, m, tree, index, depth + 1));
  tree->nodes[index].children = std::move(children);
  return index;
}

}  // namespace

void write_dtree_model(const DTreeModel& m, std::ostream& out) {
  out << "tagkit-dtree 1\n";
  out << "params " << m.params.context_length << ' '
      << format_double(m.params.min_gain) << ' '
      << format_double(m.params.eq_class_weight) << ' '
      << format_double(m.params.affix_gain) << '\n';
  out << "tags " << m.tag_names.size() << '\n';
  for (const auto& t : m.tag_names) out << t << '\n';
  out << "priors " << m.priors.p.size() << '\n';
  for (const auto& [tag, v] : m.priors.p)
    out << tag << '\t' << format_double(v) << '\n';
  out << "classes " << m.class_counts.size() << '\n';
  for (const auto& [key, counts] : m.class_counts) {
    out << 'c' << ' ' << key.size();
    for (int tid : key) out << ' ' << m.tag_names[tid];
    long long pairs = 0;
    for (long long c : counts)
      if (c > 0) ++pairs;
    out << ' ' << pairs;
    for (std::size_t t = 0; t < counts.size(); ++t)
      if (counts[t] > 0) out << ' ' << m.tag_names[t] << ' ' << counts[t];
    out << '\n';
  }
  std::ostringstream lexbuf;
  m.lexicon.write(lexbuf);
  std::string lexdata = lexbuf.str();
  out << "lexicon " << m.lexicon.size() << '\n' << lexdata;
  out << "context-tree " << m.context_tree.nodes.size() << '\n';
  if (!m.context_tree.empty())
    write_context_node(m.context_tree, 0, m.tag_names, out);
  out << "affix-tree " << m.affix_tree.nodes.size() << '\n';
  if (!m.affix_tree.empty()) write_affix_node(m.affix_tree, 0, m.tag_names, out);
  out << "end\n";
}

void save_dtree_model(const DTreeModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file: " + path);
  write_dtree_model(m, out);
}

DTreeModel read_dtree_model(std::istream& in) {
  LineReader reader{in};
  DTreeModel m;
  if (reader.next() != "tagkit-dtree 1")
    throw ParseError("not a tagkit decision tree model file", reader.lineno);
  {
    std::vector<std::string> fields = fields_of(reader.next());
    if (fields.size() != 5 || fields[0] != "params")
      throw ParseError("expected params line", reader.lineno);
    m.params.context_length = std::atoi(fields[1].c_str());
    m.params.min_gain = std::strtod(fields[2].c_str(), nullptr);
    m.params.eq_class_weight = std::strtod(fields[3].c_str(), nullptr);
    m.params.affix_gain = std::strtod(fields[4].c_str(), nullptr);
    if (m.params.context_length < 1)
      throw ParseError("invalid context length", reader.lineno);
  }
  {
    std::vector<std::string> fields = fields_of(reader.next());
    if (fields.size() != 2 || fields[0] != "tags")
      throw ParseError("expected tags section", reader.lineno);
    long n = std::atol(fields[1].c_str());
    for (long i = 0; i < n; ++i) m.tag_names.push_back(reader.next());
    if (!std::is_sorted(m.tag_names.begin(), m.tag_names.end()))
      throw ParseError("model tag list is not sorted", reader.lineno);
  }
  {
    std::vector<std::string> fields = fields_of(reader.next());
    if (fields.size() != 2 || fields[0] != "priors")
      throw ParseError("expected priors section", reader.lineno);
    long n = std::atol(fields[1].c_str());
    for (long i = 0; i < n; ++i) {
      std::string line = reader.next();
      std::size_t tab = line.find('\t');
      if (tab == std::string::npos)
        throw ParseError("expected tag<TAB>probability", reader.lineno);
      m.priors.p[line.substr(0, tab)] =
          std::strtod(line.c_str() + tab + 1, nullptr);
    }
  }
  {
    std::vector<std::string> fields = fields_of(reader.next());
    if (fields.size() != 2 || fields[0] != "classes")
      throw ParseError("expected classes section", reader.lineno);
    long n = std::atol(fields[1].c_str());
    for (long i = 0; i < n; ++i) {
      std::vector<std::string> cf = fields_of(reader.next());
      if (cf.size() < 3 || cf[0] != "c")
        throw ParseError("malformed class line", reader.lineno);
      std::size_t pos = 1;
      long k = std::atol(cf[pos++].c_str());
      std::vector<int> key;
      for (long j = 0; j < k; ++j) {
        int tid = m.tag_id(cf.at(pos++));
        if (tid < 0) throw ParseError("unknown tag in class key", reader.lineno);
        key.push_back(tid);
      }
      long pairs = std::atol(cf.at(pos++).c_str());
      std::vector<long long> counts(m.tag_names.size(), 0);
      for (long j = 0; j < pairs; ++j) {
        int tid = m.tag_id(cf.at(pos));
        if (tid < 0)
          throw ParseError("unknown tag in class counts", reader.lineno);
        counts[tid] = std::strtoll(cf.at(pos + 1).c_str(), nullptr, 10);
        pos += 2;
      }
      m.class_counts[std::move(key)] = std::move(counts);
    }
  }
  {
    std::vector<std::string> fields = fields_of(reader.next());
    if (fields.size() != 2 || fields[0] != "lexicon")
      throw ParseError("expected lexicon section", reader.lineno);
    long n = std::atol(fields[1].c_str());
    std::ostringstream buf;
    for (long i = 0; i < n; ++i) buf << reader.next() << '\n';
    std::istringstream lexin(buf.str());
    m.lexicon = Lexicon::read(lexin);
  }
  {
    std::vector<std::string> fields = fields_of(reader.next());
    if (fields.size() != 2 || fields[0] != "context-tree")
      throw ParseError("expected context-tree section", reader.lineno);
    long n = std::atol(fields[1].c_str());
    if (n > 0) {
      read_context_node(reader, m, &m.context_tree, 0);
      if (static_cast<long>(m.context_tree.nodes.size()) != n)
        throw ParseError("context tree node count mismatch", reader.lineno);
    }
  }
  {
    std::vector<std::string> fields = fields_of(reader.next());
    if (fields.size() != 2 || fields[0] != "affix-tree")
      throw ParseError("expected affix-tree section", reader.lineno);
    long n = std::atol(fields[1].c_str());
    if (n > 0) {
      read_affix_node(reader, m, &m.affix_tree, -1, 0);
      if (static_cast<long>(m.affix_tree.nodes.size()) != n)
        throw ParseError("affix tree node count mismatch", reader.lineno);
    }
  }
  if (reader.next() != "end")
    throw ParseError("missing end marker", reader.lineno);
  return m;
}

DTreeModel load_dtree_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file: " + path);
  return read_dtree_model(in);
}

}  // namespace tagkit
