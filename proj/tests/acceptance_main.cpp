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
//
// Acceptance suite. Runs one check per release criterion and prints one
// pass/fail line each. Usage: tagkit_acceptance <tagkit-binary> <data-dir>
// <scratch-dir>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "tagkit/combine.hpp"
#include "tagkit/corpus.hpp"
#include "tagkit/dtree.hpp"
#include "tagkit/error.hpp"
#include "tagkit/eval.hpp"
#include "tagkit/lexicon.hpp"
#include "tagkit/tbl.hpp"

namespace fs = std::filesystem;
using namespace tagkit;
using test_helpers::brute_force_best_path;
using test_helpers::random_toy_world;

namespace {

std::string g_tagkit_bin;
fs::path g_data_dir;
fs::path g_scratch;

int g_failures = 0;

void report(int criterion, const std::string& name, bool ok,
            const std::string& detail) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": "
            << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::map<std::string, double> read_tsv_numbers(const fs::path& path) {
  std::map<std::string, double> out;
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) continue;
    out[line.substr(0, tab)] = std::strtod(line.c_str() + tab + 1, nullptr);
  }
  return out;
}

// --------------------------------------------------------------------------
// 1. Viterbi decoding against exhaustive path enumeration.

void criterion_viterbi_oracle() {
  auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(20260810);
  int models = 0, decoded = 0, mismatches = 0;
  double worst_gap = 0.0;
  while (models < 1000) {
    auto world = random_toy_world(rng, 6, 8, 25, 6);
    if (world.corpus.token_count() == 0) continue;
    ++models;
    Tagset tagset = Tagset::from_tags(world.tags);
    Lexicon lex = Lexicon::build(world.corpus);
    DTreeModel m = dtree_train(world.corpus, lex, DTreeParams{}, tagset);

    std::uniform_int_distribution<int> word(
        0, static_cast<int>(world.vocab.size()) - 1);
    for (int len = 1; len <= 5; ++len) {
      for (int trial = 0; trial < 4; ++trial) {
        RawSentence forms;
        for (int i = 0; i < len; ++i)
          forms.push_back(world.vocab[word(rng)].first);
        Sentence via = viterbi_tag_sentence(forms, m);
        auto oracle = brute_force_best_path(forms, m);
        double via_score = 0.0;
        bool same = true;
        for (std::size_t i = 0; i < forms.size(); ++i) {
          same &= via.tokens[i].tag == oracle.tags[i];
          std::string prev1 =
              i >= 1 ? via.tokens[i - 1].tag : std::string(kBoundaryTag);
          std::string prev2 =
              i >= 2 ? via.tokens[i - 2].tag : std::string(kBoundaryTag);
          via_score += transition_log(m, prev2, prev1, via.tokens[i].tag);
          via_score += emission_log(m, forms[i], via.tokens[i].tag);
        }
        // the decoded path must attain the enumerated maximum; the exact
        // sequence is only pinned down when the maximum is unique
        double gap = std::abs(via_score - oracle.log_score);
        worst_gap = std::max(worst_gap, gap);
        if (gap > 1e-9 || (oracle.n_optimal == 1 && !same)) ++mismatches;
        ++decoded;
      }
    }
  }
  double secs = elapsed_seconds(start);
  std::ostringstream detail;
  detail << models << " models, " << decoded << " sentences, worst log gap "
         << worst_gap << ", " << secs << "s";
  report(1, "viterbi equals exhaustive enumeration",
         mismatches == 0 && secs < 60.0, detail.str());
}

// --------------------------------------------------------------------------
// 2. Information gain values and pruning behavior.

// Reference post-pruning: collapse test nodes whose children are leaves
// while their recomputed gain falls below the threshold.
struct SimpleTree {
  struct Node {
    bool leaf;
    int test_pos = 0, test_tag = -1;
    std::vector<long long> counts;
    int yes = -1, no = -1;
  };
  std::vector<Node> nodes;
};

int copy_context(const ContextTree& in, int index, SimpleTree* out) {
  int id = static_cast<int>(out->nodes.size());
  out->nodes.emplace_back();
  const auto& node = in.nodes[index];
  out->nodes[id].leaf = node.test_pos == 0;
  out->nodes[id].test_pos = node.test_pos;
  out->nodes[id].test_tag = node.test_tag;
  out->nodes[id].counts = node.counts;
  if (node.test_pos > 0) {
    int yes = copy_context(in, node.yes, out);
    int no = copy_context(in, node.no, out);
    out->nodes[id].yes = yes;
    out->nodes[id].no = no;
  }
  return id;
}

void reference_prune(SimpleTree* tree, int index, double min_gain) {
  auto& node = tree->nodes[index];
  if (node.leaf) return;
  reference_prune(tree, node.yes, min_gain);
  reference_prune(tree, node.no, min_gain);
  if (tree->nodes[node.yes].leaf && tree->nodes[node.no].leaf) {
    double gain = info_gain_counts(tree->nodes[node.yes].counts,
                                   tree->nodes[node.no].counts);
    if (gain < min_gain) {
      node.leaf = true;
      node.test_pos = 0;
      node.test_tag = -1;
      node.yes = node.no = -1;
    }
  }
}

bool trees_equal(const SimpleTree& a, int ia, const ContextTree& b, int ib) {
  const auto& na = a.nodes[ia];
  const auto& nb = b.nodes[ib];
  if (na.leaf != (nb.test_pos == 0)) return false;
  if (na.counts != nb.counts) return false;
  if (na.leaf) return true;
  if (na.test_pos != nb.test_pos || na.test_tag != nb.test_tag) return false;
  return trees_equal(a, na.yes, b, nb.yes) && trees_equal(a, na.no, b, nb.no);
}

// Reference affix pruning: sweep-delete leaves whose separation gain from
// the parent falls below the threshold, until nothing changes.
struct SimpleAffix {
  struct Node {
    std::string ch;
    std::vector<std::pair<int, long long>> counts;
    std::vector<int> children;
    int parent = -1;
    bool removed = false;
  };
  std::vector<Node> nodes;
};

void reference_prune_affix(SimpleAffix* tree, double threshold, int n_tags) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 1; i < tree->nodes.size(); ++i) {
      auto& node = tree->nodes[i];
      if (node.removed) continue;
      bool leaf = true;
      for (int child : node.children) leaf &= tree->nodes[child].removed;
      if (!leaf) continue;
      const auto& parent = tree->nodes[node.parent];
      std::vector<long long> yes(n_tags, 0), no(n_tags, 0);
      for (const auto& [t, c] : parent.counts) no[t] = c;
      for (const auto& [t, c] : node.counts) {
        yes[t] = c;
        no[t] -= c;
      }
      if (info_gain_counts(yes, no) < threshold) {
        node.removed = true;
        changed = true;
      }
    }
  }
}

bool affix_equal(const SimpleAffix& a, int ia, const AffixTree& b, int ib) {
  const auto& na = a.nodes[ia];
  const auto& nb = b.nodes[ib];
  if (na.ch != nb.ch || na.counts != nb.counts) return false;
  std::vector<int> live;
  for (int child : na.children)
    if (!a.nodes[child].removed) live.push_back(child);
  if (live.size() != nb.children.size()) return false;
  for (std::size_t k = 0; k < live.size(); ++k)
    if (!affix_equal(a, live[k], b, nb.children[k])) return false;
  return true;
}

void criterion_info_gain() {
  auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::ostringstream detail;

  std::map<std::string, long long> parent{{"NN", 5}, {"ART", 5}};
  double zero = info_gain(parent, {{"NN", 2}, {"ART", 2}}, {{"NN", 3}, {"ART", 3}});
  double one = info_gain(parent, {{"NN", 5}}, {{"ART", 5}});
  if (std::abs(zero) > 1e-12 || std::abs(one - 1.0) > 1e-12) {
    ok = false;
    detail << "hand values off: " << zero << ", " << one << "; ";
  }

  std::mt19937 rng(97);
  std::uniform_int_distribution<int> count(0, 25), tags(2, 8);
  int negative = 0;
  for (int round = 0; round < 10000; ++round) {
    int n = tags(rng);
    std::vector<long long> yes(n), no(n);
    long long total = 0;
    for (int t = 0; t < n; ++t) {
      yes[t] = count(rng);
      no[t] = count(rng);
      total += yes[t] + no[t];
    }
    if (total == 0) continue;
    if (info_gain_counts(yes, no) < 0.0) ++negative;
  }
  if (negative > 0) {
    ok = false;
    detail << negative << " negative gains; ";
  }

  // pruning with the paper thresholds removes exactly the nodes a
  // reference post-pruner removes from the unpruned trees
  int audited = 0;
  for (int round = 0; round < 10; ++round) {
    auto world = random_toy_world(rng, 6, 10, 50, 7);
    if (world.corpus.token_count() == 0) continue;
    Tagset tagset = Tagset::from_tags(world.tags);
    Lexicon lex = Lexicon::build(world.corpus);
    DTreeParams loose;
    loose.min_gain = 0.0;
    loose.affix_gain = 0.0;
    DTreeModel unpruned = dtree_train(world.corpus, lex, loose, tagset);
    DTreeModel pruned = dtree_train(world.corpus, lex, DTreeParams{}, tagset);

    SimpleTree ref;
    copy_context(unpruned.context_tree, 0, &ref);
    reference_prune(&ref, 0, 0.7);
    if (!trees_equal(ref, 0, pruned.context_tree, 0)) {
      ok = false;
      detail << "context pruning mismatch in round " << round << "; ";
    }
    // affix: sweep-to-fixpoint reference deletion reproduces the library
    SimpleAffix ref_affix;
    for (const auto& node : unpruned.affix_tree.nodes) {
      SimpleAffix::Node copy;
      copy.ch = node.ch;
      copy.counts = node.counts;
      copy.children = node.children;
      copy.parent = node.parent;
      ref_affix.nodes.push_back(std::move(copy));
    }
    reference_prune_affix(&ref_affix, 1.2, static_cast<int>(unpruned.tag_names.size()));
    if (!affix_equal(ref_affix, 0, pruned.affix_tree, 0)) {
      ok = false;
      detail << "affix pruning mismatch in round " << round << "; ";
    }
    ++audited;
  }
  double secs = elapsed_seconds(start);
  std::ostringstream tail;
  tail << audited << " trees audited, " << secs << "s";
  report(2, "information gain and threshold pruning", ok && secs < 60.0,
         detail.str() + tail.str());
}

// --------------------------------------------------------------------------
// 3. TBL learner properties on randomized toy corpora.

void criterion_tbl_properties() {
  auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(131);
  bool ok = true;
  std::ostringstream detail;
  int corpora = 0;
  long long rules_seen = 0;
  while (corpora < 100) {
    auto world = random_toy_world(rng, 5, 12, 40, 7);
    if (world.corpus.token_count() == 0) continue;
    ++corpora;
    TblParams params;  // paper defaults: thresholds 2 and 1
    params.bigram_restriction = 8;
    TblModel model = train_tbl(world.corpus, params);
    rules_seen += static_cast<long long>(model.lexical_rules.size() +
                                         model.contextual_rules.size());

    for (const auto& rule : model.lexical_rules)
      if (rule.score < params.lexical_threshold) {
        ok = false;
        detail << "lexical rule below threshold; ";
      }
    for (const auto& rule : model.contextual_rules)
      if (rule.score < params.contextual_threshold) {
        ok = false;
        detail << "contextual rule below threshold; ";
      }

    std::set<std::string> frequent(model.frequent_words.begin(),
                                   model.frequent_words.end());
    for (const auto& rule : model.contextual_rules) {
      bool word_template = rule.tmpl == CtxTemplate::kPrevWord ||
                           rule.tmpl == CtxTemplate::kNextWord ||
                           rule.tmpl == CtxTemplate::kWordAndPrevTag ||
                           rule.tmpl == CtxTemplate::kWordAndNextTag;
      if (word_template && frequent.count(rule.trigger1) == 0) {
        ok = false;
        detail << "word rule outside the frequent list; ";
      }
    }

    RawCorpus forms = to_forms(world.corpus);
    Corpus initial = initial_tag(forms, model.lexicon);
    Corpus full = tbl_tag(forms, model);
    long long init_correct = 0, full_correct = 0;
    for (std::size_t s = 0; s < world.corpus.sentences.size(); ++s)
      for (std::size_t i = 0; i < world.corpus.sentences[s].tokens.size(); ++i) {
        const std::string& gold = world.corpus.sentences[s].tokens[i].tag;
        init_correct += initial.sentences[s].tokens[i].tag == gold;
        full_correct += full.sentences[s].tokens[i].tag == gold;
      }
    if (full_correct < init_correct) {
      ok = false;
      detail << "rule application lost training accuracy; ";
    }
  }
  double secs = elapsed_seconds(start);
  std::ostringstream tail;
  tail << corpora << " corpora, " << rules_seen << " rules, " << secs << "s";
  report(3, "TBL learner scores, monotonicity and word restriction",
         ok && secs < 300.0, detail.str() + tail.str());
}

// --------------------------------------------------------------------------
// 4. Evaluation accounting identities on random triples.

void criterion_eval_accounting() {
  auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(151);
  bool ok = true;
  std::ostringstream detail;
  int triples = 0;
  while (triples < 1000) {
    auto world = random_toy_world(rng, 6, 9, 10, 6);
    if (world.corpus.token_count() == 0) continue;
    ++triples;
    Lexicon lex = Lexicon::build(world.corpus);

    Corpus gold, pred;
    std::uniform_int_distribution<int> word(
        0, static_cast<int>(world.vocab.size()) - 1);
    std::uniform_int_distribution<int> tag(
        0, static_cast<int>(world.tags.size()) - 1);
    std::uniform_int_distribution<int> len(1, 7), nsent(1, 6), coin(0, 99);
    int sentences = nsent(rng);
    for (int s = 0; s < sentences; ++s) {
      Sentence gs, ps;
      int n = len(rng);
      for (int i = 0; i < n; ++i) {
        std::string form, gold_tag;
        if (coin(rng) < 25) {
          form = "gap" + std::to_string(coin(rng) % 9);
          gold_tag = world.tags[tag(rng)];
        } else {
          const auto& [f, allowed] = world.vocab[word(rng)];
          form = f;
          std::uniform_int_distribution<int> pick(
              0, static_cast<int>(allowed.size()) - 1);
          gold_tag = allowed[pick(rng)];
        }
        const LexiconEntry* entry = lex.find(form);
        std::string pred_tag;
        if (entry) {
          std::uniform_int_distribution<int> pick(
              0, static_cast<int>(entry->tags.size()) - 1);
          pred_tag = entry->tags[pick(rng)].tag;
        } else {
          pred_tag = world.tags[tag(rng)];
        }
        gs.tokens.push_back({form, gold_tag});
        ps.tokens.push_back({form, pred_tag});
      }
      gold.sentences.push_back(std::move(gs));
      pred.sentences.push_back(std::move(ps));
    }

    EvalReport r = evaluate(gold, pred, lex);
    for (const auto& row : r.rows) {
      if (row.correct + row.lexical_errors + row.disambiguation_errors !=
          row.tokens) {
        ok = false;
        detail << "row identity broken; ";
      }
      if (row.ambiguity_level <= 1 && row.disambiguation_errors != 0) {
        ok = false;
        detail << "disambiguation error without a choice; ";
      }
    }
    // lexical classification depends only on the gold tag and the entry
    long long recomputed_le = 0;
    for (std::size_t s = 0; s < gold.sentences.size(); ++s)
      for (std::size_t i = 0; i < gold.sentences[s].tokens.size(); ++i) {
        const auto& g = gold.sentences[s].tokens[i];
        const auto& p = pred.sentences[s].tokens[i];
        if (p.tag != g.tag && is_lexical_error(lex, g.form, g.tag))
          ++recomputed_le;
      }
    if (recomputed_le != r.totals.lexical_errors) {
      ok = false;
      detail << "lexical error recount mismatch; ";
    }

    std::istringstream table(render_table(r));
    std::string line;
    std::getline(table, line);
    while (std::getline(table, line)) {
      std::istringstream fields(line);
      std::string label, t_pct, c_pct, le_pct, de_pct;
      long long tokens, correct, le, de;
      fields >> label >> tokens >> t_pct >> correct >> c_pct >> le >> le_pct >>
          de >> de_pct;
      if (tokens == 0) continue;
      double sum = std::stod(c_pct) + std::stod(le_pct) + std::stod(de_pct);
      if (std::abs(sum - 100.0) > 0.011) {
        ok = false;
        detail << "rendered row sums to " << sum << "; ";
      }
    }
  }
  double secs = elapsed_seconds(start);
  std::ostringstream tail;
  tail << triples << " triples, " << secs << "s";
  report(4, "evaluation accounting identities", ok && secs < 60.0,
         detail.str() + tail.str());
}

// --------------------------------------------------------------------------
// 5. Export filter decision table.

void criterion_export_filter() {
  bool ok = true;
  std::ostringstream detail;
  using Morph = std::optional<std::vector<std::string>>;

  // the four quoted behaviors
  ExportDecision digits = export_filter("1906", "VVPP", Morph{{"NN"}});
  ok &= digits.tag == "CARDNUM" && digits.reason == ExportReason::kDigitPattern;
  ExportDecision permits = export_filter("gehen", "VVFIN", Morph{{"VVFIN", "VVINF"}});
  ok &= permits.tag == "VVFIN" && permits.reason == ExportReason::kMorphPermits;
  ExportDecision unique = export_filter("Haus", "ADJA", Morph{{"NN"}});
  ok &= unique.tag == "NN" && unique.reason == ExportReason::kMorphUnique;
  ExportDecision nothing = export_filter("blurk", "VVFIN", Morph{{"NN", "NE"}});
  ok &= nothing.tag.empty() && nothing.reason == ExportReason::kNoExport;
  ExportDecision ne = export_filter("Xanadu", "NE", Morph{std::vector<std::string>{}});
  ok &= ne.tag == "NE" && ne.reason == ExportReason::kNeUnanalyzed;
  if (!ok) detail << "quoted cases failed; ";

  // exhaustive structural combinations
  const std::vector<std::string> forms{"123", "42.", "Haus"};
  const std::vector<std::string> tree_tags{"NE", "NN", "VVFIN"};
  const std::vector<Morph> morphs{
      std::nullopt,
      Morph{std::vector<std::string>{}},
      Morph{{"NN"}},
      Morph{{"NE"}},
      Morph{{"VVFIN"}},
      Morph{{"NE", "NN"}},
      Morph{{"NE", "NN", "VVFIN"}},
  };
  int cases = 0;
  for (const auto& form : forms)
    for (const auto& tree : tree_tags)
      for (const auto& morph : morphs) {
        ExportDecision got = export_filter(form, tree, morph);
        // rule order, evaluated as predicates
        std::string want_tag;
        ExportReason want_reason;
        bool permits_tree =
            morph && std::find(morph->begin(), morph->end(), tree) != morph->end();
        if (is_digit_sequence(form)) {
          want_tag = "CARDNUM";
          want_reason = ExportReason::kDigitPattern;
        } else if (is_digit_ordinal(form)) {
          want_tag = "ADJA";
          want_reason = ExportReason::kDigitPattern;
        } else if (permits_tree) {
          want_tag = tree;
          want_reason = ExportReason::kMorphPermits;
        } else if (morph && morph->size() == 1) {
          want_tag = morph->front();
          want_reason = ExportReason::kMorphUnique;
        } else if ((!morph || morph->empty()) && tree == "NE") {
          want_tag = "NE";
          want_reason = ExportReason::kNeUnanalyzed;
        } else {
          want_reason = ExportReason::kNoExport;
        }
        if (got.tag != want_tag || got.reason != want_reason) {
          ok = false;
          detail << "mismatch for (" << form << "," << tree << "); ";
        }
        if ((got.reason == ExportReason::kNoExport) != got.tag.empty()) {
          ok = false;
          detail << "reason/tag invariant broken; ";
        }
        ++cases;
      }
  std::ostringstream tail;
  tail << cases << " combinations";
  report(5, "export filter decision table", ok, detail.str() + tail.str());
}

// --------------------------------------------------------------------------
// 6 and 7. End-to-end pipeline on the bundled corpus; determinism.

int run_tagkit(const std::string& args) {
  std::string cmd = g_tagkit_bin + " " + args + " >" +
                    (g_scratch / "cli_stdout.txt").string() + " 2>" +
                    (g_scratch / "cli_stderr.txt").string();
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_end_to_end() {
  fs::path run1 = g_scratch / "run1";
  std::string corpus = (g_data_dir / "sample_corpus.vrt").string();
  std::string tagset = (g_data_dir / "stts.tagset").string();
  int code = run_tagkit("repro --corpus " + corpus + " --tagset " + tagset +
                        " --out-dir " + run1.string());
  if (code != 0) {
    report(6, "end-to-end pipeline on the bundled corpus", false,
           "repro exited with " + std::to_string(code));
    report(7, "round-trips and bit-identical reruns", false, "repro failed");
    return;
  }
  auto summary = read_tsv_numbers(run1 / "summary.tsv");
  auto timings = read_tsv_numbers(run1 / "timings.tsv");

  bool ok = true;
  std::ostringstream detail;
  double baseline = summary["baseline_acc"];
  double dtree = summary["dtree_acc"];
  double tbl = summary["tbl_acc"];
  if (timings["tbl_train_seconds"] >= 600.0) {
    ok = false;
    detail << "TBL training too slow; ";
  }
  if (timings["dtree_train_seconds"] >= 60.0) {
    ok = false;
    detail << "decision tree training too slow; ";
  }
  if (dtree < baseline + 3.0) {
    ok = false;
    detail << "decision tree only " << dtree << " vs baseline " << baseline
           << "; ";
  }
  if (tbl < baseline + 3.0) {
    ok = false;
    detail << "TBL only " << tbl << " vs baseline " << baseline << "; ";
  }
  if (!(summary["gaps_after"] < summary["gaps_before"])) {
    ok = false;
    detail << "merge did not reduce lexicon gaps; ";
  }
  if (summary["dtree_ext_acc"] < dtree - 0.5) {
    ok = false;
    detail << "merged lexicon hurt the decision tree; ";
  }
  if (summary["tbl_ext_acc"] < tbl - 0.5) {
    ok = false;
    detail << "merged lexicon hurt TBL; ";
  }
  std::ostringstream tail;
  tail << "baseline " << baseline << ", dtree " << dtree << ", tbl " << tbl
       << ", gaps " << summary["gaps_before"] << "->" << summary["gaps_after"]
       << ", train " << timings["dtree_train_seconds"] << "s/"
       << timings["tbl_train_seconds"] << "s";
  report(6, "end-to-end pipeline on the bundled corpus", ok,
         detail.str() + tail.str());

  // criterion 7: file round-trips plus byte-identical reruns
  bool ok7 = true;
  std::ostringstream detail7;
  {
    Corpus c = load_vertical((run1 / "corpus.vrt").string());
    if (write_vertical(c) != slurp(run1 / "corpus.vrt")) {
      ok7 = false;
      detail7 << "corpus round-trip; ";
    }
    Lexicon lex = Lexicon::load((run1 / "train.lexicon").string());
    std::ostringstream lexout;
    lex.write(lexout);
    if (lexout.str() != slurp(run1 / "train.lexicon")) {
      ok7 = false;
      detail7 << "lexicon round-trip; ";
    }
    std::istringstream lrin(slurp(run1 / "tbl.lexical-rules"));
    std::ostringstream lrout;
    write_lexical_rules(read_lexical_rules(lrin), lrout);
    if (lrout.str() != slurp(run1 / "tbl.lexical-rules")) {
      ok7 = false;
      detail7 << "lexical rules round-trip; ";
    }
    std::istringstream crin(slurp(run1 / "tbl.context-rules"));
    std::ostringstream crout;
    write_contextual_rules(read_contextual_rules(crin), crout);
    if (crout.str() != slurp(run1 / "tbl.context-rules")) {
      ok7 = false;
      detail7 << "contextual rules round-trip; ";
    }
    DTreeModel m = load_dtree_model((run1 / "dtree.model").string());
    std::ostringstream mout;
    write_dtree_model(m, mout);
    if (mout.str() != slurp(run1 / "dtree.model")) {
      ok7 = false;
      detail7 << "model round-trip; ";
    }
  }
  fs::path run2 = g_scratch / "run2";
  code = run_tagkit("repro --corpus " + corpus + " --tagset " + tagset +
                    " --out-dir " + run2.string());
  if (code != 0) {
    ok7 = false;
    detail7 << "second repro failed; ";
  } else {
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(run1)) {
      std::string name = entry.path().filename().string();
      if (name == "timings.tsv") continue;  // wall-clock, legitimately varies
      if (slurp(entry.path()) != slurp(run2 / name)) {
        ok7 = false;
        detail7 << name << " differs between runs; ";
      }
      ++compared;
    }
    detail7 << compared << " artifacts compared";
  }
  report(7, "round-trips and bit-identical reruns", ok7, detail7.str());
}

// --------------------------------------------------------------------------
// 8. CARDNUM remap on the bundled corpus.

void criterion_cardnum_remap() {
  Corpus corpus = load_vertical((g_data_dir / "sample_corpus.vrt").string());
  long long digit_card_before = 0;
  for (const auto& sentence : corpus.sentences)
    for (const auto& token : sentence.tokens)
      if (token.tag == kCardTag && is_digit_sequence(token.form))
        ++digit_card_before;

  Corpus remapped = remap_cardnum(corpus);
  bool ok = digit_card_before > 0;  // the remap must have real work to do
  std::ostringstream detail;
  if (digit_card_before == 0) detail << "bundle has no digit CARD tokens; ";
  long long cardnum = 0;
  for (const auto& sentence : remapped.sentences)
    for (const auto& token : sentence.tokens) {
      if (token.tag == kCardTag && is_digit_sequence(token.form)) {
        ok = false;
        detail << "digit form still CARD: " << token.form << "; ";
      }
      if (token.tag == kCardnumTag) {
        ++cardnum;
        if (!is_digit_sequence(token.form)) {
          ok = false;
          detail << "letter numeral got CARDNUM: " << token.form << "; ";
        }
      }
    }
  std::ostringstream tail;
  tail << digit_card_before << " digit tokens remapped, " << cardnum
       << " CARDNUM total";
  report(8, "CARDNUM remap on the bundled corpus", ok, detail.str() + tail.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: tagkit_acceptance <tagkit-binary> <data-dir> <scratch-dir>\n";
    return 2;
  }
  g_tagkit_bin = argv[1];
  g_data_dir = argv[2];
  g_scratch = argv[3];
  fs::create_directories(g_scratch);

  try {
    criterion_viterbi_oracle();
    criterion_info_gain();
    criterion_tbl_properties();
    criterion_eval_accounting();
    criterion_export_filter();
    criterion_end_to_end();
    criterion_cardnum_remap();
  } catch (const std::exception& e) {
    std::cout << "[FAIL] acceptance aborted: " << e.what() << std::endl;
    return 1;
  }
  if (g_failures == 0) {
    std::cout << "all criteria passed" << std::endl;
    return 0;
  }
  std::cout << g_failures << " criteria failed" << std::endl;
  return 1;
}
