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

#include "repro.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "tagkit/combine.hpp"
#include "tagkit/error.hpp"
#include "tagkit/eval.hpp"
#include "tagkit/morph.hpp"

namespace tagkit {

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  out << text;
}

std::string fmt4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// Pooled correct-rate over the rows at or above an ambiguity level.
double pooled_accuracy(const EvalReport& report, int min_level) {
  long long tokens = 0, correct = 0;
  for (const auto& row : report.rows)
    if (row.ambiguity_level >= min_level) {
      tokens += row.tokens;
      correct += row.correct;
    }
  return tokens > 0 ? 100.0 * static_cast<double>(correct) /
                          static_cast<double>(tokens)
                    : 0.0;
}

double row_accuracy(const EvalReport& report, int level) {
  for (const auto& row : report.rows)
    if (row.ambiguity_level == level)
      return row.tokens > 0 ? 100.0 * static_cast<double>(row.correct) /
                                  static_cast<double>(row.tokens)
                            : 0.0;
  return 0.0;
}

}  // namespace

void run_repro(const ReproOptions& options) {
  namespace fs = std::filesystem;
  using clock = std::chrono::steady_clock;
  const std::string dir = options.out_dir + "/";
  fs::create_directories(options.out_dir);

  std::map<std::string, std::string> summary;
  std::map<std::string, std::string> timings;
  auto seconds_since = [](clock::time_point start) {
    return std::chrono::duration<double>(clock::now() - start).count();
  };

  Tagset tagset = Tagset::load(options.tagset_path);
  Corpus corpus = remap_cardnum(load_vertical(options.corpus_path, &tagset));
  save_vertical(corpus, dir + "corpus.vrt");

  auto [train, test] = split_sentencewise(corpus, options.denominator);
  save_vertical(train, dir + "train.vrt");
  save_vertical(test, dir + "test.vrt");
  summary["train_tokens"] = std::to_string(train.token_count());
  summary["test_tokens"] = std::to_string(test.token_count());

  Lexicon lex = Lexicon::build(train);
  lex.save(dir + "train.lexicon");
  TagPriors priors = tag_priors(train);
  save_priors(priors, dir + "train.priors");
  summary["lexicon_entries"] = std::to_string(lex.size());

  const RawCorpus test_forms = to_forms(test);
  const Corpus& gold = test;

  // Most-frequent-tag baseline.
  Corpus baseline = initial_tag(test_forms, lex);
  save_vertical(baseline, dir + "baseline.vrt");
  EvalReport rep_baseline = evaluate(gold, baseline, lex);
  write_text(dir + "baseline.eval.txt", render_table(rep_baseline));
  summary["baseline_acc"] = fmt4(rep_baseline.accuracy);
  summary["mean_ambiguity"] = fmt4(rep_baseline.mean_ambiguity);

  // Decision tree tagger.
  auto t0 = clock::now();
  DTreeModel dmodel = dtree_train(train, lex, options.dparams, tagset);
  timings["dtree_train_seconds"] = fmt4(seconds_since(t0));
  save_dtree_model(dmodel, dir + "dtree.model");
  Corpus dtree_out = dtree_tag(test_forms, dmodel, options.jobs);
  save_vertical(dtree_out, dir + "dtree.vrt");
  EvalReport rep_dtree = evaluate(gold, dtree_out, lex);
  write_text(dir + "dtree.eval.txt", render_table(rep_dtree));
  write_text(dir + "dtree.eval.csv", render_csv(rep_dtree));
  write_text(dir + "dtree.errors.tsv",
             render_error_types(error_types(gold, dtree_out)));
  summary["dtree_acc"] = fmt4(rep_dtree.accuracy);

  // Transformation-based tagger.
  t0 = clock::now();
  TblModel tmodel = train_tbl(train, options.tparams);
  timings["tbl_train_seconds"] = fmt4(seconds_since(t0));
  save_tbl_model(tmodel, dir + "tbl");
  Corpus tbl_out = tbl_tag(test_forms, tmodel, options.jobs);
  save_vertical(tbl_out, dir + "tbl.vrt");
  EvalReport rep_tbl = evaluate(gold, tbl_out, lex);
  write_text(dir + "tbl.eval.txt", render_table(rep_tbl));
  write_text(dir + "tbl.eval.csv", render_csv(rep_tbl));
  write_text(dir + "tbl.errors.tsv",
             render_error_types(error_types(gold, tbl_out)));
  summary["tbl_acc"] = fmt4(rep_tbl.accuracy);
  summary["lexical_rules"] = std::to_string(tmodel.lexical_rules.size());
  summary["contextual_rules"] = std::to_string(tmodel.contextual_rules.size());

  // External-lexicon merge over the unknown types of the test input.
  std::set<std::string> unknown_types;
  long long gaps_before = 0;
  for (const auto& sentence : test_forms)
    for (const auto& form : sentence)
      if (!lex.contains(form)) {
        ++gaps_before;
        unknown_types.insert(form);
      }
  std::unique_ptr<Analyzer> analyzer =
      make_analyzer(options.analyzer, tagset, options.tagmap_path);
  std::vector<std::string> unknown_list(unknown_types.begin(),
                                        unknown_types.end());
  std::map<std::string, std::vector<std::string>> analyses;
  {
    std::ostringstream out;
    for (const auto& analysis : analyzer->analyze_batch(unknown_list)) {
      analyses[analysis.form] = analysis.tags;
      out << analysis.form << '\t';
      for (std::size_t i = 0; i < analysis.tags.size(); ++i) {
        if (i) out << ' ';
        out << analysis.tags[i];
      }
      out << '\n';
    }
    write_text(dir + "unknowns.tsv", out.str());
  }
  Lexicon merged = merge_external(lex, analyses, priors, tagset);
  merged.save(dir + "merged.lexicon");
  long long gaps_after = 0;
  for (const auto& sentence : test_forms)
    for (const auto& form : sentence)
      if (!merged.contains(form)) ++gaps_after;
  summary["gaps_before"] = std::to_string(gaps_before);
  summary["gaps_after"] = std::to_string(gaps_after);
  summary["unknown_types"] = std::to_string(unknown_types.size());
  summary["analyzed_types"] = std::to_string([&] {
    long long n = 0;
    for (const auto& [form, tags] : analyses)
      if (!tags.empty()) ++n;
    return n;
  }());

  // Retrained decision tree with the merged lexicon.
  DTreeModel dmodel_ext = dtree_train(train, merged, options.dparams, tagset);
  save_dtree_model(dmodel_ext, dir + "dtree_ext.model");
  Corpus dtree_ext_out = dtree_tag(test_forms, dmodel_ext, options.jobs);
  save_vertical(dtree_ext_out, dir + "dtree_ext.vrt");
  EvalReport rep_dtree_ext = evaluate(gold, dtree_ext_out, merged);
  write_text(dir + "dtree_ext.eval.txt", render_table(rep_dtree_ext));
  write_text(dir + "dtree_ext.eval.csv", render_csv(rep_dtree_ext));
  summary["dtree_ext_acc"] = fmt4(rep_dtree_ext.accuracy);

  // TBL with the merged lexicon loaded at tagging time; no retraining.
  TblModel tmodel_ext = tmodel;
  tmodel_ext.lexicon = merged;
  Corpus tbl_ext_out = tbl_tag(test_forms, tmodel_ext, options.jobs);
  save_vertical(tbl_ext_out, dir + "tbl_ext.vrt");
  EvalReport rep_tbl_ext = evaluate(gold, tbl_ext_out, merged);
  write_text(dir + "tbl_ext.eval.txt", render_table(rep_tbl_ext));
  summary["tbl_ext_acc"] = fmt4(rep_tbl_ext.accuracy);

  // Sequential combination: decision tree first, then TBL.
  {
    CombineOutcome outcome = run_tree_then_tbl(test_forms, dmodel, tmodel,
                                               ExportMode::kAll, nullptr, &gold);
    save_vertical(outcome.tagged, dir + "combine_tree_tbl_all.vrt");
    write_text(dir + "combine_tree_tbl_all.eval.txt",
               render_table(*outcome.report));
    write_text(dir + "combine_tree_tbl_all.decisions",
               render_decisions(outcome.decisions));
    summary["combine_tree_tbl_all_acc"] = fmt4(outcome.report->accuracy);
  }
  {
    CombineOutcome outcome =
        run_tree_then_tbl(test_forms, dmodel, tmodel, ExportMode::kFiltered,
                          analyzer.get(), &gold);
    save_vertical(outcome.tagged, dir + "combine_tree_tbl_filtered.vrt");
    write_text(dir + "combine_tree_tbl_filtered.eval.txt",
               render_table(*outcome.report));
    write_text(dir + "combine_tree_tbl_filtered.decisions",
               render_decisions(outcome.decisions));
    summary["combine_tree_tbl_filtered_acc"] = fmt4(outcome.report->accuracy);
    long long exported = 0;
    for (const auto& d : outcome.decisions)
      if (!d.tag.empty()) ++exported;
    summary["exported_filtered"] = std::to_string(exported);
  }
  // Reverse order: TBL first, then a retrained decision tree.
  {
    TblTreeOutcome outcome = run_tbl_then_tree(train, test_forms, tmodel,
                                               options.dparams, tagset, &gold);
    save_vertical(outcome.tagged, dir + "combine_tbl_tree.vrt");
    write_text(dir + "combine_tbl_tree.eval.txt", render_table(*outcome.report));
    summary["combine_tbl_tree_acc"] = fmt4(outcome.report->accuracy);
  }

  summary["dtree_unknown_correct_pct"] = fmt4(row_accuracy(rep_dtree, 0));
  summary["tbl_unknown_correct_pct"] = fmt4(row_accuracy(rep_tbl, 0));
  summary["dtree_high_amb_correct_pct"] = fmt4(pooled_accuracy(rep_dtree, 4));
  summary["tbl_high_amb_correct_pct"] = fmt4(pooled_accuracy(rep_tbl, 4));

  {
    std::ostringstream out;
    for (const auto& [key, value] : summary) out << key << '\t' << value << '\n';
    write_text(dir + "summary.tsv", out.str());
  }
  {
    std::ostringstream out;
    for (const auto& [key, value] : timings) out << key << '\t' << value << '\n';
    write_text(dir + "timings.tsv", out.str());
  }

  // Human-readable comparison, including the qualitative contrasts. These
  // are reported, not asserted; they depend on the corpus.
  {
    std::ostringstream out;
    out << "tagger comparison on " << options.corpus_path << "\n\n";
    out << "accuracy (%)\n";
    out << "  baseline (most frequent tag)   " << fmt4(rep_baseline.accuracy) << '\n';
    out << "  decision tree                  " << fmt4(rep_dtree.accuracy) << '\n';
    out << "  tbl                            " << fmt4(rep_tbl.accuracy) << '\n';
    out << "  decision tree, merged lexicon  " << fmt4(rep_dtree_ext.accuracy) << '\n';
    out << "  tbl, merged lexicon            " << fmt4(rep_tbl_ext.accuracy) << '\n';
    out << "  combine tree->tbl (all)        " << summary["combine_tree_tbl_all_acc"] << '\n';
    out << "  combine tree->tbl (filtered)   " << summary["combine_tree_tbl_filtered_acc"] << '\n';
    out << "  combine tbl->tree              " << summary["combine_tbl_tree_acc"] << '\n';
    out << '\n';
    out << "unknown tokens (lexicon gaps): " << summary["gaps_before"]
        << " before merge, " << summary["gaps_after"] << " after\n";
    out << "correct on unknown tokens: decision tree "
        << summary["dtree_unknown_correct_pct"] << "%, tbl "
        << summary["tbl_unknown_correct_pct"] << "%\n";
    out << "correct at ambiguity >= 4: decision tree "
        << summary["dtree_high_amb_correct_pct"] << "%, tbl "
        << summary["tbl_high_amb_correct_pct"] << "%\n";
    write_text(dir + "comparison.txt", out.str());
  }

  std::cout << "repro finished; artifacts in " << options.out_dir << "\n"
            << "  baseline " << fmt4(rep_baseline.accuracy) << "%, dtree "
            << fmt4(rep_dtree.accuracy) << "%, tbl " << fmt4(rep_tbl.accuracy)
            << "%\n"
            << "  merged lexicon: dtree " << fmt4(rep_dtree_ext.accuracy)
            << "%, tbl " << fmt4(rep_tbl_ext.accuracy) << "%\n";
}

}  // namespace tagkit
