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

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "repro.hpp"
#include "tagkit/combine.hpp"
#include "tagkit/corpus.hpp"
#include "tagkit/dtree.hpp"
#include "tagkit/error.hpp"
#include "tagkit/eval.hpp"
#include "tagkit/lexicon.hpp"
#include "tagkit/morph.hpp"
#include "tagkit/tagset.hpp"
#include "tagkit/tbl.hpp"

namespace {

using namespace tagkit;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  out << text;
}

DTreeParams parse_dtree_params(const std::vector<std::string>& overrides) {
  DTreeParams params;
  for (const auto& kv : overrides) {
    std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw UsageError("--param expects name=value, got '" + kv + "'");
    std::string key = kv.substr(0, eq);
    std::string value = kv.substr(eq + 1);
    try {
      if (key == "context_length")
        params.context_length = std::stoi(value);
      else if (key == "min_gain")
        params.min_gain = std::stod(value);
      else if (key == "eq_class_weight")
        params.eq_class_weight = std::stod(value);
      else if (key == "affix_gain")
        params.affix_gain = std::stod(value);
      else
        throw UsageError("unknown parameter '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw UsageError("malformed value for parameter '" + key + "'");
    }
  }
  return params;
}

// Collects the tag assignments per unknown type from a corpus file with
// forms (tags optional); used by merge-lex.
std::vector<std::string> unknown_types_of(const RawCorpus& raw,
                                          const Lexicon& lex) {
  std::set<std::string> types;
  for (const auto& sentence : raw)
    for (const auto& form : sentence)
      if (!lex.contains(form)) types.insert(form);
  return {types.begin(), types.end()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tagkit - transformation-based and decision-tree POS tagging"};
  app.set_config("--config", "", "key=value configuration file; flags override");
  app.require_subcommand(1);

  // split
  auto* split = app.add_subcommand("split", "split a corpus sentence by sentence");
  std::string split_in, split_train, split_test, split_tagset;
  int split_denominator = 8;
  bool split_no_validate = false;
  split->add_option("--in", split_in, "tagged corpus (vertical format)")->required();
  split->add_option("--denominator", split_denominator,
                    "every n-th sentence goes to the test corpus")
      ->capture_default_str();
  split->add_option("--train", split_train, "output training corpus")->required();
  split->add_option("--test", split_test, "output test corpus")->required();
  split->add_option("--tagset", split_tagset, "tagset inventory file");
  split->add_flag("--no-validate", split_no_validate, "skip tagset validation");

  // train-dtree
  auto* traind = app.add_subcommand("train-dtree", "train the decision tree tagger");
  std::string traind_train, traind_out, traind_lexicon, traind_tagset;
  std::vector<std::string> traind_params;
  traind->add_option("--train", traind_train, "training corpus")->required();
  traind->add_option("--out", traind_out, "output model file")->required();
  traind->add_option("--lexicon", traind_lexicon,
                     "lexicon to integrate (default: built from the corpus); "
                     "retrain with a merged lexicon to extend the tagger");
  traind->add_option("--tagset", traind_tagset, "tagset inventory file")->required();
  traind->add_option("--param", traind_params,
                     "override context_length=2, min_gain=0.7, "
                     "eq_class_weight=0.15 or affix_gain=1.2");

  // train-tbl
  auto* traint = app.add_subcommand("train-tbl", "train the transformation-based tagger");
  std::string traint_train, traint_out, traint_tagset;
  TblParams tparams;
  traint->add_option("--train", traint_train, "training corpus")->required();
  traint->add_option("--out", traint_out, "output model file prefix")->required();
  traint->add_option("--lexical-threshold", tparams.lexical_threshold,
                     "minimum score of a learned lexical rule")
      ->capture_default_str();
  traint->add_option("--contextual-threshold", tparams.contextual_threshold,
                     "minimum score of a learned contextual rule")
      ->capture_default_str();
  traint->add_option("--bigram-restriction", tparams.bigram_restriction,
                     "word templates only use the n most frequent words")
      ->capture_default_str();
  traint->add_option("--tagset", traint_tagset, "tagset inventory file");

  // tag
  auto* tag = app.add_subcommand("tag", "tag a corpus of forms");
  std::string tag_dtree, tag_tbl, tag_in, tag_out, tag_lexicon;
  int tag_jobs = 1;
  tag->add_option("--dtree", tag_dtree, "decision tree model file");
  tag->add_option("--tbl", tag_tbl, "TBL model file prefix");
  tag->add_option("--in", tag_in, "input forms (one per line; tags ignored)")->required();
  tag->add_option("--out", tag_out, "output corpus (default: stdout)");
  tag->add_option("--lexicon", tag_lexicon,
                  "TBL only: lexicon loaded instead of the trained one "
                  "(extension without retraining)");
  tag->add_option("--jobs", tag_jobs, "parallel sentence tagging threads")
      ->capture_default_str();

  // eval
  auto* eval = app.add_subcommand("eval", "ambiguity-stratified evaluation");
  std::string eval_gold, eval_pred, eval_lexicon, eval_csv, eval_out;
  eval->add_option("--gold", eval_gold, "gold corpus")->required();
  eval->add_option("--pred", eval_pred, "tagger output corpus")->required();
  eval->add_option("--lexicon", eval_lexicon, "lexicon defining ambiguity levels")
      ->required();
  eval->add_option("--csv", eval_csv, "also write machine-readable rows");
  eval->add_option("--out", eval_out, "table output (default: stdout)");

  // error-types
  auto* etypes = app.add_subcommand("error-types", "ranked error-type tuples");
  std::string et_gold, et_pred, et_out;
  etypes->add_option("--gold", et_gold, "gold corpus")->required();
  etypes->add_option("--pred", et_pred, "tagger output corpus")->required();
  etypes->add_option("--out", et_out, "output (default: stdout)");

  // merge-lex
  auto* merge = app.add_subcommand(
      "merge-lex", "add analyses for unknown forms to a lexicon");
  std::string merge_lexicon, merge_corpus, merge_analyzer = "stub";
  std::string merge_tagmap, merge_tagset, merge_priors, merge_train, merge_out;
  std::string merge_priors_out, merge_analyses_out;
  merge->add_option("--lexicon", merge_lexicon, "base lexicon")->required();
  merge->add_option("--corpus", merge_corpus,
                    "corpus whose unknown types are analyzed")->required();
  merge->add_option("--analyzer", merge_analyzer, "stub | file:REQUEST,RESPONSE")
      ->capture_default_str();
  merge->add_option("--tagmap", merge_tagmap, "native-category tag map");
  merge->add_option("--tagset", merge_tagset, "tagset inventory file")->required();
  merge->add_option("--priors", merge_priors, "tag priors file");
  merge->add_option("--train", merge_train,
                    "training corpus to compute priors from (alternative to --priors)");
  merge->add_option("--out", merge_out, "merged lexicon output")->required();
  merge->add_option("--priors-out", merge_priors_out, "also write the priors");
  merge->add_option("--analyses-out", merge_analyses_out,
                    "also write the raw analyses");

  // combine
  auto* combine = app.add_subcommand("combine", "sequential tagger combination");
  std::string comb_order, comb_policy = "filtered";
  std::string comb_train, comb_test, comb_gold, comb_dtree, comb_tbl;
  std::string comb_analyzer = "stub", comb_tagmap, comb_tagset;
  std::string comb_out, comb_decisions, comb_report;
  std::vector<std::string> comb_params;
  combine->add_option("--order", comb_order, "tree-tbl | tbl-tree")->required();
  combine->add_option("--policy", comb_policy, "all | filtered (tree-tbl only)")
      ->capture_default_str();
  combine->add_option("--train", comb_train, "training corpus (tbl-tree only)");
  combine->add_option("--test", comb_test, "corpus of forms to tag")->required();
  combine->add_option("--gold", comb_gold, "gold corpus for the report");
  combine->add_option("--dtree", comb_dtree, "decision tree model (tree-tbl)");
  combine->add_option("--tbl", comb_tbl, "TBL model prefix")->required();
  combine->add_option("--analyzer", comb_analyzer, "morphological analyzer")
      ->capture_default_str();
  combine->add_option("--tagmap", comb_tagmap, "native-category tag map");
  combine->add_option("--tagset", comb_tagset, "tagset inventory file");
  combine->add_option("--out", comb_out, "tagged output (default: stdout)");
  combine->add_option("--decisions", comb_decisions, "export decision log");
  combine->add_option("--report", comb_report, "evaluation table output");
  combine->add_option("--param", comb_params, "decision tree parameter overrides");

  // repro
  auto* repro = app.add_subcommand(
      "repro", "full pipeline: split, train, tag, evaluate, merge, combine");
  ReproOptions ropts;
  std::vector<std::string> repro_params;
  repro->add_option("--corpus", ropts.corpus_path, "tagged corpus")->required();
  repro->add_option("--tagset", ropts.tagset_path, "tagset inventory file")->required();
  repro->add_option("--out-dir", ropts.out_dir, "artifact directory")->required();
  repro->add_option("--denominator", ropts.denominator, "sentence-wise split")
      ->capture_default_str();
  repro->add_option("--jobs", ropts.jobs, "parallel tagging threads")
      ->capture_default_str();
  repro->add_option("--analyzer", ropts.analyzer, "morphological analyzer")
      ->capture_default_str();
  repro->add_option("--tagmap", ropts.tagmap_path, "native-category tag map");
  repro->add_option("--param", repro_params, "decision tree parameter overrides");
  repro->add_option("--lexical-threshold", ropts.tparams.lexical_threshold,
                    "TBL lexical rule threshold")->capture_default_str();
  repro->add_option("--contextual-threshold", ropts.tparams.contextual_threshold,
                    "TBL contextual rule threshold")->capture_default_str();
  repro->add_option("--bigram-restriction", ropts.tparams.bigram_restriction,
                    "TBL word-template restriction")->capture_default_str();

  try {
    app.parse(argc, argv);

    if (*split) {
      Tagset tagset;
      const Tagset* validate = nullptr;
      if (!split_tagset.empty() && !split_no_validate) {
        tagset = Tagset::load(split_tagset);
        validate = &tagset;
      }
      Corpus corpus = load_vertical(split_in, validate);
      auto [train, test] = split_sentencewise(corpus, split_denominator);
      save_vertical(train, split_train);
      save_vertical(test, split_test);
      std::cout << "split " << corpus.sentences.size() << " sentences into "
                << train.sentences.size() << " train / " << test.sentences.size()
                << " test\n";
    } else if (*traind) {
      Tagset tagset = Tagset::load(traind_tagset);
      Corpus train = load_vertical(traind_train, &tagset);
      Lexicon lex = traind_lexicon.empty() ? Lexicon::build(train)
                                           : Lexicon::load(traind_lexicon, &tagset);
      DTreeModel model =
          dtree_train(train, lex, parse_dtree_params(traind_params), tagset);
      save_dtree_model(model, traind_out);
      std::cout << "trained decision tree model: "
                << model.context_tree.nodes.size() << " context nodes, "
                << model.affix_tree.nodes.size() << " affix nodes\n";
    } else if (*traint) {
      Tagset tagset;
      const Tagset* validate = nullptr;
      if (!traint_tagset.empty()) {
        tagset = Tagset::load(traint_tagset);
        validate = &tagset;
      }
      Corpus train = load_vertical(traint_train, validate);
      TblModel model = train_tbl(train, tparams);
      save_tbl_model(model, traint_out);
      std::cout << "trained TBL model: " << model.lexical_rules.size()
                << " lexical rules, " << model.contextual_rules.size()
                << " contextual rules, " << model.lexicon.size()
                << " lexicon entries\n";
    } else if (*tag) {
      if (tag_dtree.empty() == tag_tbl.empty())
        throw UsageError("pass exactly one of --dtree or --tbl");
      RawCorpus raw = load_vertical_forms(tag_in);
      Corpus tagged;
      if (!tag_dtree.empty()) {
        if (!tag_lexicon.empty())
          throw UsageError(
              "--lexicon applies to --tbl only; the decision tree integrates "
              "its lexicon at training time");
        DTreeModel model = load_dtree_model(tag_dtree);
        tagged = dtree_tag(raw, model, tag_jobs);
      } else {
        TblModel model = load_tbl_model(tag_tbl);
        if (!tag_lexicon.empty()) model.lexicon = Lexicon::load(tag_lexicon);
        tagged = tbl_tag(raw, model, tag_jobs);
      }
      write_output(tag_out, write_vertical(tagged));
    } else if (*eval) {
      Corpus gold = load_vertical(eval_gold);
      Corpus pred = load_vertical(eval_pred);
      Lexicon lex = Lexicon::load(eval_lexicon);
      EvalReport report = evaluate(gold, pred, lex);
      std::ostringstream text;
      text << render_table(report);
      char line[160];
      std::snprintf(line, sizeof line,
                    "accuracy: %.2f%%  mean ambiguity of known tokens: %.2f\n",
                    report.accuracy, report.mean_ambiguity);
      text << line;
      write_output(eval_out, text.str());
      if (!eval_csv.empty()) write_output(eval_csv, render_csv(report));
    } else if (*etypes) {
      Corpus gold = load_vertical(et_gold);
      Corpus pred = load_vertical(et_pred);
      write_output(et_out, render_error_types(error_types(gold, pred)));
    } else if (*merge) {
      Tagset tagset = Tagset::load(merge_tagset);
      Lexicon lex = Lexicon::load(merge_lexicon, &tagset);
      RawCorpus raw = load_vertical_forms(merge_corpus);
      TagPriors priors;
      if (!merge_priors.empty())
        priors = load_priors(merge_priors);
      else if (!merge_train.empty())
        priors = tag_priors(load_vertical(merge_train, &tagset));
      else
        throw UsageError("pass --priors or --train to order external entries");
      std::unique_ptr<Analyzer> analyzer =
          make_analyzer(merge_analyzer, tagset, merge_tagmap);
      std::vector<std::string> unknowns = unknown_types_of(raw, lex);
      std::map<std::string, std::vector<std::string>> analyses;
      std::ostringstream raw_out;
      for (const auto& analysis : analyzer->analyze_batch(unknowns)) {
        analyses[analysis.form] = analysis.tags;
        raw_out << analysis.form << '\t';
        for (std::size_t i = 0; i < analysis.tags.size(); ++i) {
          if (i) raw_out << ' ';
          raw_out << analysis.tags[i];
        }
        raw_out << '\n';
      }
      Lexicon merged = merge_external(lex, analyses, priors, tagset);
      merged.save(merge_out);
      if (!merge_priors_out.empty()) save_priors(priors, merge_priors_out);
      if (!merge_analyses_out.empty())
        write_output(merge_analyses_out, raw_out.str());
      std::cout << "merged " << (merged.size() - lex.size()) << " external entries ("
                << unknowns.size() << " unknown types submitted)\n";
    } else if (*combine) {
      RawCorpus test = load_vertical_forms(comb_test);
      Corpus gold;
      const Corpus* gold_ptr = nullptr;
      if (!comb_gold.empty()) {
        gold = load_vertical(comb_gold);
        gold_ptr = &gold;
      }
      TblModel tmodel = load_tbl_model(comb_tbl);
      std::optional<EvalReport> report;
      Corpus tagged;
      if (comb_order == "tree-tbl") {
        if (comb_dtree.empty())
          throw UsageError("--order tree-tbl needs --dtree");
        DTreeModel dmodel = load_dtree_model(comb_dtree);
        ExportMode mode;
        if (comb_policy == "all")
          mode = ExportMode::kAll;
        else if (comb_policy == "filtered")
          mode = ExportMode::kFiltered;
        else
          throw UsageError("unknown policy '" + comb_policy + "'");
        std::unique_ptr<Analyzer> analyzer;
        if (mode == ExportMode::kFiltered) {
          if (comb_tagset.empty())
            throw UsageError("filtered policy needs --tagset for the analyzer");
          Tagset tagset = Tagset::load(comb_tagset);
          analyzer = make_analyzer(comb_analyzer, tagset, comb_tagmap);
        }
        CombineOutcome outcome = run_tree_then_tbl(test, dmodel, tmodel, mode,
                                                   analyzer.get(), gold_ptr);
        tagged = std::move(outcome.tagged);
        report = std::move(outcome.report);
        if (!comb_decisions.empty())
          write_output(comb_decisions, render_decisions(outcome.decisions));
      } else if (comb_order == "tbl-tree") {
        if (comb_train.empty() || comb_tagset.empty())
          throw UsageError("--order tbl-tree needs --train and --tagset");
        Tagset tagset = Tagset::load(comb_tagset);
        Corpus train = load_vertical(comb_train, &tagset);
        TblTreeOutcome outcome =
            run_tbl_then_tree(train, test, tmodel, parse_dtree_params(comb_params),
                              tagset, gold_ptr);
        tagged = std::move(outcome.tagged);
        report = std::move(outcome.report);
      } else {
        throw UsageError("unknown order '" + comb_order + "'");
      }
      write_output(comb_out, write_vertical(tagged));
      if (report && !comb_report.empty())
        write_output(comb_report, render_table(*report));
    } else if (*repro) {
      ropts.dparams = parse_dtree_params(repro_params);
      run_repro(ropts);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
