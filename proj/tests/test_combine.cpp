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

#include <optional>

#include "doctest.h"
#include "helpers.hpp"
#include "tagkit/combine.hpp"
#include "tagkit/error.hpp"

using namespace tagkit;
using test_helpers::corpus_of;

namespace {

using Morph = std::optional<std::vector<std::string>>;

// Independent reading of the five filter rules, evaluated as predicates
// with an explicit priority list rather than early returns.
ExportDecision reference_filter(std::string_view form, std::string_view tree,
                                const Morph& morph) {
  const bool digit = is_digit_sequence(form);
  const bool ordinal = is_digit_ordinal(form);
  const bool has_analysis = morph.has_value();
  const bool permits =
      has_analysis && std::find(morph->begin(), morph->end(),
                                std::string(tree)) != morph->end();
  const bool unique = has_analysis && morph->size() == 1;
  const bool unanalyzed = !has_analysis || morph->empty();

  ExportDecision expected;
  expected.form = std::string(form);
  if (digit) {
    expected.tag = "CARDNUM";
    expected.reason = ExportReason::kDigitPattern;
  } else if (ordinal) {
    expected.tag = "ADJA";
    expected.reason = ExportReason::kDigitPattern;
  } else if (permits) {
    expected.tag = std::string(tree);
    expected.reason = ExportReason::kMorphPermits;
  } else if (unique) {
    expected.tag = morph->front();
    expected.reason = ExportReason::kMorphUnique;
  } else if (unanalyzed && tree == "NE") {
    expected.tag = "NE";
    expected.reason = ExportReason::kNeUnanalyzed;
  } else {
    expected.reason = ExportReason::kNoExport;
  }
  return expected;
}

Corpus combine_train() {
  std::vector<std::vector<std::pair<std::string, std::string>>> sents;
  for (int i = 0; i < 6; ++i) {
    sents.push_back({{"der", "ART"}, {"Hund", "NN"}, {".", "$."}});
    sents.push_back({{"die", "ART"}, {"Katze", "NN"}, {"spielt", "VVFIN"}, {".", "$."}});
    sents.push_back({{"Maria", "NE"}, {"kommt", "VVFIN"}, {".", "$."}});
  }
  return corpus_of(sents);
}

Tagset combine_tagset() {
  return Tagset::from_tags({"ADJA", "ART", "CARDNUM", "NE", "NN", "VVFIN",
                            "VVINF", "$."});
}

}  // namespace

TEST_CASE("export filter follows the five rules in order") {
  // digit pattern always wins
  CHECK(export_filter("1906", "VVFIN", Morph{{"NN"}}) ==
        ExportDecision{"1906", "CARDNUM", ExportReason::kDigitPattern});
  CHECK(export_filter("42.", "NN", std::nullopt) ==
        ExportDecision{"42.", "ADJA", ExportReason::kDigitPattern});
  // the analyzer permits the first tagger's tag
  CHECK(export_filter("gehen", "VVFIN", Morph{{"VVFIN", "VVINF"}}) ==
        ExportDecision{"gehen", "VVFIN", ExportReason::kMorphPermits});
  // unique analyzer proposal beats a disagreeing tagger tag
  CHECK(export_filter("Haus", "ADJA", Morph{{"NN"}}) ==
        ExportDecision{"Haus", "NN", ExportReason::kMorphUnique});
  // multiple proposals, none matching: nothing is exported
  CHECK(export_filter("Weber", "VVFIN", Morph{{"NN", "NE"}}) ==
        ExportDecision{"Weber", "", ExportReason::kNoExport});
  // unanalyzable proper nouns are trusted
  CHECK(export_filter("Xanadu", "NE", Morph{std::vector<std::string>{}}) ==
        ExportDecision{"Xanadu", "NE", ExportReason::kNeUnanalyzed});
  CHECK(export_filter("Xanadu", "NE", std::nullopt) ==
        ExportDecision{"Xanadu", "NE", ExportReason::kNeUnanalyzed});
  // unanalyzable non-NE: nothing
  CHECK(export_filter("blorp", "NN", Morph{std::vector<std::string>{}}) ==
        ExportDecision{"blorp", "", ExportReason::kNoExport});
}

TEST_CASE("export filter matches the reference over the full decision table") {
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
        ExportDecision want = reference_filter(form, tree, morph);
        CHECK(got == want);
        CHECK((got.reason == ExportReason::kNoExport) == got.tag.empty());
        ++cases;
      }
  CHECK(cases == 63);
}

TEST_CASE("tree-then-tbl with no unknown forms equals plain TBL tagging") {
  Corpus train = combine_train();
  Tagset ts = combine_tagset();
  Lexicon lex = Lexicon::build(train);
  DTreeModel dmodel = dtree_train(train, lex, DTreeParams{}, ts);
  TblModel tmodel = train_tbl(train, TblParams{});

  RawCorpus test{{"der", "Hund", "."}, {"Maria", "kommt", "."}};
  CombineOutcome outcome =
      run_tree_then_tbl(test, dmodel, tmodel, ExportMode::kAll, nullptr);
  CHECK(outcome.decisions.empty());
  CHECK(outcome.tagged == tbl_tag(test, tmodel));
  CHECK(!outcome.report.has_value());  // no gold supplied
}

TEST_CASE("tree-then-tbl exports unknown types temporarily") {
  Corpus train = combine_train();
  Tagset ts = combine_tagset();
  Lexicon lex = Lexicon::build(train);
  DTreeModel dmodel = dtree_train(train, lex, DTreeParams{}, ts);
  TblModel tmodel = train_tbl(train, TblParams{});
  const std::size_t lexicon_size_before = tmodel.lexicon.size();

  RawCorpus test{{"der", "Hund", "."},
                 {"Bergmann", "kommt", "."},
                 {"die", "4711", "spielt", "."}};
  Corpus gold = corpus_of({{{"der", "ART"}, {"Hund", "NN"}, {".", "$."}},
                           {{"Bergmann", "NE"}, {"kommt", "VVFIN"}, {".", "$."}},
                           {{"die", "ART"},
                            {"4711", "CARDNUM"},
                            {"spielt", "VVFIN"},
                            {".", "$."}}});
  StubAnalyzer stub(ts);
  CombineOutcome outcome = run_tree_then_tbl(test, dmodel, tmodel,
                                             ExportMode::kFiltered, &stub, &gold);

  // decisions cover exactly the unknown types, sorted, once each
  REQUIRE(outcome.decisions.size() == 2);
  CHECK(outcome.decisions[0].form == "4711");
  CHECK(outcome.decisions[0].tag == "CARDNUM");
  CHECK(outcome.decisions[0].reason == ExportReason::kDigitPattern);
  CHECK(outcome.decisions[1].form == "Bergmann");

  // the receiving model is untouched
  CHECK(tmodel.lexicon.size() == lexicon_size_before);
  CHECK(!tmodel.lexicon.contains("4711"));

  CHECK(outcome.report.has_value());
  CHECK(render_decisions(outcome.decisions).find("digit-pattern") !=
        std::string::npos);
}

TEST_CASE("filtered mode requires an analyzer") {
  Corpus train = combine_train();
  Tagset ts = combine_tagset();
  DTreeModel dmodel = dtree_train(train, Lexicon::build(train), DTreeParams{}, ts);
  TblModel tmodel = train_tbl(train, TblParams{});
  RawCorpus test{{"Neuland"}};
  CHECK_THROWS_AS(
      run_tree_then_tbl(test, dmodel, tmodel, ExportMode::kFiltered, nullptr),
      UsageError);
}

TEST_CASE("tbl-then-tree reaches the ceiling when TBL output is perfect") {
  // Unambiguous vocabulary: TBL tags the test corpus exactly right, the
  // extended training corpus then contains the test sentences verbatim.
  Corpus train = combine_train();
  Tagset ts = combine_tagset();
  TblModel tmodel = train_tbl(train, TblParams{});

  Corpus gold = corpus_of({{{"die", "ART"}, {"Katze", "NN"}, {".", "$."}},
                           {{"Maria", "NE"}, {"kommt", "VVFIN"}, {".", "$."}}});
  RawCorpus test = to_forms(gold);
  TblTreeOutcome outcome =
      run_tbl_then_tree(train, test, tmodel, DTreeParams{}, ts, &gold);
  CHECK(outcome.tagged == gold);
  REQUIRE(outcome.report.has_value());
  CHECK(outcome.report->accuracy == doctest::Approx(100.0));
}

TEST_CASE("empty test input degenerates cleanly") {
  Corpus train = combine_train();
  Tagset ts = combine_tagset();
  DTreeModel dmodel = dtree_train(train, Lexicon::build(train), DTreeParams{}, ts);
  TblModel tmodel = train_tbl(train, TblParams{});
  CombineOutcome outcome =
      run_tree_then_tbl(RawCorpus{}, dmodel, tmodel, ExportMode::kAll, nullptr);
  CHECK(outcome.tagged.sentences.empty());
  CHECK(outcome.decisions.empty());

  TblTreeOutcome reverse =
      run_tbl_then_tree(train, RawCorpus{}, tmodel, DTreeParams{}, ts);
  CHECK(reverse.tagged.sentences.empty());
}
