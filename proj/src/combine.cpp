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

#include "tagkit/combine.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tagkit/error.hpp"

namespace tagkit {

std::string_view to_string(ExportReason r) {
  switch (r) {
    case ExportReason::kDigitPattern:
      return "digit-pattern";
    case ExportReason::kMorphPermits:
      return "morph-permits";
    case ExportReason::kMorphUnique:
      return "morph-unique";
    case ExportReason::kNeUnanalyzed:
      return "ne-unanalyzed";
    case ExportReason::kNoExport:
      return "no-export";
    case ExportReason::kExportAll:
      return "export-all";
  }
  return "no-export";
}

ExportDecision export_filter(std::string_view form, std::string_view tree_tag,
                             const std::optional<std::vector<std::string>>& morph_tags) {
  ExportDecision decision;
  decision.form = std::string(form);
  // 1. Digit-sequence numbers always get the correct numeric tag.
  if (is_digit_sequence(form)) {
    decision.tag = std::string(kCardnumTag);
    decision.reason = ExportReason::kDigitPattern;
    return decision;
  }
  if (is_digit_ordinal(form)) {
    decision.tag = "ADJA";  // the attributive ordinal reading
    decision.reason = ExportReason::kDigitPattern;
    return decision;
  }
  // 2. The first tagger's tag, when the analyzer permits it.
  if (morph_tags) {
    const auto& tags = *morph_tags;
    if (std::find(tags.begin(), tags.end(), tree_tag) != tags.end()) {
      decision.tag = std::string(tree_tag);
      decision.reason = ExportReason::kMorphPermits;
      return decision;
    }
    // 3. A unique analyzer proposal.
    if (tags.size() == 1) {
      decision.tag = tags.front();
      decision.reason = ExportReason::kMorphUnique;
      return decision;
    }
  }
  // 4. Unanalyzable proper nouns.
  if ((!morph_tags || morph_tags->empty()) && tree_tag == "NE") {
    decision.tag = "NE";
    decision.reason = ExportReason::kNeUnanalyzed;
    return decision;
  }
  // 5. Everything else: nothing is exported.
  decision.reason = ExportReason::kNoExport;
  return decision;
}

namespace {

// The first tagger may assign different tags to occurrences of a type; the
// exported tag is the most frequent assignment, ties by name.
std::string majority_tag(const std::map<std::string, long long>& assignments) {
  std::string best;
  long long best_count = -1;
  for (const auto& [tag, count] : assignments)
    if (count > best_count) {
      best = tag;
      best_count = count;
    }
  return best;
}

}  // namespace

CombineOutcome run_tree_then_tbl(const RawCorpus& test, const DTreeModel& dmodel,
                                 const TblModel& tmodel, ExportMode mode,
                                 const Analyzer* analyzer, const Corpus* gold) {
  if (mode == ExportMode::kFiltered && analyzer == nullptr)
    throw UsageError("filtered export needs a morphological analyzer");

  Corpus tree_tagged = dtree_tag(test, dmodel);

  // Tag assignments per type unknown to the receiving lexicon.
  std::map<std::string, std::map<std::string, long long>> unknown_assignments;
  for (const auto& sentence : tree_tagged.sentences)
    for (const auto& token : sentence.tokens)
      if (!tmodel.lexicon.contains(token.form))
        ++unknown_assignments[token.form][token.tag];

  std::vector<std::string> unknown_forms;
  unknown_forms.reserve(unknown_assignments.size());
  for (const auto& [form, tags] : unknown_assignments)
    unknown_forms.push_back(form);

  std::map<std::string, std::vector<std::string>> analyses;
  if (mode == ExportMode::kFiltered) {
    for (const auto& analysis : analyzer->analyze_batch(unknown_forms))
      analyses[analysis.form] = analysis.tags;
  }

  CombineOutcome outcome;
  Lexicon extended = tmodel.lexicon;
  for (const auto& form : unknown_forms) {
    std::string tree_tag = majority_tag(unknown_assignments[form]);
    ExportDecision decision;
    if (mode == ExportMode::kAll) {
      decision.form = form;
      decision.tag = tree_tag;
      decision.reason = ExportReason::kExportAll;
    } else {
      decision = export_filter(form, tree_tag, analyses[form]);
    }
    if (!decision.tag.empty()) {
      LexiconEntry entry;
      entry.form = form;
      entry.origin = EntryOrigin::kCorpus;
      entry.tags.push_back({decision.tag, 1});
      extended.insert(std::move(entry));
    }
    outcome.decisions.push_back(std::move(decision));
  }

  TblModel working = tmodel;  // the persisted model stays untouched
  working.lexicon = std::move(extended);
  outcome.tagged = tbl_tag(test, working);
  if (gold) outcome.report = evaluate(*gold, outcome.tagged, tmodel.lexicon);
  return outcome;
}

TblTreeOutcome run_tbl_then_tree(const Corpus& train, const RawCorpus& test,
                                 const TblModel& tmodel, const DTreeParams& dparams,
                                 const Tagset& tagset, const Corpus* gold) {
  Corpus tbl_tagged = tbl_tag(test, tmodel);

  // Extend the training corpus with the machine-tagged test corpus; the
  // rebuilt lexicon then carries the TBL-assigned tags for unknown forms.
  Corpus extended = train;
  extended.sentences.insert(extended.sentences.end(),
                            tbl_tagged.sentences.begin(),
                            tbl_tagged.sentences.end());
  Lexicon extended_lex = Lexicon::build(extended);
  DTreeModel dmodel = dtree_train(extended, extended_lex, dparams, tagset);

  TblTreeOutcome outcome;
  outcome.tagged = dtree_tag(test, dmodel);
  if (gold) outcome.report = evaluate(*gold, outcome.tagged, tmodel.lexicon);
  return outcome;
}

std::string render_decisions(const std::vector<ExportDecision>& decisions) {
  std::ostringstream out;
  for (const auto& d : decisions)
    out << d.form << '\t' << (d.tag.empty() ? "-" : d.tag) << '\t'
        << to_string(d.reason) << '\n';
  return out.str();
}

}  // namespace tagkit
