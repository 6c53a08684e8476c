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

#ifndef TAGKIT_COMBINE_HPP_
#define TAGKIT_COMBINE_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tagkit/corpus.hpp"
#include "tagkit/dtree.hpp"
#include "tagkit/eval.hpp"
#include "tagkit/morph.hpp"
#include "tagkit/tbl.hpp"

namespace tagkit {

enum class ExportMode { kAll, kFiltered };

enum class ExportReason {
  kDigitPattern,
  kMorphPermits,
  kMorphUnique,
  kNeUnanalyzed,
  kNoExport,
  kExportAll,  // export-all policy: the first tagger's tag, unconditionally
};

std::string_view to_string(ExportReason r);

struct ExportDecision {
  std::string form;
  std::string tag;  // empty = nothing exported
  ExportReason reason = ExportReason::kNoExport;
  bool operator==(const ExportDecision&) const = default;
};

// Filtered export policy, rules in order: digit pattern wins outright;
// then the first tagger's tag if the analyzer permits it; then a unique
// analyzer tag; then NE for unanalyzable forms the tagger called NE;
// otherwise nothing. morph_tags == nullopt means "no analysis available".
ExportDecision export_filter(std::string_view form, std::string_view tree_tag,
                             const std::optional<std::vector<std::string>>& morph_tags);

struct CombineOutcome {
  Corpus tagged;
  std::vector<ExportDecision> decisions;  // one per unknown type, by form
  std::optional<EvalReport> report;
};

// Tags with the decision-tree tagger, exports tags for types unknown to
// the TBL lexicon (per policy), then tags with TBL using the temporarily
// extended lexicon. The persisted TBL model is never modified.
CombineOutcome run_tree_then_tbl(const RawCorpus& test, const DTreeModel& dmodel,
                                 const TblModel& tmodel, ExportMode mode,
                                 const Analyzer* analyzer,
                                 const Corpus* gold = nullptr);

struct TblTreeOutcome {
  Corpus tagged;
  std::optional<EvalReport> report;
};

// Tags with TBL, extends the training corpus with the TBL-tagged test
// corpus, retrains the decision-tree tagger on the extension, and tags.
TblTreeOutcome run_tbl_then_tree(const Corpus& train, const RawCorpus& test,
                                 const TblModel& tmodel, const DTreeParams& dparams,
                                 const Tagset& tagset, const Corpus* gold = nullptr);

// One `form<TAB>tag-or--<TAB>reason` line per decision.
std::string render_decisions(const std::vector<ExportDecision>& decisions);

}  // namespace tagkit

#endif  // TAGKIT_COMBINE_HPP_
