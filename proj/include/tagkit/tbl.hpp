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

#ifndef TAGKIT_TBL_HPP_
#define TAGKIT_TBL_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tagkit/corpus.hpp"
#include "tagkit/lexicon.hpp"

namespace tagkit {

// Tag given to forms the lexicon does not know (German capitalizes all
// nouns, so a capitalization split would be degenerate).
inline constexpr std::string_view kDefaultUnknownTag = "NN";
// from_tag value matching any current tag.
inline constexpr std::string_view kWildcardTag = "*";

// Unknown-word guessing templates, form-internal or adjacent-word based.
enum class LexTemplate {
  kCharContains = 0,
  kHasSuffix,     // 1..4 trailing characters
  kHasPrefix,     // 1..4 leading characters
  kGoodRightWord, // trigger word stands immediately to the right
  kGoodLeftWord,  // trigger word stands immediately to the left
};

struct LexicalRule {
  LexTemplate tmpl;
  std::string trigger;
  std::string from_tag;  // "*" = any
  std::string to_tag;
  long long score = 0;
  bool operator==(const LexicalRule&) const = default;
};

// Context templates, reaching at most 3 tokens left/right.
enum class CtxTemplate {
  kPrevTag = 0,
  kNextTag,
  kPrev1or2Tag,
  kPrev1or2or3Tag,
  kNext1or2Tag,
  kNext1or2or3Tag,
  kPrevBigramTags,  // the two preceding tags, left-to-right
  kNextBigramTags,  // the two following tags, left-to-right
  kSurroundTags,    // previous and next tag
  kPrevWord,
  kNextWord,
  kWordAndPrevTag,  // current word plus previous tag
  kWordAndNextTag,  // current word plus next tag
};

struct ContextualRule {
  CtxTemplate tmpl;
  std::string trigger1;
  std::string trigger2;  // empty for one-trigger templates
  std::string from_tag;
  std::string to_tag;
  long long score = 0;
  bool operator==(const ContextualRule&) const = default;
};

struct TblParams {
  long long lexical_threshold = 2;
  long long contextual_threshold = 1;
  long long bigram_restriction = 500;
  bool operator==(const TblParams&) const = default;
};

struct TblModel {
  Lexicon lexicon;
  std::vector<LexicalRule> lexical_rules;
  std::vector<ContextualRule> contextual_rules;
  std::vector<std::string> frequent_words;  // descending frequency
  TblParams params;
};

// Known forms get their most frequent tag; unknown forms the default tag.
Corpus initial_tag(const RawCorpus& raw, const Lexicon& lex);

// The n most frequent forms, frequency descending, ties by form.
std::vector<std::string> top_frequent_forms(const Corpus& c, long long n);

// Greedy error-driven learning over forms occurring exactly once in the
// training corpus (simulated unknowns). Stops when the best candidate's
// net score (corrections minus miscorrections) drops below the threshold.
std::vector<LexicalRule> learn_lexical(const Corpus& train, const Lexicon& lex,
                                       long long threshold);

// Greedy learning over the context templates on the full training corpus,
// starting from the most-frequent-tag initialization. Word-based templates
// only use forms among the bigram_restriction most frequent words. A rule
// retags a known form only to a tag its lexicon entry admits.
std::vector<ContextualRule> learn_contextual(const Corpus& train,
                                             const Lexicon& lex,
                                             long long threshold,
                                             long long bigram_restriction);

TblModel train_tbl(const Corpus& train, const TblParams& params);

Sentence tbl_tag_sentence(const RawSentence& forms, const TblModel& model);
Corpus tbl_tag(const RawCorpus& raw, const TblModel& model, int jobs = 1);

// Plain-text rule and word-list formats, reloadable without retraining.
std::string_view to_string(LexTemplate t);
std::string_view to_string(CtxTemplate t);
void write_lexical_rules(const std::vector<LexicalRule>& rules, std::ostream& out);
std::vector<LexicalRule> read_lexical_rules(std::istream& in);
void write_contextual_rules(const std::vector<ContextualRule>& rules, std::ostream& out);
std::vector<ContextualRule> read_contextual_rules(std::istream& in);
void write_wordlist(const std::vector<std::string>& words, std::ostream& out);
std::vector<std::string> read_wordlist(std::istream& in);

// Model persistence as a file family: <prefix>.lexicon, .lexical-rules,
// .context-rules, .frequent-words, .params.
void save_tbl_model(const TblModel& model, const std::string& prefix);
TblModel load_tbl_model(const std::string& prefix);

}  // namespace tagkit

#endif  // TAGKIT_TBL_HPP_
