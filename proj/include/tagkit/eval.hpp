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

#ifndef TAGKIT_EVAL_HPP_
#define TAGKIT_EVAL_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "tagkit/corpus.hpp"
#include "tagkit/lexicon.hpp"

namespace tagkit {

// Ambiguity levels above this cap share one bucket ("6+").
inline constexpr int kAmbiguityCap = 6;

struct EvalRow {
  int ambiguity_level = 0;  // kAmbiguityCap means "greater or equal"
  long long tokens = 0;
  long long correct = 0;
  long long lexical_errors = 0;
  long long disambiguation_errors = 0;
  bool operator==(const EvalRow&) const = default;
};

struct EvalReport {
  std::vector<EvalRow> rows;  // ascending ambiguity, empty levels omitted
  EvalRow totals;
  double accuracy = 0.0;        // percent
  double mean_ambiguity = 0.0;  // over in-lexicon tokens
};

// True when an error on this token would be a lexical error: the gold tag
// is not among the form's lexicon tags. Independent of the predicted tag.
bool is_lexical_error(const Lexicon& lex, std::string_view form,
                      std::string_view gold_tag);

// Buckets token-aligned corpora by lexicon ambiguity and splits errors
// into lexical and disambiguation errors.
EvalReport evaluate(const Corpus& gold, const Corpus& predicted,
                    const Lexicon& lex);

struct ErrorTypeCount {
  std::string correct_tag;
  std::string tagger_tag;
  long long count = 0;
  bool operator==(const ErrorTypeCount&) const = default;
};

// Directional (gold, predicted) confusion counts, descending.
std::vector<ErrorTypeCount> error_types(const Corpus& gold,
                                        const Corpus& predicted);

std::string render_table(const EvalReport& r);
std::string render_csv(const EvalReport& r);
std::string render_error_types(const std::vector<ErrorTypeCount>& types);

}  // namespace tagkit

#endif  // TAGKIT_EVAL_HPP_
