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

#ifndef TAGKIT_TESTS_HELPERS_HPP_
#define TAGKIT_TESTS_HELPERS_HPP_

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tagkit/corpus.hpp"
#include "tagkit/dtree.hpp"
#include "tagkit/lexicon.hpp"

namespace test_helpers {

using tagkit::Corpus;
using tagkit::DTreeModel;
using tagkit::Lexicon;
using tagkit::RawSentence;
using tagkit::Sentence;
using tagkit::TaggedToken;

inline Corpus corpus_of(
    const std::vector<std::vector<std::pair<std::string, std::string>>>& sents) {
  Corpus c;
  for (const auto& s : sents) {
    Sentence sentence;
    for (const auto& [form, tag] : s) sentence.tokens.push_back({form, tag});
    c.sentences.push_back(std::move(sentence));
  }
  return c;
}

inline RawSentence forms_of(const Sentence& s) {
  RawSentence out;
  for (const auto& t : s.tokens) out.push_back(t.form);
  return out;
}

// Exhaustive-path decoding oracle. Enumerates every candidate tag sequence
// in tag-name order and scores it with the model's own transition and
// emission lookups. Keeps the first maximum and counts how many sequences
// tie with it; when several paths score identically, any of them is a
// valid argmax (the decoder's documented tie-break is per backpointer).
struct BrutePath {
  std::vector<std::string> tags;
  double log_score;
  int n_optimal;
};

inline BrutePath brute_force_best_path(const RawSentence& forms,
                                       const DTreeModel& m) {
  std::vector<std::vector<std::string>> cands;
  for (const auto& form : forms) cands.push_back(candidate_tags(m, form));

  BrutePath best{{}, -1e300, 0};
  std::vector<std::size_t> pick(forms.size(), 0);
  bool done = forms.empty();
  while (!done) {
    double score = 0.0;
    std::vector<std::string> tags;
    for (std::size_t i = 0; i < forms.size(); ++i)
      tags.push_back(cands[i][pick[i]]);
    for (std::size_t i = 0; i < forms.size(); ++i) {
      std::string prev1 = i >= 1 ? tags[i - 1] : std::string(tagkit::kBoundaryTag);
      std::string prev2 = i >= 2 ? tags[i - 2] : std::string(tagkit::kBoundaryTag);
      score += transition_log(m, prev2, prev1, tags[i]);
      score += emission_log(m, forms[i], tags[i]);
    }
    if (score > best.log_score + 1e-12) {
      best = {std::move(tags), score, 1};
    } else if (score > best.log_score - 1e-12) {
      ++best.n_optimal;
    }
    // next tuple, lexicographic
    std::size_t j = forms.size();
    while (j > 0) {
      --j;
      if (++pick[j] < cands[j].size()) break;
      pick[j] = 0;
      if (j == 0) done = true;
    }
  }
  return best;
}

// Small random training corpora for property tests: a vocabulary of forms
// with fixed candidate gold-tag sets, sampled into flat sentences.
struct ToyWorld {
  std::vector<std::string> tags;
  std::vector<std::pair<std::string, std::vector<std::string>>> vocab;
  Corpus corpus;
};

inline ToyWorld random_toy_world(std::mt19937& rng, int n_tags, int n_forms,
                                 int n_sentences, int max_len) {
  static const char* kTagPool[] = {"ADJA", "ART",   "ADV",  "NE",
                                   "NN",   "VVFIN", "VVINF", "APPR",
                                   "KON",  "PPER"};
  static const char* kFormPool[] = {"alpha", "bravo", "chor",  "delta",
                                    "echo",  "fox",   "golf",  "hotel",
                                    "india", "julia", "kilo",  "lima",
                                    "mike",  "nord",  "oscar", "papa"};
  ToyWorld world;
  for (int t = 0; t < n_tags; ++t) world.tags.push_back(kTagPool[t]);
  std::uniform_int_distribution<int> tag_count(1, 3);
  std::uniform_int_distribution<int> tag_pick(0, n_tags - 1);
  for (int f = 0; f < n_forms; ++f) {
    std::vector<std::string> allowed;
    int k = tag_count(rng);
    for (int j = 0; j < k; ++j) {
      std::string tag = world.tags[tag_pick(rng)];
      bool dup = false;
      for (const auto& have : allowed) dup |= have == tag;
      if (!dup) allowed.push_back(tag);
    }
    world.vocab.emplace_back(kFormPool[f], std::move(allowed));
  }
  std::uniform_int_distribution<int> form_pick(0, n_forms - 1);
  std::uniform_int_distribution<int> len_pick(1, max_len);
  for (int s = 0; s < n_sentences; ++s) {
    Sentence sentence;
    int len = len_pick(rng);
    for (int i = 0; i < len; ++i) {
      const auto& [form, allowed] = world.vocab[form_pick(rng)];
      std::uniform_int_distribution<int> pick(0, static_cast<int>(allowed.size()) - 1);
      sentence.tokens.push_back({form, allowed[pick(rng)]});
    }
    world.corpus.sentences.push_back(std::move(sentence));
  }
  return world;
}

}  // namespace test_helpers

#endif  // TAGKIT_TESTS_HELPERS_HPP_
