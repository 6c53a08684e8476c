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

#ifndef TAGKIT_CORPUS_HPP_
#define TAGKIT_CORPUS_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tagkit/tagset.hpp"

namespace tagkit {

struct TaggedToken {
  std::string form;
  std::string tag;
  bool operator==(const TaggedToken&) const = default;
};

struct Sentence {
  std::vector<TaggedToken> tokens;
  bool operator==(const Sentence&) const = default;
};

struct Corpus {
  std::vector<Sentence> sentences;
  std::size_t token_count() const;
  bool operator==(const Corpus&) const = default;
};

// A corpus stripped to its surface forms (tagging input).
using RawSentence = std::vector<std::string>;
using RawCorpus = std::vector<RawSentence>;

inline constexpr std::string_view kCardTag = "CARD";
inline constexpr std::string_view kCardnumTag = "CARDNUM";

// Synthetic tag standing in for positions outside a sentence. Both taggers
// use it for boundary context; it is never a member of a real tagset.
inline constexpr std::string_view kBoundaryTag = "<s>";

// Vertical format: one `form<TAB>tag` per line, blank line between
// sentences, trailing blank lines ignored. When a tagset is given, every
// tag must be a member.
Corpus read_vertical(std::istream& in, const Tagset* validate = nullptr);
Corpus load_vertical(const std::string& path, const Tagset* validate = nullptr);
void write_vertical(const Corpus& c, std::ostream& out);
std::string write_vertical(const Corpus& c);
void save_vertical(const Corpus& c, const std::string& path);

// Tagging input: accepts both bare forms and tagged lines (tag ignored).
RawCorpus read_vertical_forms(std::istream& in);
RawCorpus load_vertical_forms(const std::string& path);
RawCorpus to_forms(const Corpus& c);

// Deterministic round-robin split: every denominator-th sentence (1-based)
// goes to test, the rest to train.
std::pair<Corpus, Corpus> split_sentencewise(const Corpus& c, int denominator);

// Digit-sequence numbers: [0-9]+([.,:][0-9]+)*
bool is_digit_sequence(std::string_view form);
// Digit-sequence followed by a final '.', the written ordinal form.
bool is_digit_ordinal(std::string_view form);

// Retags digit-sequence CARD tokens as CARDNUM; everything else unchanged.
Corpus remap_cardnum(Corpus c);

}  // namespace tagkit

#endif  // TAGKIT_CORPUS_HPP_
