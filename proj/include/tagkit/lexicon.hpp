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

#ifndef TAGKIT_LEXICON_HPP_
#define TAGKIT_LEXICON_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tagkit/corpus.hpp"
#include "tagkit/tagset.hpp"

namespace tagkit {

enum class EntryOrigin { kCorpus, kExternal };

struct TagCount {
  std::string tag;
  long long count = 0;
  bool operator==(const TagCount&) const = default;
};

// Fullform lexicon entry. Corpus-derived entries are ordered by descending
// count (ties by tag name); external entries carry count 0 and are ordered
// by descending tag prior (ties by tag name).
struct LexiconEntry {
  std::string form;
  std::vector<TagCount> tags;
  EntryOrigin origin = EntryOrigin::kCorpus;
  bool operator==(const LexiconEntry&) const = default;
};

// Highest-count (or highest-prior) tag: the head of the ordered list.
const std::string& most_frequent_tag(const LexiconEntry& entry);

class Lexicon {
 public:
  static Lexicon build(const Corpus& c);
  // One entry per line: form<TAB>tag1 count1<TAB>tag2 count2 ...
  static Lexicon read(std::istream& in, const Tagset* validate = nullptr);
  static Lexicon load(const std::string& path, const Tagset* validate = nullptr);
  void write(std::ostream& out) const;
  void save(const std::string& path) const;

  const LexiconEntry* find(std::string_view form) const;
  bool contains(std::string_view form) const { return find(form) != nullptr; }
  // Distinct tag count; 0 for absent forms (a lexicon gap).
  int ambiguity(std::string_view form) const;
  std::size_t size() const { return entries_.size(); }
  void insert(LexiconEntry entry);

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  bool operator==(const Lexicon&) const = default;

 private:
  std::map<std::string, LexiconEntry, std::less<>> entries_;
};

// Corpus-wide tag probabilities, irrespective of word form.
struct TagPriors {
  std::map<std::string, double> p;
  double prob(std::string_view tag) const;
  bool operator==(const TagPriors&) const = default;
};

TagPriors tag_priors(const Corpus& c);  // throws DataError on an empty corpus
TagPriors read_priors(std::istream& in);
TagPriors load_priors(const std::string& path);
void write_priors(const TagPriors& priors, std::ostream& out);
void save_priors(const TagPriors& priors, const std::string& path);

// Adds external analyses for forms absent from `lex`; forms with empty
// analysis sets stay lexicon gaps. Returns a new lexicon; `lex` itself is
// untouched. Tags outside the tagset raise ValidationError.
Lexicon merge_external(const Lexicon& lex,
                       const std::map<std::string, std::vector<std::string>>& analyses,
                       const TagPriors& priors, const Tagset& tagset);

}  // namespace tagkit

#endif  // TAGKIT_LEXICON_HPP_
