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

#ifndef TAGKIT_MORPH_HPP_
#define TAGKIT_MORPH_HPP_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tagkit/tagset.hpp"

namespace tagkit {

// One analysis per word type; an empty tag list means "no analysis".
struct MorphAnalysis {
  std::string form;
  std::vector<std::string> tags;  // sorted, distinct
  bool operator==(const MorphAnalysis&) const = default;
};

class Analyzer {
 public:
  virtual ~Analyzer() = default;
  // One result per input form, same order.
  virtual std::vector<MorphAnalysis> analyze_batch(
      const std::vector<std::string>& forms) const = 0;
};

// Heuristic stand-in for a wide-coverage analyzer: digit sequences are
// numbers, digit ordinals adjectives, capitalized forms nouns or proper
// nouns, -en/-eln/-ern forms verbs. Anything else is unanalyzable.
class StubAnalyzer final : public Analyzer {
 public:
  explicit StubAnalyzer(const Tagset& tagset);
  std::vector<MorphAnalysis> analyze_batch(
      const std::vector<std::string>& forms) const override;
};

// Native analyzer category -> tagset tags. Categories that already are
// tagset members pass through unmapped.
struct MorphTagMap {
  std::map<std::string, std::vector<std::string>> table;
  static MorphTagMap read(std::istream& in);
  static MorphTagMap load(const std::string& path);
};

// Offline batch adapter. analyze_batch writes the request file (one form
// per line) and reads an already-prepared response file with lines
// `form<TAB>CAT1 CAT2 ...` (empty category field = unanalyzable).
class FileAnalyzer final : public Analyzer {
 public:
  FileAnalyzer(std::string request_path, std::string response_path,
               MorphTagMap map, const Tagset& tagset);
  std::vector<MorphAnalysis> analyze_batch(
      const std::vector<std::string>& forms) const override;

 private:
  std::string request_path_;
  std::string response_path_;
  MorphTagMap map_;
  const Tagset tagset_;
};

// spec is "stub" or "file:REQUEST,RESPONSE"; tagmap_path may be empty.
std::unique_ptr<Analyzer> make_analyzer(const std::string& spec,
                                        const Tagset& tagset,
                                        const std::string& tagmap_path);

}  // namespace tagkit

#endif  // TAGKIT_MORPH_HPP_
