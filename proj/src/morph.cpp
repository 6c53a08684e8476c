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

#include "tagkit/morph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "tagkit/corpus.hpp"
#include "tagkit/error.hpp"
#include "tagkit/utf8.hpp"

namespace tagkit {

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

std::vector<std::string> sorted_unique(std::set<std::string>&& tags) {
  return {tags.begin(), tags.end()};
}

}  // namespace

StubAnalyzer::StubAnalyzer(const Tagset& tagset) {
  for (const char* tag : {"CARDNUM", "ADJA", "NN", "NE", "VVFIN", "VVINF"})
    if (!tagset.contains(tag))
      throw ValidationError(std::string("stub analyzer needs tag '") + tag +
                            "' in the tagset");
}

std::vector<MorphAnalysis> StubAnalyzer::analyze_batch(
    const std::vector<std::string>& forms) const {
  std::vector<MorphAnalysis> out;
  out.reserve(forms.size());
  for (const auto& form : forms) {
    std::set<std::string> tags;
    if (is_digit_sequence(form)) {
      tags.insert("CARDNUM");
    } else if (is_digit_ordinal(form)) {
      tags.insert("ADJA");
    } else {
      if (starts_uppercase(form)) {
        tags.insert("NN");
        tags.insert("NE");
      }
      if (ends_with(form, "en") || ends_with(form, "eln") || ends_with(form, "ern")) {
        tags.insert("VVFIN");
        tags.insert("VVINF");
      }
    }
    out.push_back({form, sorted_unique(std::move(tags))});
  }
  return out;
}

MorphTagMap MorphTagMap::read(std::istream& in) {
  MorphTagMap map;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw ParseError("expected native-category<TAB>tags", lineno);
    std::string native = line.substr(0, tab);
    std::istringstream rest(line.substr(tab + 1));
    std::vector<std::string> tags;
    std::string tag;
    while (rest >> tag) tags.push_back(tag);
    if (tags.empty()) throw ParseError("no tags for category '" + native + "'", lineno);
    map.table[native] = std::move(tags);
  }
  return map;
}

MorphTagMap MorphTagMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open tag map file: " + path);
  return read(in);
}

FileAnalyzer::FileAnalyzer(std::string request_path, std::string response_path,
                           MorphTagMap map, const Tagset& tagset)
    : request_path_(std::move(request_path)),
      response_path_(std::move(response_path)),
      map_(std::move(map)),
      tagset_(tagset) {}

std::vector<MorphAnalysis> FileAnalyzer::analyze_batch(
    const std::vector<std::string>& forms) const {
  {
    std::ofstream req(request_path_);
    if (!req) throw IoError("cannot write analyzer request file: " + request_path_);
    for (const auto& form : forms) req << form << '\n';
  }
  std::ifstream resp(response_path_);
  if (!resp) throw IoError("cannot open analyzer response file: " + response_path_);

  std::map<std::string, std::vector<std::string>> answers;
  std::string line;
  long lineno = 0;
  while (std::getline(resp, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw ParseError("expected form<TAB>categories in analyzer response", lineno);
    std::string form = line.substr(0, tab);
    std::istringstream rest(line.substr(tab + 1));
    std::set<std::string> tags;
    std::string cat;
    while (rest >> cat) {
      if (tagset_.contains(cat)) {
        tags.insert(cat);
        continue;
      }
      auto it = map_.table.find(cat);
      if (it == map_.table.end())
        throw DataError("unmapped analyzer category: '" + cat + "' (form '" +
                        form + "')");
      for (const auto& mapped : it->second) {
        if (!tagset_.contains(mapped))
          throw ValidationError("tag map target not in tagset: '" + mapped + "'");
        tags.insert(mapped);
      }
    }
    answers[std::move(form)] = sorted_unique(std::move(tags));
  }

  std::vector<MorphAnalysis> out;
  out.reserve(forms.size());
  for (const auto& form : forms) {
    auto it = answers.find(form);
    if (it == answers.end())
      throw IoError("analyzer response is missing form: '" + form + "'");
    out.push_back({form, it->second});
  }
  return out;
}

std::unique_ptr<Analyzer> make_analyzer(const std::string& spec,
                                        const Tagset& tagset,
                                        const std::string& tagmap_path) {
  if (spec == "stub") return std::make_unique<StubAnalyzer>(tagset);
  if (spec.rfind("file:", 0) == 0) {
    std::string rest = spec.substr(5);
    std::size_t comma = rest.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == rest.size())
      throw UsageError("file analyzer needs 'file:REQUEST,RESPONSE'");
    MorphTagMap map;
    if (!tagmap_path.empty()) map = MorphTagMap::load(tagmap_path);
    return std::make_unique<FileAnalyzer>(rest.substr(0, comma),
                                          rest.substr(comma + 1), std::move(map),
                                          tagset);
  }
  throw UsageError("unknown analyzer: '" + spec + "' (expected stub or file:...)");
}

}  // namespace tagkit
