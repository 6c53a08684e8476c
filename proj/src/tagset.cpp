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

#include "tagkit/tagset.hpp"

#include <fstream>
#include <istream>

#include "tagkit/error.hpp"

namespace tagkit {

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Tagset Tagset::from_tags(std::vector<std::string> tags) {
  Tagset ts;
  for (auto& t : tags) {
    if (t.empty()) throw ValidationError("empty tag name in tagset");
    if (t.find_first_of(" \t\r\n") != std::string::npos)
      throw ValidationError("tag name contains whitespace: '" + t + "'");
    if (ts.members_.insert(t).second) ts.tags_.push_back(std::move(t));
  }
  return ts;
}

Tagset Tagset::read(std::istream& in) {
  std::vector<std::string> tags;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string tag = strip(line);
    if (tag.empty()) continue;
    if (tag.find_first_of(" \t") != std::string::npos)
      throw ParseError("tag name contains whitespace: '" + tag + "'", lineno);
    tags.push_back(std::move(tag));
  }
  return from_tags(std::move(tags));
}

Tagset Tagset::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open tagset file: " + path);
  return read(in);
}

bool Tagset::contains(std::string_view tag) const {
  return members_.find(tag) != members_.end();
}

std::vector<std::string> Tagset::punctuation() const {
  std::vector<std::string> out;
  for (const auto& t : tags_)
    if (!t.empty() && t[0] == '$') out.push_back(t);
  return out;
}

}  // namespace tagkit
