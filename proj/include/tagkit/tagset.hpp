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

#ifndef TAGKIT_TAGSET_HPP_
#define TAGKIT_TAGSET_HPP_

#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tagkit {

// The active tag inventory. Tags are short uppercase labels without
// whitespace; the punctuation subset follows the STTS convention of a
// leading '$'.
class Tagset {
 public:
  static Tagset from_tags(std::vector<std::string> tags);
  // One tag per line, '#' starts a comment.
  static Tagset read(std::istream& in);
  static Tagset load(const std::string& path);

  bool contains(std::string_view tag) const;
  const std::vector<std::string>& tags() const { return tags_; }
  std::vector<std::string> punctuation() const;
  std::size_t size() const { return tags_.size(); }

 private:
  std::vector<std::string> tags_;  // file order, duplicates removed
  std::set<std::string, std::less<>> members_;
};

}  // namespace tagkit

#endif  // TAGKIT_TAGSET_HPP_
