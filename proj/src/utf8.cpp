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

#include "tagkit/utf8.hpp"

namespace tagkit {

namespace {

std::size_t lead_len(unsigned char b) {
  if (b < 0x80) return 1;
  if ((b & 0xE0) == 0xC0) return 2;
  if ((b & 0xF0) == 0xE0) return 3;
  if ((b & 0xF8) == 0xF0) return 4;
  return 1;  // stray continuation or invalid byte
}

}  // namespace

std::vector<std::string> utf8_chars(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t n = lead_len(static_cast<unsigned char>(s[i]));
    if (i + n > s.size()) n = 1;
    out.emplace_back(s.substr(i, n));
    i += n;
  }
  return out;
}

std::size_t utf8_length(std::string_view s) {
  std::size_t count = 0, i = 0;
  while (i < s.size()) {
    std::size_t n = lead_len(static_cast<unsigned char>(s[i]));
    if (i + n > s.size()) n = 1;
    i += n;
    ++count;
  }
  return count;
}

std::string utf8_suffix(std::string_view s, std::size_t k) {
  std::vector<std::string> chars = utf8_chars(s);
  std::size_t start = chars.size() > k ? chars.size() - k : 0;
  std::string out;
  for (std::size_t i = start; i < chars.size(); ++i) out += chars[i];
  return out;
}

std::string utf8_prefix(std::string_view s, std::size_t k) {
  std::vector<std::string> chars = utf8_chars(s);
  std::string out;
  for (std::size_t i = 0; i < chars.size() && i < k; ++i) out += chars[i];
  return out;
}

bool starts_uppercase(std::string_view s) {
  if (s.empty()) return false;
  unsigned char b = static_cast<unsigned char>(s[0]);
  if (b >= 'A' && b <= 'Z') return true;
  // A-umlaut, O-umlaut, U-umlaut (U+00C4, U+00D6, U+00DC)
  if (b == 0xC3 && s.size() >= 2) {
    unsigned char c = static_cast<unsigned char>(s[1]);
    return c == 0x84 || c == 0x96 || c == 0x9C;
  }
  return false;
}

}  // namespace tagkit
