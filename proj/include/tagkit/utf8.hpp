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

#ifndef TAGKIT_UTF8_HPP_
#define TAGKIT_UTF8_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace tagkit {

// Splits a UTF-8 string into its codepoints, each returned as the byte
// sequence encoding it. Invalid lead bytes are passed through one byte at
// a time so that arbitrary input never throws.
std::vector<std::string> utf8_chars(std::string_view s);

std::size_t utf8_length(std::string_view s);

// Last / first k codepoints (the whole string when shorter).
std::string utf8_suffix(std::string_view s, std::size_t k);
std::string utf8_prefix(std::string_view s, std::size_t k);

// True for forms starting with A-Z or one of the German uppercase umlauts.
bool starts_uppercase(std::string_view s);

}  // namespace tagkit

#endif  // TAGKIT_UTF8_HPP_
