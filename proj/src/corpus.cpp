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

#include "tagkit/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tagkit/error.hpp"

namespace tagkit {

namespace {

// Normalizes CRLF input; the toolkit writes LF only.
void chomp_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::size_t Corpus::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

Corpus read_vertical(std::istream& in, const Tagset* validate) {
  Corpus corpus;
  Sentence current;
  std::string line;
  long lineno = 0;
  auto close_sentence = [&] {
    if (!current.tokens.empty()) {
      corpus.sentences.push_back(std::move(current));
      current = Sentence{};
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    chomp_cr(line);
    if (line.empty()) {
      close_sentence();
      continue;
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("missing tab separator: '" + line + "'", lineno);
    std::string form = line.substr(0, tab);
    std::string tag = line.substr(tab + 1);
    if (form.empty()) throw ParseError("empty word form", lineno);
    if (tag.empty()) throw ParseError("empty tag", lineno);
    if (tag.find_first_of(" \t") != std::string::npos)
      throw ParseError("tag contains whitespace: '" + tag + "'", lineno);
    if (validate && !validate->contains(tag))
      throw ValidationError("line " + std::to_string(lineno) +
                            ": tag not in tagset: '" + tag + "'");
    current.tokens.push_back({std::move(form), std::move(tag)});
  }
  close_sentence();
  return corpus;
}

Corpus load_vertical(const std::string& path, const Tagset* validate) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file: " + path);
  return read_vertical(in, validate);
}

void write_vertical(const Corpus& c, std::ostream& out) {
  bool first = true;
  for (const auto& sentence : c.sentences) {
    if (!first) out << '\n';
    first = false;
    for (const auto& token : sentence.tokens)
      out << token.form << '\t' << token.tag << '\n';
  }
}

std::string write_vertical(const Corpus& c) {
  std::ostringstream out;
  write_vertical(c, out);
  return out.str();
}

void save_vertical(const Corpus& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write corpus file: " + path);
  write_vertical(c, out);
}

RawCorpus read_vertical_forms(std::istream& in) {
  RawCorpus raw;
  RawSentence current;
  std::string line;
  long lineno = 0;
  auto close_sentence = [&] {
    if (!current.empty()) {
      raw.push_back(std::move(current));
      current = RawSentence{};
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    chomp_cr(line);
    if (line.empty()) {
      close_sentence();
      continue;
    }
    std::size_t tab = line.find('\t');
    std::string form = tab == std::string::npos ? line : line.substr(0, tab);
    if (form.empty()) throw ParseError("empty word form", lineno);
    current.push_back(std::move(form));
  }
  close_sentence();
  return raw;
}

RawCorpus load_vertical_forms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file: " + path);
  return read_vertical_forms(in);
}

RawCorpus to_forms(const Corpus& c) {
  RawCorpus raw;
  raw.reserve(c.sentences.size());
  for (const auto& sentence : c.sentences) {
    RawSentence forms;
    forms.reserve(sentence.tokens.size());
    for (const auto& token : sentence.tokens) forms.push_back(token.form);
    raw.push_back(std::move(forms));
  }
  return raw;
}

std::pair<Corpus, Corpus> split_sentencewise(const Corpus& c, int denominator) {
  if (denominator < 2)
    throw UsageError("split denominator must be at least 2");
  Corpus train, test;
  for (std::size_t i = 0; i < c.sentences.size(); ++i) {
    if ((i + 1) % static_cast<std::size_t>(denominator) == 0)
      test.sentences.push_back(c.sentences[i]);
    else
      train.sentences.push_back(c.sentences[i]);
  }
  return {std::move(train), std::move(test)};
}

bool is_digit_sequence(std::string_view form) {
  // [0-9]+([.,:][0-9]+)*
  std::size_t i = 0;
  auto digits = [&]() {
    std::size_t start = i;
    while (i < form.size() && form[i] >= '0' && form[i] <= '9') ++i;
    return i > start;
  };
  if (!digits()) return false;
  while (i < form.size()) {
    char sep = form[i];
    if (sep != '.' && sep != ',' && sep != ':') return false;
    ++i;
    if (!digits()) return false;
  }
  return true;
}

bool is_digit_ordinal(std::string_view form) {
  return form.size() >= 2 && form.back() == '.' &&
         is_digit_sequence(form.substr(0, form.size() - 1));
}

Corpus remap_cardnum(Corpus c) {
  for (auto& sentence : c.sentences)
    for (auto& token : sentence.tokens)
      if (token.tag == kCardTag && is_digit_sequence(token.form))
        token.tag = std::string(kCardnumTag);
  return c;
}

}  // namespace tagkit
