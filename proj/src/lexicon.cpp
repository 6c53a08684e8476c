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

#include "tagkit/lexicon.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "tagkit/error.hpp"

namespace tagkit {

namespace {

void sort_by_count(std::vector<TagCount>& tags) {
  std::sort(tags.begin(), tags.end(), [](const TagCount& a, const TagCount& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.tag < b.tag;
  });
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::string& most_frequent_tag(const LexiconEntry& entry) {
  if (entry.tags.empty()) throw DataError("lexicon entry without tags: '" + entry.form + "'");
  return entry.tags.front().tag;
}

Lexicon Lexicon::build(const Corpus& c) {
  std::map<std::string, std::map<std::string, long long>> counts;
  for (const auto& sentence : c.sentences)
    for (const auto& token : sentence.tokens)
      ++counts[token.form][token.tag];
  Lexicon lex;
  for (auto& [form, tag_counts] : counts) {
    LexiconEntry entry;
    entry.form = form;
    entry.origin = EntryOrigin::kCorpus;
    for (auto& [tag, count] : tag_counts) entry.tags.push_back({tag, count});
    sort_by_count(entry.tags);
    lex.entries_.emplace(form, std::move(entry));
  }
  return lex;
}

const LexiconEntry* Lexicon::find(std::string_view form) const {
  auto it = entries_.find(form);
  return it == entries_.end() ? nullptr : &it->second;
}

int Lexicon::ambiguity(std::string_view form) const {
  const LexiconEntry* entry = find(form);
  return entry ? static_cast<int>(entry->tags.size()) : 0;
}

void Lexicon::insert(LexiconEntry entry) {
  std::string form = entry.form;
  entries_[std::move(form)] = std::move(entry);
}

Lexicon Lexicon::read(std::istream& in, const Tagset* validate) {
  Lexicon lex;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos
                                              ? std::string::npos
                                              : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() < 2) throw ParseError("lexicon entry without tags", lineno);
    LexiconEntry entry;
    entry.form = fields[0];
    if (entry.form.empty()) throw ParseError("empty word form", lineno);
    std::set<std::string> seen;
    bool all_zero = true;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const std::string& field = fields[i];
      std::size_t sp = field.find(' ');
      if (sp == std::string::npos || sp == 0)
        throw ParseError("malformed tag-count field: '" + field + "'", lineno);
      std::string tag = field.substr(0, sp);
      char* end = nullptr;
      long long count = std::strtoll(field.c_str() + sp + 1, &end, 10);
      if (end == field.c_str() + sp + 1 || *end != '\0' || count < 0)
        throw ParseError("malformed count in field: '" + field + "'", lineno);
      if (!seen.insert(tag).second)
        throw ParseError("duplicate tag '" + tag + "' in entry", lineno);
      if (validate && !validate->contains(tag))
        throw ValidationError("line " + std::to_string(lineno) +
                              ": tag not in tagset: '" + tag + "'");
      if (count > 0) all_zero = false;
      entry.tags.push_back({std::move(tag), count});
    }
    if (all_zero) {
      entry.origin = EntryOrigin::kExternal;  // keep the stored prior order
    } else {
      entry.origin = EntryOrigin::kCorpus;
      for (const auto& tc : entry.tags)
        if (tc.count < 1)
          throw ParseError("zero count in corpus-derived entry for '" +
                               entry.form + "'",
                           lineno);
      sort_by_count(entry.tags);
    }
    lex.entries_[entry.form] = std::move(entry);
  }
  return lex;
}

Lexicon Lexicon::load(const std::string& path, const Tagset* validate) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon file: " + path);
  return read(in, validate);
}

void Lexicon::write(std::ostream& out) const {
  for (const auto& [form, entry] : entries_) {
    out << form;
    for (const auto& tc : entry.tags) out << '\t' << tc.tag << ' ' << tc.count;
    out << '\n';
  }
}

void Lexicon::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write lexicon file: " + path);
  write(out);
}

double TagPriors::prob(std::string_view tag) const {
  auto it = p.find(std::string(tag));
  return it == p.end() ? 0.0 : it->second;
}

TagPriors tag_priors(const Corpus& c) {
  std::size_t total = c.token_count();
  if (total == 0) throw DataError("tag priors are undefined for an empty corpus");
  std::map<std::string, long long> counts;
  for (const auto& sentence : c.sentences)
    for (const auto& token : sentence.tokens) ++counts[token.tag];
  TagPriors priors;
  for (const auto& [tag, count] : counts)
    priors.p[tag] = static_cast<double>(count) / static_cast<double>(total);
  return priors;
}

TagPriors read_priors(std::istream& in) {
  TagPriors priors;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw ParseError("expected tag<TAB>probability", lineno);
    std::string tag = line.substr(0, tab);
    char* end = nullptr;
    double v = std::strtod(line.c_str() + tab + 1, &end);
    if (end == line.c_str() + tab + 1 || *end != '\0' || v < 0.0 || v > 1.0)
      throw ParseError("malformed probability for tag '" + tag + "'", lineno);
    priors.p[tag] = v;
  }
  return priors;
}

TagPriors load_priors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open priors file: " + path);
  return read_priors(in);
}

void write_priors(const TagPriors& priors, std::ostream& out) {
  for (const auto& [tag, v] : priors.p)
    out << tag << '\t' << format_double(v) << '\n';
}

void save_priors(const TagPriors& priors, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write priors file: " + path);
  write_priors(priors, out);
}

Lexicon merge_external(const Lexicon& lex,
                       const std::map<std::string, std::vector<std::string>>& analyses,
                       const TagPriors& priors, const Tagset& tagset) {
  Lexicon merged = lex;
  for (const auto& [form, analysis] : analyses) {
    if (analysis.empty()) continue;        // stays a lexicon gap
    if (lex.contains(form)) continue;      // never touch existing entries
    std::set<std::string> distinct;
    for (const auto& tag : analysis) {
      if (!tagset.contains(tag))
        throw ValidationError("analysis tag not in tagset: '" + tag +
                              "' (form '" + form + "')");
      distinct.insert(tag);
    }
    LexiconEntry entry;
    entry.form = form;
    entry.origin = EntryOrigin::kExternal;
    for (const auto& tag : distinct) entry.tags.push_back({tag, 0});
    std::sort(entry.tags.begin(), entry.tags.end(),
              [&priors](const TagCount& a, const TagCount& b) {
                double pa = priors.prob(a.tag), pb = priors.prob(b.tag);
                if (pa != pb) return pa > pb;
                return a.tag < b.tag;
              });
    merged.insert(std::move(entry));
  }
  return merged;
}

}  // namespace tagkit
