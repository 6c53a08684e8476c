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

#include "tagkit/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "tagkit/error.hpp"

namespace tagkit {

namespace {

// Percentages are rendered with two decimals, half-up.
double pct2(double v) { return std::floor(v * 100.0 + 0.5) / 100.0; }

std::string fmt_pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", pct2(v));
  return buf;
}

void check_aligned(const Corpus& gold, const Corpus& predicted) {
  if (gold.sentences.size() != predicted.sentences.size())
    throw AlignmentError("corpora differ in sentence count (" +
                         std::to_string(gold.sentences.size()) + " vs " +
                         std::to_string(predicted.sentences.size()) + ")");
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    const auto& g = gold.sentences[s].tokens;
    const auto& p = predicted.sentences[s].tokens;
    std::size_t n = std::min(g.size(), p.size());
    for (std::size_t i = 0; i < n; ++i)
      if (g[i].form != p[i].form)
        throw AlignmentError("corpora diverge at sentence " +
                             std::to_string(s + 1) + ", token " +
                             std::to_string(i + 1) + ": '" + g[i].form +
                             "' vs '" + p[i].form + "'");
    if (g.size() != p.size())
      throw AlignmentError("corpora diverge at sentence " +
                           std::to_string(s + 1) + ": " +
                           std::to_string(g.size()) + " vs " +
                           std::to_string(p.size()) + " tokens");
  }
}

std::string level_label(int level) {
  if (level >= kAmbiguityCap) return std::to_string(kAmbiguityCap) + "+";
  return std::to_string(level);
}

}  // namespace

bool is_lexical_error(const Lexicon& lex, std::string_view form,
                      std::string_view gold_tag) {
  const LexiconEntry* entry = lex.find(form);
  if (!entry) return true;  // every error on a lexicon gap is lexical
  for (const auto& tc : entry->tags)
    if (tc.tag == gold_tag) return false;
  return true;
}

EvalReport evaluate(const Corpus& gold, const Corpus& predicted,
                    const Lexicon& lex) {
  check_aligned(gold, predicted);

  std::map<int, EvalRow> rows;
  long long known_tokens = 0;
  long long ambiguity_sum = 0;
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    for (std::size_t i = 0; i < gold.sentences[s].tokens.size(); ++i) {
      const TaggedToken& g = gold.sentences[s].tokens[i];
      const TaggedToken& p = predicted.sentences[s].tokens[i];
      int ambiguity = lex.ambiguity(g.form);
      if (ambiguity > 0) {
        ++known_tokens;
        ambiguity_sum += ambiguity;
      }
      int level = std::min(ambiguity, kAmbiguityCap);
      EvalRow& row = rows.try_emplace(level, EvalRow{level}).first->second;
      ++row.tokens;
      if (p.tag == g.tag)
        ++row.correct;
      else if (is_lexical_error(lex, g.form, g.tag))
        ++row.lexical_errors;
      else
        ++row.disambiguation_errors;
    }
  }

  EvalReport report;
  report.totals.ambiguity_level = -1;
  for (const auto& [level, row] : rows) {
    report.rows.push_back(row);
    report.totals.tokens += row.tokens;
    report.totals.correct += row.correct;
    report.totals.lexical_errors += row.lexical_errors;
    report.totals.disambiguation_errors += row.disambiguation_errors;
  }
  report.accuracy =
      report.totals.tokens > 0
          ? 100.0 * static_cast<double>(report.totals.correct) /
                static_cast<double>(report.totals.tokens)
          : 0.0;
  report.mean_ambiguity =
      known_tokens > 0 ? static_cast<double>(ambiguity_sum) /
                             static_cast<double>(known_tokens)
                       : 0.0;
  return report;
}

std::vector<ErrorTypeCount> error_types(const Corpus& gold,
                                        const Corpus& predicted) {
  check_aligned(gold, predicted);
  std::map<std::pair<std::string, std::string>, long long> counts;
  for (std::size_t s = 0; s < gold.sentences.size(); ++s)
    for (std::size_t i = 0; i < gold.sentences[s].tokens.size(); ++i) {
      const TaggedToken& g = gold.sentences[s].tokens[i];
      const TaggedToken& p = predicted.sentences[s].tokens[i];
      if (g.tag != p.tag) ++counts[{g.tag, p.tag}];
    }
  std::vector<ErrorTypeCount> out;
  out.reserve(counts.size());
  for (const auto& [pair, count] : counts)
    out.push_back({pair.first, pair.second, count});
  std::sort(out.begin(), out.end(),
            [](const ErrorTypeCount& a, const ErrorTypeCount& b) {
              if (a.count != b.count) return a.count > b.count;
              if (a.correct_tag != b.correct_tag)
                return a.correct_tag < b.correct_tag;
              return a.tagger_tag < b.tagger_tag;
            });
  return out;
}

std::string render_table(const EvalReport& r) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%9s %8s %7s %8s %7s %6s %7s %6s %7s\n",
                "ambiguity", "tokens", "in %", "correct", "in %", "LE", "in %",
                "DE", "in %");
  out << buf;
  auto emit = [&](const std::string& label, const EvalRow& row) {
    double tokens_pct =
        r.totals.tokens > 0 ? 100.0 * static_cast<double>(row.tokens) /
                                  static_cast<double>(r.totals.tokens)
                            : 0.0;
    auto row_pct = [&](long long v) {
      return row.tokens > 0 ? 100.0 * static_cast<double>(v) /
                                  static_cast<double>(row.tokens)
                            : 0.0;
    };
    std::snprintf(buf, sizeof buf,
                  "%9s %8lld %7s %8lld %7s %6lld %7s %6lld %7s\n", label.c_str(),
                  row.tokens, fmt_pct(tokens_pct).c_str(), row.correct,
                  fmt_pct(row_pct(row.correct)).c_str(), row.lexical_errors,
                  fmt_pct(row_pct(row.lexical_errors)).c_str(),
                  row.disambiguation_errors,
                  fmt_pct(row_pct(row.disambiguation_errors)).c_str());
    out << buf;
  };
  for (const auto& row : r.rows) emit(level_label(row.ambiguity_level), row);
  emit("total", r.totals);
  return out.str();
}

std::string render_csv(const EvalReport& r) {
  std::ostringstream out;
  out << "ambiguity,tokens,tokens_pct,correct,correct_pct,"
         "lexical_errors,lexical_errors_pct,"
         "disambiguation_errors,disambiguation_errors_pct\n";
  auto emit = [&](const std::string& label, const EvalRow& row) {
    double tokens_pct =
        r.totals.tokens > 0 ? 100.0 * static_cast<double>(row.tokens) /
                                  static_cast<double>(r.totals.tokens)
                            : 0.0;
    auto row_pct = [&](long long v) {
      return row.tokens > 0 ? 100.0 * static_cast<double>(v) /
                                  static_cast<double>(row.tokens)
                            : 0.0;
    };
    out << label << ',' << row.tokens << ',' << fmt_pct(tokens_pct) << ','
        << row.correct << ',' << fmt_pct(row_pct(row.correct)) << ','
        << row.lexical_errors << ',' << fmt_pct(row_pct(row.lexical_errors))
        << ',' << row.disambiguation_errors << ','
        << fmt_pct(row_pct(row.disambiguation_errors)) << '\n';
  };
  for (const auto& row : r.rows) emit(level_label(row.ambiguity_level), row);
  emit("total", r.totals);
  return out.str();
}

std::string render_error_types(const std::vector<ErrorTypeCount>& types) {
  std::ostringstream out;
  for (const auto& t : types)
    out << t.correct_tag << '\t' << t.tagger_tag << '\t' << t.count << '\n';
  return out.str();
}

}  // namespace tagkit
