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

#include "tagkit/tbl.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "tagkit/error.hpp"
#include "tagkit/utf8.hpp"

namespace tagkit {

namespace {

// Candidate rules are scored in packed 64-bit keys. The field layout is
// big-endian-ish so that numeric key order equals lexicographic order over
// (template, trigger1, trigger2, from, to) of name-sorted interned ids,
// which is what the deterministic tie-break needs.
constexpr int kTrigBits = 20;
constexpr int kTagBits = 9;
constexpr std::uint64_t kTrigMask = (1ull << kTrigBits) - 1;
constexpr std::uint64_t kTagMask = (1ull << kTagBits) - 1;

std::uint64_t pack_key(int tmpl, std::uint64_t t1, std::uint64_t t2, int from,
                       int to) {
  return (static_cast<std::uint64_t>(tmpl) << (2 * kTrigBits + 2 * kTagBits)) |
         (t1 << (kTrigBits + 2 * kTagBits)) | (t2 << (2 * kTagBits)) |
         (static_cast<std::uint64_t>(from) << kTagBits) |
         static_cast<std::uint64_t>(to);
}

// Key with the `to` field zeroed; used for to-independent break counts.
std::uint64_t strip_to(std::uint64_t key) { return key & ~kTagMask; }

struct Interner {
  std::vector<std::string> names;  // sorted
  std::map<std::string, int, std::less<>> ids;

  static Interner from_set(const std::set<std::string>& set) {
    Interner in;
    in.names.assign(set.begin(), set.end());
    for (std::size_t i = 0; i < in.names.size(); ++i)
      in.ids.emplace(in.names[i], static_cast<int>(i));
    return in;
  }
  int id(std::string_view s) const {
    auto it = ids.find(s);
    return it == ids.end() ? -1 : it->second;
  }
};

bool entry_has_tag(const LexiconEntry& entry, std::string_view tag) {
  for (const auto& tc : entry.tags)
    if (tc.tag == tag) return true;
  return false;
}

long long form_frequency_threshold_count(
    const std::map<std::string, long long>& counts, long long n,
    std::vector<std::string>* out) {
  std::vector<std::pair<std::string, long long>> items(counts.begin(),
                                                       counts.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  long long taken = 0;
  for (const auto& [form, count] : items) {
    if (taken >= n) break;
    out->push_back(form);
    ++taken;
  }
  return taken;
}

// ---------------------------------------------------------------------------
// Lexical rule learning (simulated unknown words)

bool lexical_trigger_matches(LexTemplate tmpl, const std::string& trigger,
                             const std::string& form, const std::string* left,
                             const std::string* right) {
  switch (tmpl) {
    case LexTemplate::kCharContains:
      return form.find(trigger) != std::string::npos;
    case LexTemplate::kHasSuffix:
      return utf8_suffix(form, utf8_length(trigger)) == trigger;
    case LexTemplate::kHasPrefix:
      return utf8_prefix(form, utf8_length(trigger)) == trigger;
    case LexTemplate::kGoodRightWord:
      return right != nullptr && *right == trigger;
    case LexTemplate::kGoodLeftWord:
      return left != nullptr && *left == trigger;
  }
  return false;
}

struct LexSite {
  int gold = -1;
  int cur = -1;
  std::vector<std::pair<int, int>> cands;  // (template, trigger id)
};

// Form-internal and neighbor-word trigger strings for one token.
std::vector<std::pair<int, std::string>> lexical_candidates(
    const std::string& form, const std::string* left, const std::string* right) {
  std::vector<std::pair<int, std::string>> out;
  std::vector<std::string> chars = utf8_chars(form);
  std::set<std::string> distinct(chars.begin(), chars.end());
  for (const auto& c : distinct)
    out.emplace_back(static_cast<int>(LexTemplate::kCharContains), c);
  for (std::size_t k = 1; k <= 4 && k <= chars.size(); ++k) {
    out.emplace_back(static_cast<int>(LexTemplate::kHasSuffix),
                     utf8_suffix(form, k));
    out.emplace_back(static_cast<int>(LexTemplate::kHasPrefix),
                     utf8_prefix(form, k));
  }
  // Word triggers with whitespace cannot round-trip through the rule file.
  if (right && right->find(' ') == std::string::npos)
    out.emplace_back(static_cast<int>(LexTemplate::kGoodRightWord), *right);
  if (left && left->find(' ') == std::string::npos)
    out.emplace_back(static_cast<int>(LexTemplate::kGoodLeftWord), *left);
  return out;
}

// ---------------------------------------------------------------------------
// Contextual rule learning

constexpr std::size_t kMaxContextCands = 32;

struct CtxCand {
  int tmpl;
  std::uint64_t t1;
  std::uint64_t t2;
};

struct CtxCorpus {
  Interner tags;  // includes the boundary pseudo-tag
  Interner vocab;
  int boundary = -1;
  std::vector<int> form_of;
  std::vector<int> gold;
  std::vector<std::pair<int, int>> sents;
  std::vector<std::vector<int>> entry_tags;  // per vocab id; empty = unknown
  std::vector<char> frequent;                // per vocab id
  std::vector<char> wordable;                // no embedded space
};

// Enumerates every (template, triggers) pair instantiated by position i.
// `tags` is the tag-id sequence the triggers are read from; positions
// outside the sentence read as the boundary pseudo-tag.
template <typename F>
void for_each_context(const CtxCorpus& cc, const std::vector<int>& tags,
                      int start, int end, int i, F&& emit) {
  auto T = [&](int pos) {
    int tag = (pos < start || pos >= end) ? cc.boundary : tags[pos];
    return static_cast<std::uint64_t>(tag) + 1;
  };
  auto W = [&](int pos) {
    return static_cast<std::uint64_t>(cc.form_of[pos]) + 1;
  };
  const bool p1 = i - 1 >= start;
  const bool n1 = i + 1 < end;

  emit(CtxCand{static_cast<int>(CtxTemplate::kPrevTag), T(i - 1), 0});
  emit(CtxCand{static_cast<int>(CtxTemplate::kNextTag), T(i + 1), 0});

  auto emit_or_set = [&](CtxTemplate tmpl, std::initializer_list<int> offsets) {
    std::array<std::uint64_t, 3> seen{};
    std::size_t nseen = 0;
    for (int off : offsets) {
      std::uint64_t v = T(i + off);
      bool dup = false;
      for (std::size_t k = 0; k < nseen; ++k)
        if (seen[k] == v) dup = true;
      if (dup) continue;
      seen[nseen++] = v;
      emit(CtxCand{static_cast<int>(tmpl), v, 0});
    }
  };
  emit_or_set(CtxTemplate::kPrev1or2Tag, {-1, -2});
  emit_or_set(CtxTemplate::kPrev1or2or3Tag, {-1, -2, -3});
  emit_or_set(CtxTemplate::kNext1or2Tag, {1, 2});
  emit_or_set(CtxTemplate::kNext1or2or3Tag, {1, 2, 3});

  emit(CtxCand{static_cast<int>(CtxTemplate::kPrevBigramTags), T(i - 2),
               T(i - 1)});
  emit(CtxCand{static_cast<int>(CtxTemplate::kNextBigramTags), T(i + 1),
               T(i + 2)});
  emit(CtxCand{static_cast<int>(CtxTemplate::kSurroundTags), T(i - 1),
               T(i + 1)});

  auto frequent_word = [&](int pos) {
    int v = cc.form_of[pos];
    return cc.frequent[v] && cc.wordable[v];
  };
  if (p1 && frequent_word(i - 1))
    emit(CtxCand{static_cast<int>(CtxTemplate::kPrevWord), W(i - 1), 0});
  if (n1 && frequent_word(i + 1))
    emit(CtxCand{static_cast<int>(CtxTemplate::kNextWord), W(i + 1), 0});
  if (frequent_word(i))
    emit(CtxCand{static_cast<int>(CtxTemplate::kWordAndPrevTag), W(i), T(i - 1)});
  if (frequent_word(i))
    emit(CtxCand{static_cast<int>(CtxTemplate::kWordAndNextTag), W(i), T(i + 1)});
}

// Trigger test used when applying a rule; must agree exactly with
// for_each_context's instantiation.
bool context_matches(const CtxCorpus& cc, const std::vector<int>& tags,
                     int start, int end, int i, int tmpl, std::uint64_t t1,
                     std::uint64_t t2) {
  auto tag_is = [&](int pos, std::uint64_t v) {
    int tag = (pos < start || pos >= end) ? cc.boundary : tags[pos];
    return static_cast<std::uint64_t>(tag) + 1 == v;
  };
  auto word_is = [&](int pos, std::uint64_t v) {
    return pos >= start && pos < end &&
           static_cast<std::uint64_t>(cc.form_of[pos]) + 1 == v;
  };
  switch (static_cast<CtxTemplate>(tmpl)) {
    case CtxTemplate::kPrevTag:
      return tag_is(i - 1, t1);
    case CtxTemplate::kNextTag:
      return tag_is(i + 1, t1);
    case CtxTemplate::kPrev1or2Tag:
      return tag_is(i - 1, t1) || tag_is(i - 2, t1);
    case CtxTemplate::kPrev1or2or3Tag:
      return tag_is(i - 1, t1) || tag_is(i - 2, t1) || tag_is(i - 3, t1);
    case CtxTemplate::kNext1or2Tag:
      return tag_is(i + 1, t1) || tag_is(i + 2, t1);
    case CtxTemplate::kNext1or2or3Tag:
      return tag_is(i + 1, t1) || tag_is(i + 2, t1) || tag_is(i + 3, t1);
    case CtxTemplate::kPrevBigramTags:
      return tag_is(i - 2, t1) && tag_is(i - 1, t2);
    case CtxTemplate::kNextBigramTags:
      return tag_is(i + 1, t1) && tag_is(i + 2, t2);
    case CtxTemplate::kSurroundTags:
      return tag_is(i - 1, t1) && tag_is(i + 1, t2);
    case CtxTemplate::kPrevWord:
      return word_is(i - 1, t1);
    case CtxTemplate::kNextWord:
      return word_is(i + 1, t1);
    case CtxTemplate::kWordAndPrevTag:
      return word_is(i, t1) && tag_is(i - 1, t2);
    case CtxTemplate::kWordAndNextTag:
      return word_is(i, t1) && tag_is(i + 1, t2);
  }
  return false;
}

}  // namespace

Corpus initial_tag(const RawCorpus& raw, const Lexicon& lex) {
  Corpus out;
  out.sentences.reserve(raw.size());
  for (const auto& forms : raw) {
    Sentence sentence;
    sentence.tokens.reserve(forms.size());
    for (const auto& form : forms) {
      const LexiconEntry* entry = lex.find(form);
      sentence.tokens.push_back(
          {form, entry ? most_frequent_tag(*entry)
                       : std::string(kDefaultUnknownTag)});
    }
    out.sentences.push_back(std::move(sentence));
  }
  return out;
}

std::vector<std::string> top_frequent_forms(const Corpus& c, long long n) {
  std::map<std::string, long long> counts;
  for (const auto& sentence : c.sentences)
    for (const auto& token : sentence.tokens) ++counts[token.form];
  std::vector<std::string> out;
  if (n > 0) form_frequency_threshold_count(counts, n, &out);
  return out;
}

std::vector<LexicalRule> learn_lexical(const Corpus& train, const Lexicon& lex,
                                       long long threshold) {
  if (threshold < 1) throw UsageError("lexical threshold must be at least 1");
  (void)lex;  // the simulated-unknown set is frequency-based

  std::map<std::string, long long> freq;
  for (const auto& sentence : train.sentences)
    for (const auto& token : sentence.tokens) ++freq[token.form];

  // Simulated unknowns: forms occurring exactly once in the training corpus.
  std::set<std::string> tag_set{std::string(kDefaultUnknownTag)};
  for (const auto& sentence : train.sentences)
    for (const auto& token : sentence.tokens) tag_set.insert(token.tag);
  Interner tags = Interner::from_set(tag_set);

  std::set<std::string> trigger_set;
  struct RawSite {
    const std::string* form;
    const std::string* left;
    const std::string* right;
    int gold;
  };
  std::vector<RawSite> raw_sites;
  for (const auto& sentence : train.sentences) {
    const auto& toks = sentence.tokens;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (freq[toks[i].form] != 1) continue;
      RawSite site;
      site.form = &toks[i].form;
      site.left = i > 0 ? &toks[i - 1].form : nullptr;
      site.right = i + 1 < toks.size() ? &toks[i + 1].form : nullptr;
      site.gold = tags.id(toks[i].tag);
      raw_sites.push_back(site);
      for (const auto& [tmpl, trig] :
           lexical_candidates(*site.form, site.left, site.right))
        trigger_set.insert(trig);
    }
  }
  Interner triggers = Interner::from_set(trigger_set);
  if (triggers.names.size() >= kTrigMask || tags.names.size() >= kTagMask)
    throw Error("training corpus exceeds the rule learner's id capacity");

  const int default_id = tags.id(kDefaultUnknownTag);
  std::vector<LexSite> sites;
  sites.reserve(raw_sites.size());
  for (const auto& rs : raw_sites) {
    LexSite site;
    site.gold = rs.gold;
    site.cur = default_id;  // unknown words start from the default tag
    for (const auto& [tmpl, trig] : lexical_candidates(*rs.form, rs.left, rs.right))
      site.cands.emplace_back(tmpl, triggers.id(trig));
    sites.push_back(std::move(site));
  }

  std::vector<LexicalRule> rules;
  std::unordered_map<std::uint64_t, long long> good, bad;
  good.reserve(1024), bad.reserve(1024);
  long long errors_before = 0;
  for (const auto& site : sites)
    if (site.cur != site.gold) ++errors_before;

  const std::size_t max_iters = sites.size() + 1;
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    good.clear();
    bad.clear();
    for (const auto& site : sites) {
      if (site.cur != site.gold) {
        for (const auto& [tmpl, trig] : site.cands)
          ++good[pack_key(tmpl, static_cast<std::uint64_t>(trig) + 1, 0,
                          site.cur, site.gold)];
      } else {
        for (const auto& [tmpl, trig] : site.cands)
          ++bad[pack_key(tmpl, static_cast<std::uint64_t>(trig) + 1, 0,
                         site.cur, 0)];
      }
    }
    long long best_score = std::numeric_limits<long long>::min();
    std::uint64_t best_key = 0;
    for (const auto& [key, g] : good) {
      auto it = bad.find(strip_to(key));
      long long score = g - (it == bad.end() ? 0 : it->second);
      if (score > best_score || (score == best_score && key < best_key)) {
        best_score = score;
        best_key = key;
      }
    }
    if (best_score < threshold) break;

    const int tmpl = static_cast<int>(best_key >> (2 * kTrigBits + 2 * kTagBits));
    const int trig = static_cast<int>(((best_key >> (kTrigBits + 2 * kTagBits)) &
                                       kTrigMask)) - 1;
    const int from = static_cast<int>((best_key >> kTagBits) & kTagMask);
    const int to = static_cast<int>(best_key & kTagMask);

    for (auto& site : sites) {
      if (site.cur != from) continue;
      for (const auto& [ctmpl, ctrig] : site.cands)
        if (ctmpl == tmpl && ctrig == trig) {
          site.cur = to;
          break;
        }
    }
    long long errors_after = 0;
    for (const auto& site : sites)
      if (site.cur != site.gold) ++errors_after;
    if (errors_before - errors_after != best_score)
      throw Error("lexical learner score does not match its improvement");
    errors_before = errors_after;

    rules.push_back({static_cast<LexTemplate>(tmpl), triggers.names[trig],
                     tags.names[from], tags.names[to], best_score});
  }
  return rules;
}

std::vector<ContextualRule> learn_contextual(const Corpus& train,
                                             const Lexicon& lex,
                                             long long threshold,
                                             long long bigram_restriction) {
  if (threshold < 1) throw UsageError("contextual threshold must be at least 1");
  if (bigram_restriction < 0)
    throw UsageError("bigram restriction must be non-negative");

  CtxCorpus cc;
  std::set<std::string> tag_set{std::string(kDefaultUnknownTag),
                                std::string(kBoundaryTag)};
  std::set<std::string> form_set;
  std::map<std::string, long long> form_freq;
  for (const auto& sentence : train.sentences)
    for (const auto& token : sentence.tokens) {
      tag_set.insert(token.tag);
      form_set.insert(token.form);
      ++form_freq[token.form];
    }
  for (const auto& form : form_set) {
    const LexiconEntry* entry = lex.find(form);
    if (entry)
      for (const auto& tc : entry->tags) tag_set.insert(tc.tag);
  }
  cc.tags = Interner::from_set(tag_set);
  cc.boundary = cc.tags.id(kBoundaryTag);
  cc.vocab = Interner::from_set(form_set);
  if (cc.vocab.names.size() >= kTrigMask || cc.tags.names.size() >= kTagMask)
    throw Error("training corpus exceeds the rule learner's id capacity");

  cc.entry_tags.resize(cc.vocab.names.size());
  cc.wordable.assign(cc.vocab.names.size(), 0);
  for (std::size_t v = 0; v < cc.vocab.names.size(); ++v) {
    const std::string& form = cc.vocab.names[v];
    cc.wordable[v] = form.find(' ') == std::string::npos;
    const LexiconEntry* entry = lex.find(form);
    if (!entry) continue;
    for (const auto& tc : entry->tags)
      cc.entry_tags[v].push_back(cc.tags.id(tc.tag));
    std::sort(cc.entry_tags[v].begin(), cc.entry_tags[v].end());
  }
  cc.frequent.assign(cc.vocab.names.size(), 0);
  {
    std::vector<std::string> top;
    form_frequency_threshold_count(form_freq, bigram_restriction, &top);
    for (const auto& form : top) cc.frequent[cc.vocab.id(form)] = 1;
  }

  std::vector<int> cur;
  for (const auto& sentence : train.sentences) {
    int start = static_cast<int>(cc.form_of.size());
    for (const auto& token : sentence.tokens) {
      int v = cc.vocab.id(token.form);
      cc.form_of.push_back(v);
      cc.gold.push_back(cc.tags.id(token.tag));
      const LexiconEntry* entry = lex.find(token.form);
      cur.push_back(entry ? cc.tags.id(most_frequent_tag(*entry))
                          : cc.tags.id(kDefaultUnknownTag));
    }
    cc.sents.emplace_back(start, static_cast<int>(cc.form_of.size()));
  }

  auto allowed = [&](int v, int to) {
    const auto& entry = cc.entry_tags[v];
    if (entry.empty()) return true;  // unknown form: unrestricted
    return std::binary_search(entry.begin(), entry.end(), to);
  };

  long long errors_before = 0;
  for (std::size_t i = 0; i < cur.size(); ++i)
    if (cur[i] != cc.gold[i]) ++errors_before;

  std::vector<ContextualRule> rules;
  std::unordered_map<std::uint64_t, long long> good, bad, bad_any;
  good.reserve(1 << 14), bad.reserve(1 << 15), bad_any.reserve(1 << 10);
  std::array<CtxCand, kMaxContextCands> cands;

  const std::size_t max_iters = cur.size() + 1;
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    good.clear();
    bad.clear();
    bad_any.clear();
    for (const auto& [start, end] : cc.sents) {
      for (int i = start; i < end; ++i) {
        std::size_t ncands = 0;
        for_each_context(cc, cur, start, end, i, [&](const CtxCand& cand) {
          cands[ncands++] = cand;
        });
        const int v = cc.form_of[i];
        if (cur[i] != cc.gold[i]) {
          if (!allowed(v, cc.gold[i])) continue;  // no rule can fix this site
          for (std::size_t k = 0; k < ncands; ++k)
            ++good[pack_key(cands[k].tmpl, cands[k].t1, cands[k].t2, cur[i],
                            cc.gold[i])];
        } else if (!cc.entry_tags[v].empty()) {
          for (int to : cc.entry_tags[v]) {
            if (to == cur[i]) continue;
            for (std::size_t k = 0; k < ncands; ++k)
              ++bad[pack_key(cands[k].tmpl, cands[k].t1, cands[k].t2, cur[i],
                             to)];
          }
        } else {
          // unknown form: any retagging breaks it
          for (std::size_t k = 0; k < ncands; ++k)
            ++bad_any[pack_key(cands[k].tmpl, cands[k].t1, cands[k].t2, cur[i],
                               0)];
        }
      }
    }

    long long best_score = std::numeric_limits<long long>::min();
    std::uint64_t best_key = 0;
    for (const auto& [key, g] : good) {
      long long b = 0;
      if (auto it = bad.find(key); it != bad.end()) b += it->second;
      if (auto it = bad_any.find(strip_to(key)); it != bad_any.end())
        b += it->second;
      long long score = g - b;
      if (score > best_score || (score == best_score && key < best_key)) {
        best_score = score;
        best_key = key;
      }
    }
    if (best_score < threshold) break;

    const int tmpl = static_cast<int>(best_key >> (2 * kTrigBits + 2 * kTagBits));
    const std::uint64_t t1 = (best_key >> (kTrigBits + 2 * kTagBits)) & kTrigMask;
    const std::uint64_t t2 = (best_key >> (2 * kTagBits)) & kTrigMask;
    const int from = static_cast<int>((best_key >> kTagBits) & kTagMask);
    const int to = static_cast<int>(best_key & kTagMask);

    // One pass with snapshot semantics: triggers see the tags as they were
    // at the start of the pass.
    std::vector<int> snapshot(cur);
    for (const auto& [start, end] : cc.sents)
      for (int i = start; i < end; ++i)
        if (snapshot[i] == from && allowed(cc.form_of[i], to) &&
            context_matches(cc, snapshot, start, end, i, tmpl, t1, t2))
          cur[i] = to;

    long long errors_after = 0;
    for (std::size_t i = 0; i < cur.size(); ++i)
      if (cur[i] != cc.gold[i]) ++errors_after;
    if (errors_before - errors_after != best_score)
      throw Error("contextual learner score does not match its improvement");
    errors_before = errors_after;

    ContextualRule rule;
    rule.tmpl = static_cast<CtxTemplate>(tmpl);
    bool word1 = rule.tmpl == CtxTemplate::kPrevWord ||
                 rule.tmpl == CtxTemplate::kNextWord ||
                 rule.tmpl == CtxTemplate::kWordAndPrevTag ||
                 rule.tmpl == CtxTemplate::kWordAndNextTag;
    rule.trigger1 = word1 ? cc.vocab.names[t1 - 1] : cc.tags.names[t1 - 1];
    if (t2 != 0) rule.trigger2 = cc.tags.names[t2 - 1];  // always a tag
    rule.from_tag = cc.tags.names[from];
    rule.to_tag = cc.tags.names[to];
    rule.score = best_score;
    rules.push_back(std::move(rule));
  }
  return rules;
}

TblModel train_tbl(const Corpus& train, const TblParams& params) {
  TblModel model;
  model.params = params;
  model.lexicon = Lexicon::build(train);
  model.lexical_rules = learn_lexical(train, model.lexicon, params.lexical_threshold);
  model.contextual_rules = learn_contextual(train, model.lexicon,
                                            params.contextual_threshold,
                                            params.bigram_restriction);
  model.frequent_words = top_frequent_forms(train, params.bigram_restriction);
  return model;
}

namespace {

bool ctx_rule_matches(const ContextualRule& r, const std::vector<std::string>& tags,
                      const RawSentence& forms, std::size_t i) {
  const std::size_t n = tags.size();
  auto tag_is = [&](std::ptrdiff_t pos, const std::string& v) {
    if (pos < 0 || pos >= static_cast<std::ptrdiff_t>(n))
      return v == kBoundaryTag;
    return tags[pos] == v;
  };
  auto word_is = [&](std::ptrdiff_t pos, const std::string& v) {
    return pos >= 0 && pos < static_cast<std::ptrdiff_t>(n) &&
           forms[pos] == v;
  };
  const std::ptrdiff_t p = static_cast<std::ptrdiff_t>(i);
  switch (r.tmpl) {
    case CtxTemplate::kPrevTag:
      return tag_is(p - 1, r.trigger1);
    case CtxTemplate::kNextTag:
      return tag_is(p + 1, r.trigger1);
    case CtxTemplate::kPrev1or2Tag:
      return tag_is(p - 1, r.trigger1) || tag_is(p - 2, r.trigger1);
    case CtxTemplate::kPrev1or2or3Tag:
      return tag_is(p - 1, r.trigger1) || tag_is(p - 2, r.trigger1) ||
             tag_is(p - 3, r.trigger1);
    case CtxTemplate::kNext1or2Tag:
      return tag_is(p + 1, r.trigger1) || tag_is(p + 2, r.trigger1);
    case CtxTemplate::kNext1or2or3Tag:
      return tag_is(p + 1, r.trigger1) || tag_is(p + 2, r.trigger1) ||
             tag_is(p + 3, r.trigger1);
    case CtxTemplate::kPrevBigramTags:
      return tag_is(p - 2, r.trigger1) && tag_is(p - 1, r.trigger2);
    case CtxTemplate::kNextBigramTags:
      return tag_is(p + 1, r.trigger1) && tag_is(p + 2, r.trigger2);
    case CtxTemplate::kSurroundTags:
      return tag_is(p - 1, r.trigger1) && tag_is(p + 1, r.trigger2);
    case CtxTemplate::kPrevWord:
      return word_is(p - 1, r.trigger1);
    case CtxTemplate::kNextWord:
      return word_is(p + 1, r.trigger1);
    case CtxTemplate::kWordAndPrevTag:
      return word_is(p, r.trigger1) && tag_is(p - 1, r.trigger2);
    case CtxTemplate::kWordAndNextTag:
      return word_is(p, r.trigger1) && tag_is(p + 1, r.trigger2);
  }
  return false;
}

}  // namespace

Sentence tbl_tag_sentence(const RawSentence& forms, const TblModel& model) {
  const std::size_t n = forms.size();
  std::vector<const LexiconEntry*> entries(n);
  std::vector<std::string> tags(n);
  for (std::size_t i = 0; i < n; ++i) {
    entries[i] = model.lexicon.find(forms[i]);
    tags[i] = entries[i] ? most_frequent_tag(*entries[i])
                         : std::string(kDefaultUnknownTag);
  }
  // Lexical rules only ever touch forms the lexicon does not know.
  for (std::size_t i = 0; i < n; ++i) {
    if (entries[i]) continue;
    const std::string* left = i > 0 ? &forms[i - 1] : nullptr;
    const std::string* right = i + 1 < n ? &forms[i + 1] : nullptr;
    for (const auto& rule : model.lexical_rules) {
      if (rule.from_tag != kWildcardTag && tags[i] != rule.from_tag) continue;
      if (lexical_trigger_matches(rule.tmpl, rule.trigger, forms[i], left, right))
        tags[i] = rule.to_tag;
    }
  }
  for (const auto& rule : model.contextual_rules) {
    std::vector<std::string> snapshot(tags);
    for (std::size_t i = 0; i < n; ++i) {
      if (snapshot[i] != rule.from_tag) continue;
      if (entries[i] && !entry_has_tag(*entries[i], rule.to_tag)) continue;
      if (ctx_rule_matches(rule, snapshot, forms, i)) tags[i] = rule.to_tag;
    }
  }
  Sentence out;
  out.tokens.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.tokens.push_back({forms[i], tags[i]});
  return out;
}

Corpus tbl_tag(const RawCorpus& raw, const TblModel& model, int jobs) {
  Corpus out;
  out.sentences.resize(raw.size());
  if (jobs <= 1 || raw.size() < 2) {
    for (std::size_t i = 0; i < raw.size(); ++i)
      out.sentences[i] = tbl_tag_sentence(raw[i], model);
    return out;
  }
  const int workers = std::min<int>(jobs, static_cast<int>(raw.size()));
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (std::size_t i = w; i < raw.size(); i += workers)
        out.sentences[i] = tbl_tag_sentence(raw[i], model);
    });
  }
  for (auto& t : threads) t.join();
  return out;
}

// ---------------------------------------------------------------------------
// Plain-text persistence

namespace {

constexpr std::array<std::string_view, 5> kLexTemplateNames = {
    "char-contains", "has-suffix", "has-prefix", "good-right-word",
    "good-left-word"};

constexpr std::array<std::string_view, 13> kCtxTemplateNames = {
    "prev-tag",          "next-tag",
    "prev-1-or-2-tag",   "prev-1-or-2-or-3-tag",
    "next-1-or-2-tag",   "next-1-or-2-or-3-tag",
    "prev-bigram-tags",  "next-bigram-tags",
    "surround-tags",     "prev-word",
    "next-word",         "current-word-and-prev-tag",
    "current-word-and-next-tag"};

bool ctx_has_two_triggers(CtxTemplate t) {
  return t == CtxTemplate::kPrevBigramTags || t == CtxTemplate::kNextBigramTags ||
         t == CtxTemplate::kSurroundTags || t == CtxTemplate::kWordAndPrevTag ||
         t == CtxTemplate::kWordAndNextTag;
}

std::vector<std::string> split_spaces(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (in >> field) out.push_back(field);
  return out;
}

long long parse_score(const std::string& s, long lineno) {
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    throw ParseError("malformed rule score: '" + s + "'", lineno);
  return v;
}

}  // namespace

std::string_view to_string(LexTemplate t) {
  return kLexTemplateNames[static_cast<std::size_t>(t)];
}

std::string_view to_string(CtxTemplate t) {
  return kCtxTemplateNames[static_cast<std::size_t>(t)];
}

void write_lexical_rules(const std::vector<LexicalRule>& rules, std::ostream& out) {
  for (const auto& r : rules)
    out << to_string(r.tmpl) << ' ' << r.trigger << ' ' << r.from_tag << ' '
        << r.to_tag << ' ' << r.score << '\n';
}

std::vector<LexicalRule> read_lexical_rules(std::istream& in) {
  std::vector<LexicalRule> rules;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_spaces(line);
    if (fields.size() != 5)
      throw ParseError("expected 'template trigger from to score'", lineno);
    LexicalRule r;
    auto it = std::find(kLexTemplateNames.begin(), kLexTemplateNames.end(),
                        fields[0]);
    if (it == kLexTemplateNames.end())
      throw ParseError("unknown lexical template: '" + fields[0] + "'", lineno);
    r.tmpl = static_cast<LexTemplate>(it - kLexTemplateNames.begin());
    r.trigger = fields[1];
    r.from_tag = fields[2];
    r.to_tag = fields[3];
    r.score = parse_score(fields[4], lineno);
    rules.push_back(std::move(r));
  }
  return rules;
}

void write_contextual_rules(const std::vector<ContextualRule>& rules,
                            std::ostream& out) {
  for (const auto& r : rules) {
    out << to_string(r.tmpl) << ' ' << r.trigger1;
    if (ctx_has_two_triggers(r.tmpl)) out << ' ' << r.trigger2;
    out << ' ' << r.from_tag << ' ' << r.to_tag << ' ' << r.score << '\n';
  }
}

std::vector<ContextualRule> read_contextual_rules(std::istream& in) {
  std::vector<ContextualRule> rules;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_spaces(line);
    if (fields.size() < 5)
      throw ParseError("truncated contextual rule", lineno);
    ContextualRule r;
    auto it = std::find(kCtxTemplateNames.begin(), kCtxTemplateNames.end(),
                        fields[0]);
    if (it == kCtxTemplateNames.end())
      throw ParseError("unknown contextual template: '" + fields[0] + "'", lineno);
    r.tmpl = static_cast<CtxTemplate>(it - kCtxTemplateNames.begin());
    std::size_t expect = ctx_has_two_triggers(r.tmpl) ? 6u : 5u;
    if (fields.size() != expect)
      throw ParseError("wrong field count for template '" + fields[0] + "'",
                       lineno);
    r.trigger1 = fields[1];
    std::size_t next = 2;
    if (expect == 6) r.trigger2 = fields[next++];
    r.from_tag = fields[next++];
    r.to_tag = fields[next++];
    r.score = parse_score(fields[next], lineno);
    rules.push_back(std::move(r));
  }
  return rules;
}

void write_wordlist(const std::vector<std::string>& words, std::ostream& out) {
  for (const auto& w : words) out << w << '\n';
}

std::vector<std::string> read_wordlist(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) words.push_back(line);
  }
  return words;
}

void save_tbl_model(const TblModel& model, const std::string& prefix) {
  model.lexicon.save(prefix + ".lexicon");
  auto open = [](const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write model file: " + path);
    return out;
  };
  {
    auto out = open(prefix + ".lexical-rules");
    write_lexical_rules(model.lexical_rules, out);
  }
  {
    auto out = open(prefix + ".context-rules");
    write_contextual_rules(model.contextual_rules, out);
  }
  {
    auto out = open(prefix + ".frequent-words");
    write_wordlist(model.frequent_words, out);
  }
  {
    auto out = open(prefix + ".params");
    out << "lexical_threshold=" << model.params.lexical_threshold << '\n'
        << "contextual_threshold=" << model.params.contextual_threshold << '\n'
        << "bigram_restriction=" << model.params.bigram_restriction << '\n';
  }
}

TblModel load_tbl_model(const std::string& prefix) {
  TblModel model;
  model.lexicon = Lexicon::load(prefix + ".lexicon");
  auto open = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file: " + path);
    return in;
  };
  {
    auto in = open(prefix + ".lexical-rules");
    model.lexical_rules = read_lexical_rules(in);
  }
  {
    auto in = open(prefix + ".context-rules");
    model.contextual_rules = read_contextual_rules(in);
  }
  {
    auto in = open(prefix + ".frequent-words");
    model.frequent_words = read_wordlist(in);
  }
  {
    auto in = open(prefix + ".params");
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw ParseError("expected key=value in params file", lineno);
      std::string key = line.substr(0, eq);
      long long value = parse_score(line.substr(eq + 1), lineno);
      if (key == "lexical_threshold")
        model.params.lexical_threshold = value;
      else if (key == "contextual_threshold")
        model.params.contextual_threshold = value;
      else if (key == "bigram_restriction")
        model.params.bigram_restriction = value;
      else
        throw ParseError("unknown params key: '" + key + "'", lineno);
    }
  }
  return model;
}

}  // namespace tagkit
