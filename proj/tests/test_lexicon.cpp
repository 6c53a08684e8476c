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

#include <random>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "tagkit/error.hpp"
#include "tagkit/lexicon.hpp"

using namespace tagkit;
using test_helpers::corpus_of;
using test_helpers::random_toy_world;

namespace {

Corpus small_corpus() {
  return corpus_of(
      {{{"der", "ART"}, {"der", "ART"}, {"das", "ART"}, {"das", "PDS"}}});
}

}  // namespace

TEST_CASE("lexicon build counts and orders entries") {
  Lexicon lex = Lexicon::build(small_corpus());
  CHECK(lex.size() == 2);
  const LexiconEntry* der = lex.find("der");
  REQUIRE(der != nullptr);
  REQUIRE(der->tags.size() == 1);
  CHECK(der->tags[0] == TagCount{"ART", 2});
  const LexiconEntry* das = lex.find("das");
  REQUIRE(das != nullptr);
  REQUIRE(das->tags.size() == 2);
  CHECK(das->tags[0] == TagCount{"ART", 1});  // tie broken by tag name
  CHECK(most_frequent_tag(*das) == "ART");
  CHECK(most_frequent_tag(*der) == "ART");
  CHECK(Lexicon::build(Corpus{}).size() == 0);
}

TEST_CASE("ambiguity levels") {
  Lexicon lex = Lexicon::build(small_corpus());
  CHECK(lex.ambiguity("das") == 2);
  CHECK(lex.ambiguity("der") == 1);
  CHECK(lex.ambiguity("xyz") == 0);  // lexicon gap
}

TEST_CASE("count conservation property") {
  std::mt19937 rng(3);
  for (int round = 0; round < 30; ++round) {
    auto world = random_toy_world(rng, 5, 9, 12, 6);
    Lexicon lex = Lexicon::build(world.corpus);
    long long total = 0;
    for (const auto& [form, entry] : lex)
      for (const auto& tc : entry.tags) total += tc.count;
    CHECK(total == static_cast<long long>(world.corpus.token_count()));
  }
}

TEST_CASE("tag priors") {
  Corpus c = corpus_of({{{"a", "ART"}, {"b", "ART"}, {"c", "NN"}, {"d", "NN"}}});
  TagPriors priors = tag_priors(c);
  CHECK(priors.prob("ART") == doctest::Approx(0.5));
  CHECK(priors.prob("NN") == doctest::Approx(0.5));
  CHECK(priors.prob("XX") == 0.0);

  Corpus single = corpus_of({{{"a", "NN"}}});
  CHECK(tag_priors(single).prob("NN") == doctest::Approx(1.0));

  CHECK_THROWS_AS(tag_priors(Corpus{}), DataError);

  std::mt19937 rng(5);
  for (int round = 0; round < 30; ++round) {
    auto world = random_toy_world(rng, 6, 8, 10, 5);
    if (world.corpus.token_count() == 0) continue;
    TagPriors p = tag_priors(world.corpus);
    double sum = 0.0;
    for (const auto& [tag, v] : p.p) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("merge_external adds prior-ordered entries for absent forms") {
  Tagset ts = Tagset::from_tags({"ART", "PDS", "NN", "VVFIN"});
  Lexicon lex = Lexicon::build(small_corpus());
  TagPriors priors;
  priors.p = {{"NN", 0.5}, {"VVFIN", 0.2}, {"ART", 0.3}};

  std::map<std::string, std::vector<std::string>> analyses{
      {"Häuser", {"NN"}},
      {"laufen", {"VVFIN", "NN"}},
      {"rätselhaft", {}},          // unanalyzable: stays a gap
      {"das", {"NN"}},             // already known: untouched
  };
  Lexicon merged = merge_external(lex, analyses, priors, ts);

  const LexiconEntry* h = merged.find("Häuser");
  REQUIRE(h != nullptr);
  CHECK(h->origin == EntryOrigin::kExternal);
  CHECK(h->tags == std::vector<TagCount>{{"NN", 0}});

  const LexiconEntry* l = merged.find("laufen");
  REQUIRE(l != nullptr);
  CHECK(l->tags == std::vector<TagCount>{{"NN", 0}, {"VVFIN", 0}});
  CHECK(most_frequent_tag(*l) == "NN");  // sorted by prior

  CHECK(merged.ambiguity("rätselhaft") == 0);
  CHECK(*merged.find("das") == *lex.find("das"));
  CHECK(merged.ambiguity("laufen") == 2);

  // the input lexicon is untouched
  CHECK(lex.size() == 2);
  CHECK(!lex.contains("Häuser"));
}

TEST_CASE("merge_external rejects tags outside the tagset") {
  Tagset ts = Tagset::from_tags({"NN"});
  Lexicon lex;
  TagPriors priors;
  std::map<std::string, std::vector<std::string>> analyses{{"x", {"BOGUS"}}};
  CHECK_THROWS_AS(merge_external(lex, analyses, priors, ts), ValidationError);
}

TEST_CASE("external priors tie broken by tag name") {
  Tagset ts = Tagset::from_tags({"NN", "NE"});
  Lexicon lex;
  TagPriors priors;  // both priors zero: pure name order
  std::map<std::string, std::vector<std::string>> analyses{{"x", {"NN", "NE"}}};
  Lexicon merged = merge_external(lex, analyses, priors, ts);
  CHECK(most_frequent_tag(*merged.find("x")) == "NE");
}

TEST_CASE("lexicon file round-trip") {
  Tagset ts = Tagset::from_tags({"ART", "PDS", "NN", "VVFIN"});
  Lexicon lex = Lexicon::build(small_corpus());
  TagPriors priors;
  priors.p = {{"NN", 0.5}, {"VVFIN", 0.2}};
  std::map<std::string, std::vector<std::string>> analyses{
      {"laufen", {"VVFIN", "NN"}}};
  Lexicon merged = merge_external(lex, analyses, priors, ts);

  std::ostringstream out;
  merged.write(out);
  std::istringstream in(out.str());
  Lexicon back = Lexicon::read(in);
  CHECK(back == merged);
  CHECK(back.find("laufen")->origin == EntryOrigin::kExternal);

  std::ostringstream again;
  back.write(again);
  CHECK(again.str() == out.str());
}

TEST_CASE("lexicon read rejects malformed entries") {
  std::istringstream no_tags("form\n");
  CHECK_THROWS_AS(Lexicon::read(no_tags), ParseError);
  std::istringstream bad_count("form\tNN x\n");
  CHECK_THROWS_AS(Lexicon::read(bad_count), ParseError);
  std::istringstream dup("form\tNN 1\tNN 2\n");
  CHECK_THROWS_AS(Lexicon::read(dup), ParseError);
  Tagset ts = Tagset::from_tags({"NN"});
  std::istringstream unknown("form\tXX 1\n");
  CHECK_THROWS_AS(Lexicon::read(unknown, &ts), ValidationError);
}

TEST_CASE("priors file round-trip") {
  TagPriors priors;
  priors.p = {{"ART", 1.0 / 3.0}, {"NN", 2.0 / 3.0}};
  std::ostringstream out;
  write_priors(priors, out);
  std::istringstream in(out.str());
  TagPriors back = read_priors(in);
  CHECK(back == priors);
}
