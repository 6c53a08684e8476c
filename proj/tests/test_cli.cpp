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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "tagkit/corpus.hpp"

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch() {
  fs::path dir = fs::path(TAGKIT_SCRATCH_DIR) / "cli";
  fs::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::string& args) {
  fs::path out = scratch() / "stdout.txt";
  fs::path err = scratch() / "stderr.txt";
  std::string cmd = std::string(TAGKIT_BIN) + " " + args + " >" + out.string() +
                    " 2>" + err.string();
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out), slurp(err)};
}

fs::path write_corpus(const std::string& name, int sentences) {
  fs::path path = scratch() / name;
  std::ofstream out(path);
  for (int i = 0; i < sentences; ++i) {
    out << "der\tART\nHund\tNN\n.\t$.\n";
    if (i + 1 < sentences) out << "\n";
  }
  return path;
}

}  // namespace

TEST_CASE("cli: split writes the expected sentence counts") {
  fs::path in = write_corpus("split_in.vrt", 16);
  fs::path train = scratch() / "out.train";
  fs::path test = scratch() / "out.test";
  CliResult r = run_cli("split --in " + in.string() + " --denominator 8 --train " +
                        train.string() + " --test " + test.string());
  CHECK(r.exit_code == 0);
  tagkit::Corpus test_corpus = tagkit::load_vertical(test.string());
  CHECK(test_corpus.sentences.size() == 2);
  tagkit::Corpus train_corpus = tagkit::load_vertical(train.string());
  CHECK(train_corpus.sentences.size() == 14);
}

TEST_CASE("cli: identity evaluation prints a perfect table") {
  fs::path g = write_corpus("eval_gold.vrt", 3);
  fs::path lexicon = scratch() / "eval.lexicon";
  {
    std::ofstream out(lexicon);
    out << "der\tART 3\nHund\tNN 3\n.\t$. 3\n";
  }
  CliResult r = run_cli("eval --gold " + g.string() + " --pred " + g.string() +
                        " --lexicon " + lexicon.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("100.00") != std::string::npos);
}

TEST_CASE("cli: malformed input reports the line and exits with a data error") {
  fs::path bad = scratch() / "bad.vrt";
  {
    std::ofstream out(bad);
    out << "der\tART\nHund\tNN\nkaputt\n";
  }
  fs::path lexicon = scratch() / "bad.lexicon";
  {
    std::ofstream out(lexicon);
    out << "der\tART 1\n";
  }
  CliResult r = run_cli("eval --gold " + bad.string() + " --pred " + bad.string() +
                        " --lexicon " + lexicon.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("cli: usage errors exit with code one") {
  CliResult unknown = run_cli("frobnicate");
  CHECK(unknown.exit_code == 1);

  fs::path in = write_corpus("tag_in.vrt", 1);
  CliResult both = run_cli("tag --in " + in.string());
  CHECK(both.exit_code == 1);
  CHECK(both.err.find("--dtree") != std::string::npos);
}

TEST_CASE("cli: every subcommand documents itself") {
  for (const char* sub : {"split", "train-dtree", "train-tbl", "tag", "eval",
                          "merge-lex", "combine", "error-types", "repro"}) {
    CliResult r = run_cli(std::string(sub) + " --help");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("--") != std::string::npos);
  }
}

TEST_CASE("cli: merge-lex extends and tag --lexicon loads it without retraining") {
  fs::path corpus = scratch() / "merge_train.vrt";
  {
    std::ofstream out(corpus);
    for (int i = 0; i < 8; ++i) {
      out << "die\tART\nKatze\tNN\nspielt\tVVFIN\n.\t$.\n";
      if (i < 7) out << "\n";
    }
  }
  fs::path tagset = fs::path(TAGKIT_DATA_DIR) / "stts.tagset";
  fs::path model = scratch() / "merge_model";
  CHECK(run_cli("train-tbl --train " + corpus.string() + " --out " +
                model.string())
            .exit_code == 0);

  // "Bergkatze" is unknown; the stub analyzer makes it an external entry
  fs::path test_in = scratch() / "merge_test.vrt";
  {
    std::ofstream out(test_in);
    out << "die\nBergkatze\nspielt\n.\n";
  }
  fs::path merged = scratch() / "merged.lexicon";
  CliResult merge = run_cli("merge-lex --lexicon " + model.string() +
                            ".lexicon --corpus " + test_in.string() +
                            " --tagset " + tagset.string() + " --train " +
                            corpus.string() + " --out " + merged.string());
  CHECK(merge.exit_code == 0);
  CHECK(merge.out.find("merged 1 external entries") != std::string::npos);

  fs::path plain_out = scratch() / "merge_plain.vrt";
  fs::path ext_out = scratch() / "merge_ext.vrt";
  CHECK(run_cli("tag --tbl " + model.string() + " --in " + test_in.string() +
                " --out " + plain_out.string())
            .exit_code == 0);
  CHECK(run_cli("tag --tbl " + model.string() + " --in " + test_in.string() +
                " --lexicon " + merged.string() + " --out " + ext_out.string())
            .exit_code == 0);

  tagkit::Corpus ext = tagkit::load_vertical(ext_out.string());
  // with the merged lexicon the form is known: NN leads its entry by prior
  CHECK(ext.sentences[0].tokens[1].tag == "NN");
  // the persisted model lexicon is untouched by the extension run
  std::ifstream lex(model.string() + ".lexicon");
  std::ostringstream lexbuf;
  lexbuf << lex.rdbuf();
  CHECK(lexbuf.str().find("Bergkatze") == std::string::npos);
}

TEST_CASE("cli: a config file supplies subcommand options") {
  fs::path in = write_corpus("cfg_in.vrt", 8);
  fs::path train = scratch() / "cfg.train";
  fs::path test = scratch() / "cfg.test";
  fs::path cfg = scratch() / "cfg.ini";
  {
    std::ofstream out(cfg);
    out << "[split]\n"
        << "in=" << in.string() << "\n"
        << "denominator=4\n"
        << "train=" << train.string() << "\n"
        << "test=" << test.string() << "\n";
  }
  CliResult r = run_cli("--config " + cfg.string() + " split");
  CHECK(r.exit_code == 0);
  CHECK(tagkit::load_vertical(test.string()).sentences.size() == 2);
}

TEST_CASE("cli: train, tag and evaluate round") {
  fs::path corpus = scratch() / "roundtrip.vrt";
  {
    std::ofstream out(corpus);
    for (int i = 0; i < 12; ++i) {
      out << "die\tART\nKinder\tNN\nspielen\tVVFIN\n.\t$.\n\n";
      out << "wir\tPPER\nzu\tPTKZU\nspielen\tVVINF\n.\t$.\n";
      if (i < 11) out << "\n";
    }
  }
  fs::path tagset = fs::path(TAGKIT_DATA_DIR) / "stts.tagset";
  fs::path model = scratch() / "round.dtree";
  CliResult train = run_cli("train-dtree --train " + corpus.string() +
                            " --tagset " + tagset.string() + " --out " +
                            model.string());
  CHECK(train.exit_code == 0);

  fs::path tagged = scratch() / "round.out.vrt";
  CliResult tag = run_cli("tag --dtree " + model.string() + " --in " +
                          corpus.string() + " --out " + tagged.string());
  CHECK(tag.exit_code == 0);

  tagkit::Corpus out = tagkit::load_vertical(tagged.string());
  CHECK(out.token_count() == tagkit::load_vertical(corpus.string()).token_count());
  // the training corpus itself must tag perfectly here
  CHECK(out == tagkit::load_vertical(corpus.string()));
}
