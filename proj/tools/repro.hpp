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

#ifndef TAGKIT_TOOLS_REPRO_HPP_
#define TAGKIT_TOOLS_REPRO_HPP_

#include <string>

#include "tagkit/dtree.hpp"
#include "tagkit/tbl.hpp"

namespace tagkit {

struct ReproOptions {
  std::string corpus_path;
  std::string tagset_path;
  std::string out_dir;
  int denominator = 8;
  int jobs = 1;
  std::string analyzer = "stub";
  std::string tagmap_path;
  DTreeParams dparams;
  TblParams tparams;
};

// One-command experimental pipeline: split, train and evaluate both
// taggers, merge the external lexicon, rerun, and run both sequential
// combinations. All artifacts land in out_dir; stdout gets a summary.
void run_repro(const ReproOptions& options);

}  // namespace tagkit

#endif  // TAGKIT_TOOLS_REPRO_HPP_
