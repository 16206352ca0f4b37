/* Copyright 2026 The dlgram Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Command implementations behind the `dlgram` executable.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dlgram/parser.hpp"

#include "json.hpp"

namespace dlgram {

enum class Command { Parse, Check };

struct RunConfig {
  Command command = Command::Parse;
  std::string grammar_path;
  std::optional<std::string> sentence;
  std::optional<std::string> sentence_file;
  bool trace = false;
  bool reshape = false;
  bool reshape_too = false;
  bool all_coord = false;
  bool no_meta_coord = false;
  bool json = false;
  std::size_t layer_cap = 64;
  int gap_budget = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitParseFailure = 1;
inline constexpr int kExitUsage = 2;

/// Document with keys tokens, edges, parses, constraints, in that order.
nlohmann::ordered_json emit_json(const ParseOutcome& outcome,
                                 const std::vector<Term>& logical_forms);

/// Runs one command. Exit status: 0 all parsed, 1 some sentence failed to
/// parse or hit the layer cap, 2 usage or grammar errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dlgram
