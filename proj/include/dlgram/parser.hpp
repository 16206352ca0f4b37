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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dlgram/coordination.hpp"
#include "dlgram/engine.hpp"
#include "dlgram/grammar.hpp"

namespace dlgram {

struct ParseOptions {
  bool meta_coord = true;
  bool all_coord = false;
  std::size_t layer_cap = 64;
  int gap_budget = 1;
  int depth_cap = 16;
};

struct ParseOutcome {
  Chart chart;
  std::vector<ParseResult> results;
  std::vector<CoordConstraint> constraints;
  /// Edge lines (`T<k>: ...`) and constraint lines (`C<n>: ...`) in the
  /// order they happened.
  std::vector<std::string> trace;
};

/// Lowercases, splits on whitespace and strips surrounding punctuation.
std::vector<std::string> tokenize(std::string_view sentence);

/// Full pipeline: assert the input, close it with the coordination hook,
/// extract the parses.
ParseOutcome parse(const Grammar& g, const std::vector<std::string>& tokens,
                   const ParseOptions& opts = {});

}  // namespace dlgram
