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

#include "dlgram/parser.hpp"

#include <cctype>
#include <sstream>

namespace dlgram {

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> out;
  std::istringstream in{std::string(sentence)};
  std::string word;
  auto punct = [](char c) { return std::ispunct(static_cast<unsigned char>(c)) && c != '_'; };
  while (in >> word) {
    std::size_t b = 0, e = word.size();
    while (b < e && punct(word[b])) ++b;
    while (e > b && punct(word[e - 1])) --e;
    if (b == e) continue;
    std::string w = word.substr(b, e - b);
    for (auto& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.push_back(std::move(w));
  }
  return out;
}

ParseOutcome parse(const Grammar& g, const std::vector<std::string>& tokens,
                   const ParseOptions& opts) {
  std::vector<std::string> trace;
  auto sink = [&trace](const std::string& line) { trace.push_back(line); };

  Chart chart = assert_input(tokens);
  auto observe = [&trace](const Edge& e) {
    trace.push_back("T" + std::to_string(e.layer) + ": " + format_edge(e) +
                    "  [" + format_provenance(e) + "]");
  };
  for (const Edge& e : chart.edges()) observe(e);
  chart.set_observer(observe);

  CoordinationOptions copts;
  copts.all_coord = opts.all_coord;
  copts.predict = {opts.gap_budget, opts.depth_cap};
  Coordinator coord(g, copts, sink);

  ClosureHooks hooks;
  if (opts.meta_coord) hooks = coord.hooks();
  close(chart, g, hooks, ClosureOptions{opts.layer_cap});
  chart.set_observer({});

  auto results = extract(chart, g);
  std::vector<std::string> clog;
  for (const auto& line : trace)
    if (line.rfind("C", 0) == 0) clog.push_back(line);
  for (auto& r : results) r.constraint_log = clog;

  return {std::move(chart), std::move(results), coord.constraints(),
          std::move(trace)};
}

}  // namespace dlgram
