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

#include <iostream>

#include "CLI11.hpp"
#include "dlgram/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Datalog grammar parser with meta-grammatical coordination"};
  app.require_subcommand(1);

  dlgram::RunConfig cfg;
  std::string sentence, file;

  auto* parse = app.add_subcommand("parse", "Parse sentences");
  parse->add_option("-g,--grammar", cfg.grammar_path, "Grammar file (.dlg)")
      ->required();
  auto* s_opt = parse->add_option("-s,--sentence", sentence, "Sentence text");
  auto* f_opt = parse->add_option("-f,--file", file, "File with one sentence per line");
  parse->add_flag("--trace", cfg.trace, "Print derived edges and constraint activity");
  parse->add_flag("--reshape", cfg.reshape, "Distribute quantifiers over connectives");
  parse->add_flag("--reshape-too", cfg.reshape_too, "Also expand 'too' constructions");
  parse->add_flag("--all-coord", cfg.all_coord, "Record every coordination resolution");
  parse->add_flag("--no-meta-coord", cfg.no_meta_coord, "Disable meta-grammatical coordination");
  parse->add_flag("--json", cfg.json, "Emit the chart and parses as JSON");
  parse->add_option("--layer-cap", cfg.layer_cap, "Maximum number of closure layers");
  parse->add_option("--gap-budget", cfg.gap_budget, "Gaps allowed per prediction");

  auto* check = app.add_subcommand("check", "Validate a grammar");
  check->add_option("-g,--grammar", cfg.grammar_path, "Grammar file (.dlg)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : dlgram::kExitUsage;
  }

  if (*check) {
    cfg.command = dlgram::Command::Check;
  } else {
    cfg.command = dlgram::Command::Parse;
    if (*s_opt) cfg.sentence = sentence;
    if (*f_opt) cfg.sentence_file = file;
  }
  return dlgram::run(cfg, std::cout, std::cerr);
}
