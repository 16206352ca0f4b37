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

#include "dlgram/cli.hpp"

#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "dlgram/reshape.hpp"

namespace dlgram {

using json = nlohmann::ordered_json;

namespace {

json provenance_json(const Edge& e) {
  return std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        json j;
        if constexpr (std::is_same_v<P, FromInput>) {
          j["kind"] = "input";
        } else if constexpr (std::is_same_v<P, FromLexicalRule>) {
          j["kind"] = "lexical";
          j["rule"] = p.rule;
          j["children"] = p.words;
        } else if constexpr (std::is_same_v<P, FromRule>) {
          j["kind"] = "rule";
          j["rule"] = p.rule;
          j["children"] = p.children;
        } else if constexpr (std::is_same_v<P, FromPrediction>) {
          j["kind"] = "predicted";
          j["rule"] = p.rule ? json(*p.rule) : json(nullptr);
          j["children"] = p.children;
          j["gap"] = p.gap;
        } else {
          j["kind"] = "coordinated";
          j["constraint"] = p.constraint;
          j["source"] = p.source;
          j["target"] = p.target;
        }
        return j;
      },
      e.provenance);
}

struct SentenceReport {
  std::string out;
  std::string err;
  bool parsed = false;
};

SentenceReport run_sentence(const Grammar& g, const std::string& sentence,
                            const RunConfig& cfg, bool header) {
  SentenceReport rep;
  std::ostringstream out, err;
  if (header) out << "% " << sentence << "\n";

  const auto tokens = tokenize(sentence);
  if (tokens.empty()) {
    err << "empty sentence\n";
    rep.err = err.str();
    rep.out = out.str();
    return rep;
  }

  ParseOptions opts;
  opts.meta_coord = !cfg.no_meta_coord;
  opts.all_coord = cfg.all_coord;
  opts.layer_cap = cfg.layer_cap;
  opts.gap_budget = cfg.gap_budget;

  try {
    ParseOutcome outcome = parse(g, tokens, opts);
    std::vector<Term> forms;
    const ReshapeRules rules{cfg.reshape, cfg.reshape_too};
    for (const auto& r : outcome.results)
      forms.push_back(cfg.reshape || cfg.reshape_too
                          ? reshape(r.logical_form, g, rules)
                          : r.logical_form);
    rep.parsed = !forms.empty();

    std::ostream& trace_out = cfg.json ? static_cast<std::ostream&>(err) : out;
    if (cfg.trace)
      for (const auto& line : outcome.trace) trace_out << line << "\n";

    if (cfg.json) {
      out << emit_json(outcome, forms).dump() << "\n";
    } else if (forms.empty()) {
      out << "no parse\n";
    } else {
      for (const auto& f : forms) out << to_string(f) << "\n";
    }
  } catch (const LayerLimitExceeded& e) {
    err << "error: " << e.what() << "\n";
  } catch (const RewriteLimitExceeded& e) {
    err << "error: " << e.what() << "\n";
  }
  rep.out = out.str();
  rep.err = err.str();
  return rep;
}

}  // namespace

json emit_json(const ParseOutcome& outcome, const std::vector<Term>& forms) {
  json doc;
  doc["tokens"] = outcome.chart.tokens();

  json edges = json::array();
  for (const Edge& e : outcome.chart.edges()) {
    json je;
    je["id"] = e.id;
    je["cat"] = e.category;
    CanonicalNamer namer;
    json args = json::array();
    for (const auto& a : e.args) args.push_back(namer.format(a));
    je["args"] = std::move(args);
    je["start"] = e.start;
    je["end"] = e.end;
    je["layer"] = e.layer;
    je["provenance"] = provenance_json(e);
    edges.push_back(std::move(je));
  }
  doc["edges"] = std::move(edges);

  json parses = json::array();
  for (std::size_t i = 0; i < outcome.results.size(); ++i) {
    const Term& lf = i < forms.size() ? forms[i] : outcome.results[i].logical_form;
    parses.push_back({{"root_edge_id", outcome.results[i].root},
                      {"logical_form", to_string(lf)}});
  }
  doc["parses"] = std::move(parses);

  json constraints = json::array();
  for (const auto& c : outcome.constraints) {
    json res = json::array();
    for (const auto& r : c.resolutions)
      res.push_back({{"source", r.source}, {"target", r.target}, {"combined", r.combined}});
    constraints.push_back({{"N", c.conj_start},
                           {"M", c.conj_end},
                           {"connective", c.connective},
                           {"status", to_string(c.status)},
                           {"resolutions", std::move(res)}});
  }
  doc["constraints"] = std::move(constraints);
  return doc;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.layer_cap < 1) {
    err << "error: --layer-cap must be at least 1\n";
    return kExitUsage;
  }
  if (cfg.gap_budget < 0) {
    err << "error: --gap-budget must not be negative\n";
    return kExitUsage;
  }

  Grammar g;
  try {
    g = load_grammar(cfg.grammar_path);
  } catch (const std::exception& e) {
    err << "error: " << cfg.grammar_path << ": " << e.what() << "\n";
    return kExitUsage;
  }
  const auto diags = validate(g);
  for (const auto& d : diags) err << cfg.grammar_path << ": " << to_string(d) << "\n";
  if (has_errors(diags)) return kExitUsage;

  if (cfg.command == Command::Check) {
    out << "ok\n";
    return kExitOk;
  }

  std::vector<std::string> sentences;
  if (cfg.sentence) sentences.push_back(*cfg.sentence);
  if (cfg.sentence_file) {
    std::ifstream in(*cfg.sentence_file);
    if (!in) {
      err << "error: cannot read sentence file " << *cfg.sentence_file << "\n";
      return kExitUsage;
    }
    for (std::string line; std::getline(in, line);)
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        sentences.push_back(line);
  }
  if (sentences.empty()) {
    err << "error: no sentence given (use -s or -f)\n";
    return kExitUsage;
  }

  const bool header = sentences.size() > 1 && !cfg.json;
  std::vector<std::future<SentenceReport>> jobs;
  for (const auto& s : sentences)
    jobs.push_back(std::async(std::launch::async, run_sentence, std::cref(g),
                              std::cref(s), std::cref(cfg), header));

  bool all_parsed = true;
  for (auto& job : jobs) {
    const SentenceReport rep = job.get();
    out << rep.out;
    err << rep.err;
    all_parsed = all_parsed && rep.parsed;
  }
  return all_parsed ? kExitOk : kExitParseFailure;
}

}  // namespace dlgram
