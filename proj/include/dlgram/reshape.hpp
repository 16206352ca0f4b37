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

// Post-parse rewriting of logical forms.

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlgram/grammar.hpp"
#include "dlgram/term.hpp"

namespace dlgram {

/// pattern => template. Pattern variables match any subterm, including
/// variables of the rewritten term, which are treated as constants.
struct RewriteRule {
  std::string name;
  Term pattern;
  Term templ;
  std::function<bool(const Substitution&)> guard;

  /// Throws std::invalid_argument if the template uses a variable the
  /// pattern does not bind.
  RewriteRule(std::string name, Term pattern, Term templ,
              std::function<bool(const Substitution&)> guard = {});
};

/// One-way matching: binds pattern variables only.
std::optional<Substitution> match(const Term& pattern, const Term& t);

/// Q(X, C(R1,R2), S) => C(Q(X,R1,S), Q(X,R2,S)) for each declared
/// quantifier Q and connective C.
std::vector<RewriteRule> distribution_rules(const Grammar& g);

/// but(if(P1,C1), if(too(P2),C2)) =>
///   and(if(and(P1,no(P2)),C1), if(and(P1,P2),C2))
RewriteRule too_rule();

struct ReshapeRules {
  bool distribute = true;
  bool too = false;
};

std::vector<RewriteRule> builtin_rules(const Grammar& g, const ReshapeRules& enabled);

class RewriteLimitExceeded : public std::runtime_error {
 public:
  explicit RewriteLimitExceeded(std::size_t cap);
};

/// One innermost, leftmost rewrite; nullopt when t is a normal form.
std::optional<Term> rewrite_step(const Term& t, const std::vector<RewriteRule>& rules);

/// Rewrites innermost-first until no rule applies.
Term reshape(const Term& t, const std::vector<RewriteRule>& rules,
             std::size_t step_cap = 1000);
Term reshape(const Term& t, const Grammar& g, const ReshapeRules& enabled = {},
             std::size_t step_cap = 1000);

}  // namespace dlgram
