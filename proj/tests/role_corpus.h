// Copyright 2026 The atcrole Authors.
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

// Generator of utterances built to reach one specific classifier branch.

#ifndef ATCROLE_TESTS_ROLE_CORPUS_H_
#define ATCROLE_TESTS_ROLE_CORPUS_H_

#include <random>
#include <string>
#include <vector>

#include "atcrole/callsign.h"
#include "atcrole/classifier.h"
#include "atcrole/text.h"
#include "json.hpp"
#include "test_util.h"

namespace atcrole::testing {

enum class Branch { kAtcoKeyword, kPilotKeyword, kKeywordConflict, kCallsignEarly, kFallback };

struct BranchCase {
  Branch branch;
  std::vector<std::string> tokens;
  std::vector<std::string> context;
  Role expected_role;
  RuleFired expected_rule;
};

// Words outside both role lists and outside the spoken callsign alphabet.
inline const std::vector<std::string> &Filler() {
  static const std::vector<std::string> words = {
      "good", "morning", "hello", "flight", "level", "heading", "descend",
      "direct", "proceeding", "thanks", "runway", "left", "right",
      "approach", "tower", "point", "via", "and"};
  return words;
}

inline std::string Pick(std::mt19937_64 &rng, const std::vector<std::string> &v) {
  return v[RandInt(rng, 0, static_cast<int>(v.size()) - 1)];
}

inline std::vector<std::string> FillerRun(std::mt19937_64 &rng, int lo, int hi) {
  std::vector<std::string> out(RandInt(rng, lo, hi));
  for (auto &w : out) w = Pick(rng, Filler());
  return out;
}

inline BranchCase MakeBranchCase(std::mt19937_64 &rng, Branch branch,
                                 const RoleLexicon &lex,
                                 const TelephonyLexicon &telephony) {
  const std::vector<std::string> atco(lex.atco_words().begin(), lex.atco_words().end());
  const std::vector<std::string> pilot(lex.pilot_words().begin(), lex.pilot_words().end());
  std::string raw = RandomCallsignString(rng);
  if (RandInt(rng, 0, 1)) raw.replace(0, 3, "TVS");
  auto variants = ExpandCallsign(ParseCallsign(raw), telephony);
  const auto &callsign = variants[RandInt(rng, 0, static_cast<int>(variants.size()) - 1)].tokens;

  BranchCase c{branch, {}, {raw, RandomCallsignString(rng)}, Role::kPilot,
               RuleFired::kCallsignLateOrAbsent};
  auto insert_at = [&c](size_t at, const std::vector<std::string> &words) {
    c.tokens.insert(c.tokens.begin() + at, words.begin(), words.end());
  };
  auto maybe_callsign = [&] {
    if (RandInt(rng, 0, 2) > 0)
      insert_at(RandInt(rng, 0, static_cast<int>(c.tokens.size())), callsign);
  };

  switch (branch) {
    case Branch::kAtcoKeyword:
    case Branch::kPilotKeyword: {
      bool is_atco = branch == Branch::kAtcoKeyword;
      c.tokens = FillerRun(rng, 0, 6);
      maybe_callsign();
      int n = RandInt(rng, 1, 2);
      for (int i = 0; i < n; ++i)
        insert_at(RandInt(rng, 0, static_cast<int>(c.tokens.size())),
                  {Pick(rng, is_atco ? atco : pilot)});
      c.expected_role = is_atco ? Role::kAtco : Role::kPilot;
      c.expected_rule = is_atco ? RuleFired::kAtcoKeyword : RuleFired::kPilotKeyword;
      break;
    }
    case Branch::kKeywordConflict: {
      c.tokens = FillerRun(rng, 0, 4);
      maybe_callsign();
      bool atco_first = RandInt(rng, 0, 1) == 1;
      size_t first = RandInt(rng, 0, static_cast<int>(c.tokens.size()));
      insert_at(first, {Pick(rng, atco_first ? atco : pilot)});
      size_t second = RandInt(rng, static_cast<int>(first) + 1,
                              static_cast<int>(c.tokens.size()));
      insert_at(second, {Pick(rng, atco_first ? pilot : atco)});
      c.expected_role = atco_first ? Role::kAtco : Role::kPilot;
      c.expected_rule = atco_first ? RuleFired::kAtcoKeyword : RuleFired::kPilotKeyword;
      break;
    }
    case Branch::kCallsignEarly: {
      c.tokens = FillerRun(rng, 0, 3);
      c.tokens.insert(c.tokens.end(), callsign.begin(), callsign.end());
      auto tail = FillerRun(rng, 0, 5);
      c.tokens.insert(c.tokens.end(), tail.begin(), tail.end());
      c.expected_role = Role::kAtco;
      c.expected_rule = RuleFired::kCallsignEarly;
      break;
    }
    case Branch::kFallback: {
      c.tokens = FillerRun(rng, 4, 8);
      if (RandInt(rng, 0, 1)) c.tokens.insert(c.tokens.end(), callsign.begin(), callsign.end());
      c.expected_role = Role::kPilot;
      c.expected_rule = RuleFired::kCallsignLateOrAbsent;
      break;
    }
  }
  return c;
}

inline std::string BranchCorpusLine(const std::string &id, const BranchCase &c) {
  nlohmann::json j{{"id", id},
                   {"text", JoinTokens(c.tokens)},
                   {"role", RoleName(c.expected_role)},
                   {"callsigns", c.context}};
  return j.dump() + "\n";
}

}  // namespace atcrole::testing

#endif  // ATCROLE_TESTS_ROLE_CORPUS_H_
