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

// Grammar-based speaker role classification (ATCO vs. pilot).
//
// An utterance is labelled from role-specific phraseology keywords and from
// where the addressed callsign appears: controllers open with the callsign,
// pilots usually read back first and name the callsign at the end.

#ifndef ATCROLE_CLASSIFIER_H_
#define ATCROLE_CLASSIFIER_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "atcrole/corpus_io.h"
#include "atcrole/matcher.h"
#include "json.hpp"

namespace atcrole {

class RoleLexicon {
 public:
  RoleLexicon() = default;
  /// Throws LexiconError if the two word sets intersect.
  RoleLexicon(std::set<std::string, std::less<>> atco_words,
              std::set<std::string, std::less<>> pilot_words);

  /// Sectioned text format: `[atco]` and `[pilot]` headers, one word per
  /// line, `#` starts a comment (whole line or trailing).
  static RoleLexicon Read(std::istream &is);
  static RoleLexicon ReadFile(const std::string &path);

  const std::set<std::string, std::less<>> &atco_words() const { return atco_; }
  const std::set<std::string, std::less<>> &pilot_words() const { return pilot_; }

  std::optional<Role> RoleOf(std::string_view word) const;

 private:
  std::set<std::string, std::less<>> atco_;
  std::set<std::string, std::less<>> pilot_;
};

enum class RuleFired {
  kAtcoKeyword,
  kPilotKeyword,
  kCallsignEarly,
  kCallsignLateOrAbsent,
};

const char *RuleFiredName(RuleFired rule);

enum class RuleOrder { kKeywordsFirst, kCallsignFirst };

struct KeywordEvidence {
  std::string word;
  size_t index = 0;
};

struct ClassificationTrace {
  RuleFired fired_rule = RuleFired::kCallsignLateOrAbsent;
  // Exactly one of these is set unless fired_rule is kCallsignLateOrAbsent.
  std::optional<KeywordEvidence> keyword;
  std::optional<CallsignMatch> callsign;
  // Both keyword classes occurred and the earliest one decided.
  bool keyword_conflict = false;
  // Set when no evidence was found and the pilot fallback applied.
  bool low_confidence = false;

  nlohmann::json ToJson() const;
};

struct Classification {
  Role role = Role::kPilot;
  ClassificationTrace trace;
};

struct ClassifierOptions {
  RuleOrder rule_order = RuleOrder::kKeywordsFirst;
  // A callsign starting within the first `callsign_window` tokens counts as
  // the utterance opening with it (greetings often come first).
  size_t callsign_window = 4;
};

Classification Classify(std::span<const std::string> tokens,
                        const RoleLexicon &lex,
                        std::span<const CallsignVariant> variants,
                        const ClassifierOptions &opts = {});

struct SplitCounts {
  uint64_t total = 0;
  uint64_t atco = 0;
  uint64_t pilot = 0;
  uint64_t malformed_callsigns = 0;
  uint64_t no_context = 0;

  nlohmann::json ToJson() const;
};

struct SplitSinks {
  std::function<void(const Utterance &)> atco;
  std::function<void(const Utterance &)> pilot;
  std::function<void(const Utterance &, const Classification &)> trace;
};

struct SplitOptions {
  ClassifierOptions classifier;
  ExpandOptions expand;
  size_t threads = 1;
  size_t chunk_size = 4096;
};

/// Classifies every utterance of a JSONL corpus and routes it to exactly one
/// of the role sinks; the trace sink sees every decision. Output order is
/// input order.
SplitCounts SplitCorpus(std::istream &corpus, const RoleLexicon &lex,
                        const TelephonyLexicon &telephony,
                        const SplitSinks &sinks, const SplitOptions &opts = {});

/// One trace record as written by the classify stage:
/// {"id", "role" (predicted), "rule", "evidence", ["gold"]}.
nlohmann::json TraceRecord(const Utterance &utt, const Classification &c);

}  // namespace atcrole

#endif  // ATCROLE_CLASSIFIER_H_
