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

#include "atcrole/classifier.h"

#include <fstream>

#include "atcrole/text.h"

namespace atcrole {

using nlohmann::json;

RoleLexicon::RoleLexicon(std::set<std::string, std::less<>> atco_words,
                         std::set<std::string, std::less<>> pilot_words)
    : atco_(std::move(atco_words)), pilot_(std::move(pilot_words)) {
  for (const auto &w : atco_)
    if (pilot_.count(w))
      throw LexiconError("role lexicon word '" + w +
                         "' is listed for both atco and pilot");
}

RoleLexicon RoleLexicon::Read(std::istream &is) {
  std::set<std::string, std::less<>> atco, pilot;
  std::set<std::string, std::less<>> *section = nullptr;
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string_view sv = line;
    if (size_t hash = sv.find('#'); hash != std::string_view::npos)
      sv = sv.substr(0, hash);
    sv = Trim(sv);
    if (sv.empty()) continue;
    if (sv.front() == '[') {
      std::string name = ToLower(sv);
      if (name == "[atco]") {
        section = &atco;
      } else if (name == "[pilot]") {
        section = &pilot;
      } else {
        throw LexiconError("role lexicon line " + std::to_string(line_no) +
                           ": unknown section " + std::string(sv));
      }
      continue;
    }
    if (!section)
      throw LexiconError("role lexicon line " + std::to_string(line_no) +
                         ": word outside of a section");
    auto words = SplitWhitespace(sv);
    if (words.size() != 1)
      throw LexiconError("role lexicon line " + std::to_string(line_no) +
                         ": expected one word");
    section->insert(ToLower(words[0]));
  }
  return RoleLexicon(std::move(atco), std::move(pilot));
}

RoleLexicon RoleLexicon::ReadFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw LexiconError("cannot open role lexicon " + path);
  return Read(is);
}

std::optional<Role> RoleLexicon::RoleOf(std::string_view word) const {
  if (atco_.find(word) != atco_.end()) return Role::kAtco;
  if (pilot_.find(word) != pilot_.end()) return Role::kPilot;
  return std::nullopt;
}

const char *RuleFiredName(RuleFired rule) {
  switch (rule) {
    case RuleFired::kAtcoKeyword: return "ATCO_KEYWORD";
    case RuleFired::kPilotKeyword: return "PILOT_KEYWORD";
    case RuleFired::kCallsignEarly: return "CALLSIGN_EARLY";
    case RuleFired::kCallsignLateOrAbsent: return "CALLSIGN_LATE_OR_ABSENT";
  }
  return "?";
}

json ClassificationTrace::ToJson() const {
  json j{{"rule", RuleFiredName(fired_rule)}};
  if (keyword) {
    j["evidence"] = {{"keyword", keyword->word}, {"index", keyword->index}};
  } else if (callsign) {
    j["evidence"] = MatchToJson(*callsign);
  } else {
    j["evidence"] = nullptr;
  }
  if (keyword_conflict) j["keyword_conflict"] = true;
  if (low_confidence) j["low_confidence"] = true;
  return j;
}

namespace {

std::optional<Classification> ByKeywords(std::span<const std::string> tokens,
                                         const RoleLexicon &lex) {
  std::optional<KeywordEvidence> first_atco, first_pilot;
  for (size_t i = 0; i < tokens.size(); ++i) {
    auto role = lex.RoleOf(tokens[i]);
    if (!role) continue;
    auto &slot = *role == Role::kAtco ? first_atco : first_pilot;
    if (!slot) slot = KeywordEvidence{tokens[i], i};
    if (first_atco && first_pilot) break;
  }
  if (!first_atco && !first_pilot) return std::nullopt;

  Classification c;
  c.trace.keyword_conflict = first_atco && first_pilot;
  bool atco_wins =
      first_atco && (!first_pilot || first_atco->index < first_pilot->index);
  if (atco_wins) {
    c.role = Role::kAtco;
    c.trace.fired_rule = RuleFired::kAtcoKeyword;
    c.trace.keyword = first_atco;
  } else {
    c.role = Role::kPilot;
    c.trace.fired_rule = RuleFired::kPilotKeyword;
    c.trace.keyword = first_pilot;
  }
  return c;
}

std::optional<Classification> ByCallsignPosition(
    std::span<const std::string> tokens,
    std::span<const CallsignVariant> variants, size_t window) {
  if (variants.empty()) return std::nullopt;
  auto matches = FindMatches(tokens, variants);
  // Sorted by start, longest first.
  if (matches.empty() || matches.front().start_index >= window)
    return std::nullopt;
  Classification c;
  c.role = Role::kAtco;
  c.trace.fired_rule = RuleFired::kCallsignEarly;
  c.trace.callsign = std::move(matches.front());
  return c;
}

}  // namespace

Classification Classify(std::span<const std::string> tokens,
                        const RoleLexicon &lex,
                        std::span<const CallsignVariant> variants,
                        const ClassifierOptions &opts) {
  std::optional<Classification> c;
  if (opts.rule_order == RuleOrder::kKeywordsFirst) {
    c = ByKeywords(tokens, lex);
    if (!c) c = ByCallsignPosition(tokens, variants, opts.callsign_window);
  } else {
    c = ByCallsignPosition(tokens, variants, opts.callsign_window);
    if (!c) c = ByKeywords(tokens, lex);
  }
  if (c) return *c;

  Classification fallback;
  fallback.role = Role::kPilot;
  fallback.trace.fired_rule = RuleFired::kCallsignLateOrAbsent;
  fallback.trace.low_confidence = true;
  return fallback;
}

json SplitCounts::ToJson() const {
  return json{{"total", total},
              {"atco", atco},
              {"pilot", pilot},
              {"malformed_callsigns", malformed_callsigns},
              {"no_context", no_context}};
}

json TraceRecord(const Utterance &utt, const Classification &c) {
  json j{{"id", utt.id}, {"role", RoleName(c.role)}};
  json t = c.trace.ToJson();
  for (auto it = t.begin(); it != t.end(); ++it) j[it.key()] = it.value();
  if (utt.gold_role) j["gold"] = RoleName(*utt.gold_role);
  return j;
}

SplitCounts SplitCorpus(std::istream &corpus, const RoleLexicon &lex,
                        const TelephonyLexicon &telephony,
                        const SplitSinks &sinks, const SplitOptions &opts) {
  SplitCounts counts;
  std::vector<Classification> results;
  std::vector<uint64_t> malformed;
  ForEachUtteranceChunk(corpus, opts.chunk_size, [&](std::vector<Utterance> &chunk) {
    results.assign(chunk.size(), {});
    malformed.assign(chunk.size(), 0);
    ParallelFor(chunk.size(), opts.threads, [&](size_t i) {
      std::vector<CallsignVariant> variants;
      if (chunk[i].context_callsigns)
        variants = ExpandContext(*chunk[i].context_callsigns, telephony,
                                 &malformed[i], opts.expand);
      results[i] = Classify(chunk[i].tokens, lex, variants, opts.classifier);
    });
    for (size_t i = 0; i < chunk.size(); ++i) {
      ++counts.total;
      counts.malformed_callsigns += malformed[i];
      if (!chunk[i].context_callsigns) ++counts.no_context;
      if (results[i].role == Role::kAtco) {
        ++counts.atco;
        if (sinks.atco) sinks.atco(chunk[i]);
      } else {
        ++counts.pilot;
        if (sinks.pilot) sinks.pilot(chunk[i]);
      }
      if (sinks.trace) sinks.trace(chunk[i], results[i]);
    }
  });
  return counts;
}

}  // namespace atcrole
