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

#include <random>
#include <sstream>

#include "doctest.h"
#include "role_corpus.h"
#include "test_util.h"

namespace atcrole {
namespace {

using testing::RandInt;
using testing::Words;

const RoleLexicon &ShippedLexicon() {
  static const RoleLexicon lex =
      RoleLexicon::ReadFile(std::string(ATCROLE_DATA_DIR) + "/role_lexicon.txt");
  return lex;
}

Classification Run(const std::string &text,
                   const std::vector<std::string> &context = {"TVS84J"},
                   const ClassifierOptions &opts = {}) {
  auto variants = ExpandContext(context, testing::SmallTelephony());
  return Classify(Words(text), ShippedLexicon(), variants, opts);
}

TEST_CASE("shipped lexicon") {
  const RoleLexicon &lex = ShippedLexicon();
  CHECK(lex.atco_words().size() == 25);
  CHECK(lex.pilot_words().size() == 9);
  for (const char *w : {"identified", "approved", "wind"})
    CHECK(lex.RoleOf(w) == Role::kAtco);
  for (const char *w : {"wilco", "maintaining", "we", "our"})
    CHECK(lex.RoleOf(w) == Role::kPilot);
  CHECK(lex.RoleOf("weather") == std::nullopt);
}

TEST_CASE("lexicon format and validation") {
  std::istringstream ok("# c\n[ATCO]\nCleared  # trailing\n\n[pilot]\nwilco\n");
  RoleLexicon lex = RoleLexicon::Read(ok);
  CHECK(lex.RoleOf("cleared") == Role::kAtco);
  CHECK(lex.RoleOf("wilco") == Role::kPilot);

  std::istringstream overlap("[atco]\nroger\n[pilot]\nroger\n");
  CHECK_THROWS_AS(RoleLexicon::Read(overlap), LexiconError);
  std::istringstream orphan("roger\n");
  CHECK_THROWS_AS(RoleLexicon::Read(orphan), LexiconError);
  std::istringstream unknown("[tower]\nroger\n");
  CHECK_THROWS_AS(RoleLexicon::Read(unknown), LexiconError);
}

TEST_CASE("early callsign without keywords is ATCO") {
  auto c = Run("skytravel eight four juliett descend flight level eight zero");
  CHECK(c.role == Role::kAtco);
  CHECK(c.trace.fired_rule == RuleFired::kCallsignEarly);
  REQUIRE(c.trace.callsign);
  CHECK(c.trace.callsign->start_index == 0);
  CHECK(c.trace.callsign->variant.kind == VariantKind::kFullTelephony);
}

TEST_CASE("pilot keyword beats an early callsign") {
  auto c = Run("wilco skytravel eight four juliett");
  CHECK(c.role == Role::kPilot);
  CHECK(c.trace.fired_rule == RuleFired::kPilotKeyword);
  REQUIRE(c.trace.keyword);
  CHECK(c.trace.keyword->word == "wilco");
  CHECK(c.trace.keyword->index == 0);
}

TEST_CASE("ATCO keyword anywhere") {
  auto c = Run("good morning skytravel eight four juliett wind two one zero");
  CHECK(c.role == Role::kAtco);
  CHECK(c.trace.fired_rule == RuleFired::kAtcoKeyword);
  CHECK(c.trace.keyword->word == "wind");
}

TEST_CASE("no evidence falls back to pilot") {
  auto c = Run("proceeding direct");
  CHECK(c.role == Role::kPilot);
  CHECK(c.trace.fired_rule == RuleFired::kCallsignLateOrAbsent);
  CHECK(c.trace.low_confidence);
  CHECK(!c.trace.keyword);
  CHECK(!c.trace.callsign);

  auto empty = Run("");
  CHECK(empty.role == Role::kPilot);
  CHECK(empty.trace.fired_rule == RuleFired::kCallsignLateOrAbsent);
}

TEST_CASE("callsign window is the first four words") {
  CHECK(Run("good morning hello there eight four juliett").role == Role::kPilot);
  CHECK(Run("good morning hello eight four juliett").role == Role::kAtco);
  ClassifierOptions narrow;
  narrow.callsign_window = 1;
  CHECK(Run("hello eight four juliett", {"TVS84J"}, narrow).role == Role::kPilot);
}

TEST_CASE("keyword conflict goes to the earliest keyword") {
  auto pilot_first = Run("we are cleared");
  CHECK(pilot_first.role == Role::kPilot);
  CHECK(pilot_first.trace.keyword_conflict);
  auto atco_first = Run("cleared to land we");
  CHECK(atco_first.role == Role::kAtco);
  CHECK(atco_first.trace.keyword_conflict);
  CHECK(atco_first.trace.keyword->index == 0);
}

TEST_CASE("callsign-first rule order") {
  ClassifierOptions opts;
  opts.rule_order = RuleOrder::kCallsignFirst;
  auto c = Run("wilco skytravel eight four juliett", {"TVS84J"}, opts);
  CHECK(c.role == Role::kAtco);
  CHECK(c.trace.fired_rule == RuleFired::kCallsignEarly);
  // Late callsign: keywords still decide.
  auto late = Run("one two three four wilco skytravel eight four juliett",
                  {"TVS84J"}, opts);
  CHECK(late.trace.fired_rule == RuleFired::kPilotKeyword);
}

TEST_CASE("keyword matching is whole-token") {
  auto c = Run("weather ourselves windy", {});
  CHECK(c.trace.fired_rule == RuleFired::kCallsignLateOrAbsent);
}

// Straight-line restatement of the decision procedure (keywords first).
std::pair<Role, RuleFired> ReferenceClassify(const std::vector<std::string> &tokens,
                                             const RoleLexicon &lex,
                                             const std::vector<CallsignVariant> &variants) {
  bool any_atco = false, any_pilot = false;
  for (const auto &t : tokens) {
    if (lex.atco_words().count(t)) any_atco = true;
    if (lex.pilot_words().count(t)) any_pilot = true;
  }
  if (any_atco && !any_pilot) return {Role::kAtco, RuleFired::kAtcoKeyword};
  if (any_pilot && !any_atco) return {Role::kPilot, RuleFired::kPilotKeyword};
  if (any_atco && any_pilot) {
    for (const auto &t : tokens) {
      if (lex.atco_words().count(t)) return {Role::kAtco, RuleFired::kAtcoKeyword};
      if (lex.pilot_words().count(t)) return {Role::kPilot, RuleFired::kPilotKeyword};
    }
  }
  for (size_t start = 0; start < 4 && start < tokens.size(); ++start) {
    for (const auto &v : variants) {
      const auto &vt = v.variant.tokens;
      if (start + vt.size() <= tokens.size() &&
          std::equal(vt.begin(), vt.end(), tokens.begin() + start))
        return {Role::kAtco, RuleFired::kCallsignEarly};
    }
  }
  return {Role::kPilot, RuleFired::kCallsignLateOrAbsent};
}

TEST_CASE("classify agrees with the reference procedure on random utterances") {
  const RoleLexicon &lex = ShippedLexicon();
  TelephonyLexicon tel = testing::SmallTelephony();
  std::vector<std::string> vocab = testing::Filler();
  for (const char *w : {"wilco", "we", "cleared", "wind", "skytravel", "eight",
                        "four", "juliett", "tango", "victor", "sierra"})
    vocab.push_back(w);
  std::mt19937_64 rng(21);
  for (int iter = 0; iter < 5000; ++iter) {
    std::vector<std::string> tokens(RandInt(rng, 0, 15));
    for (auto &t : tokens) t = testing::Pick(rng, vocab);
    auto variants = ExpandContext({"TVS84J", "TVS8"}, tel);
    auto got = Classify(tokens, lex, variants);
    auto want = ReferenceClassify(tokens, lex, variants);
    CAPTURE(JoinTokens(tokens));
    CHECK(got.role == want.first);
    CHECK(got.trace.fired_rule == want.second);
    // Evidence present iff a real rule fired.
    bool evidence = got.trace.keyword.has_value() || got.trace.callsign.has_value();
    CHECK(evidence == (got.trace.fired_rule != RuleFired::kCallsignLateOrAbsent));
    // Determinism.
    auto again = Classify(tokens, lex, variants);
    CHECK(again.trace.ToJson() == got.trace.ToJson());
  }
}

TEST_CASE("a single keyword decides regardless of callsign position") {
  const RoleLexicon &lex = ShippedLexicon();
  TelephonyLexicon tel = testing::SmallTelephony();
  auto variants = ExpandContext({"TVS84J"}, tel);
  std::mt19937_64 rng(8);
  for (int iter = 0; iter < 1000; ++iter) {
    bool atco = iter % 2 == 0;
    const auto &set = atco ? lex.atco_words() : lex.pilot_words();
    std::vector<std::string> words(set.begin(), set.end());
    auto tokens = testing::FillerRun(rng, 0, 5);
    auto cs = Words("skytravel eight four juliett");
    tokens.insert(tokens.begin() + RandInt(rng, 0, static_cast<int>(tokens.size())),
                  cs.begin(), cs.end());
    tokens.insert(tokens.begin() + RandInt(rng, 0, static_cast<int>(tokens.size())),
                  testing::Pick(rng, words));
    CHECK(Classify(tokens, lex, variants).role == (atco ? Role::kAtco : Role::kPilot));
  }
}

TEST_CASE("generated branch suite classifies with the intended rule") {
  const RoleLexicon &lex = ShippedLexicon();
  TelephonyLexicon tel = testing::SmallTelephony();
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 500; ++iter) {
    auto branch = static_cast<testing::Branch>(iter % 5);
    auto c = testing::MakeBranchCase(rng, branch, lex, tel);
    auto variants = ExpandContext(c.context, tel);
    auto got = Classify(c.tokens, lex, variants);
    CAPTURE(JoinTokens(c.tokens));
    CHECK(got.role == c.expected_role);
    CHECK(got.trace.fired_rule == c.expected_rule);
    CHECK(got.trace.keyword_conflict == (branch == testing::Branch::kKeywordConflict));
  }
}

TEST_CASE("split corpus partitions the input in order") {
  std::mt19937_64 rng(4);
  TelephonyLexicon tel = testing::SmallTelephony();
  std::string text;
  size_t expected_atco = 0;
  for (int i = 0; i < 10; ++i) {
    auto branch = i < 6 ? testing::Branch::kCallsignEarly : testing::Branch::kFallback;
    auto c = testing::MakeBranchCase(rng, branch, ShippedLexicon(), tel);
    expected_atco += c.expected_role == Role::kAtco;
    text += testing::BranchCorpusLine("u" + std::to_string(i), c);
  }
  REQUIRE(expected_atco == 6);
  for (size_t threads : {1, 3}) {
    std::istringstream corpus(text);
    std::vector<std::string> atco, pilot, traces;
    SplitSinks sinks;
    sinks.atco = [&](const Utterance &u) { atco.push_back(u.id); };
    sinks.pilot = [&](const Utterance &u) { pilot.push_back(u.id); };
    sinks.trace = [&](const Utterance &u, const Classification &c) {
      traces.push_back(u.id);
      CHECK(c.role == u.gold_role);
    };
    SplitOptions opts;
    opts.threads = threads;
    opts.chunk_size = 3;
    SplitCounts counts = SplitCorpus(corpus, ShippedLexicon(), tel, sinks, opts);
    CHECK(counts.total == 10);
    CHECK(counts.atco == 6);
    CHECK(counts.pilot == 4);
    CHECK(atco == std::vector<std::string>{"u0", "u1", "u2", "u3", "u4", "u5"});
    CHECK(pilot == std::vector<std::string>{"u6", "u7", "u8", "u9"});
    CHECK(traces.size() == 10);
  }
}

}  // namespace
}  // namespace atcrole
