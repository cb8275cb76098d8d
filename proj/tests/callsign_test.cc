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

#include "atcrole/callsign.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "test_util.h"

namespace atcrole {
namespace {

using testing::Words;

TEST_CASE("parse splits code, number and suffix") {
  CHECK(ParseCallsign("TVS84J") == Callsign{"TVS", "84", "J"});
  CHECK(ParseCallsign("LUF189AF") == Callsign{"LUF", "189", "AF"});
  CHECK(ParseCallsign("TVS8") == Callsign{"TVS", "8", ""});
  CHECK(ParseCallsign("BAW1234") == Callsign{"BAW", "1234", ""});
}

TEST_CASE("parse rejects malformed callsigns") {
  for (const char *bad : {"84TVS", "", "TVS", "TV84", "TVSA84", "TVS12345",
                          "TVS84ABC", "tvs84j", "TVS84J ", "TVS-84", "TVS8J4"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(ParseCallsign(bad), MalformedCallsign);
  }
}

TEST_CASE("parse round-trips random well-formed callsigns") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    std::string raw = testing::RandomCallsignString(rng);
    CHECK(ParseCallsign(raw).ToString() == raw);
  }
}

TEST_CASE("digit and letter words") {
  CHECK(SpokenDigit('8') == "eight");
  CHECK(SpokenDigit('0') == "zero");
  CHECK(SpokenDigit('9') == "nine");
  CHECK(SpokenDigit('9', DigitStyle::kIcao) == "niner");
  CHECK(SpokenDigit('3', DigitStyle::kIcao) == "tree");
  CHECK(SpokenDigit('5', DigitStyle::kIcao) == "fife");
  CHECK_THROWS_AS(SpokenDigit('x'), std::invalid_argument);

  CHECK(NatoLetter('J') == "juliett");
  CHECK(NatoLetter('A') == "alfa");
  CHECK(NatoLetter('Z') == "zulu");
  CHECK(NatoLetter('x') == "x-ray");
  CHECK_THROWS_AS(NatoLetter('1'), std::invalid_argument);
}

TEST_CASE("telephony lexicon file format") {
  std::istringstream is(
      "# comment\n\nTVS\tSkyTravel\nCSA\tcsa lines\n  # indented comment\n");
  TelephonyLexicon lex = TelephonyLexicon::Read(is);
  CHECK(lex.size() == 2);
  REQUIRE(lex.Lookup("TVS"));
  CHECK(*lex.Lookup("TVS") == Words("skytravel"));
  CHECK(*lex.Lookup("CSA") == Words("csa lines"));
  CHECK(lex.Lookup("XXX") == nullptr);

  std::istringstream bad_code("TV\tskytravel\n");
  CHECK_THROWS_AS(TelephonyLexicon::Read(bad_code), LexiconError);
  std::istringstream no_tab("TVS skytravel\n");
  CHECK_THROWS_AS(TelephonyLexicon::Read(no_tab), LexiconError);
  std::istringstream empty_designator("TVS\t   \n");
  CHECK_THROWS_AS(TelephonyLexicon::Read(empty_designator), LexiconError);
}

TEST_CASE("shipped telephony lexicon loads") {
  TelephonyLexicon lex =
      TelephonyLexicon::ReadFile(std::string(ATCROLE_DATA_DIR) + "/telephony.tsv");
  REQUIRE(lex.Lookup("TVS"));
  CHECK(*lex.Lookup("TVS") == Words("skytravel"));
  REQUIRE(lex.Lookup("LUF"));
  CHECK(*lex.Lookup("LUF") == Words("lufthansa"));
}

TEST_CASE("expand TVS84J and LUF189AF") {
  TelephonyLexicon lex = testing::SmallTelephony();
  auto tvs = ExpandCallsign(ParseCallsign("TVS84J"), lex);
  REQUIRE(tvs.size() == 3);
  CHECK(tvs[0] == SpokenVariant{Words("skytravel eight four juliett"),
                                VariantKind::kFullTelephony});
  CHECK(tvs[1] == SpokenVariant{Words("tango victor sierra eight four juliett"),
                                VariantKind::kLetterSpelled});
  CHECK(tvs[2] == SpokenVariant{Words("eight four juliett"), VariantKind::kShortened});

  auto luf = ExpandCallsign(ParseCallsign("LUF189AF"), lex);
  REQUIRE(luf.size() == 3);
  CHECK(luf[0].Text() == "lufthansa one eight nine alfa foxtrot");
  CHECK(luf[2].Text() == "one eight nine alfa foxtrot");

  auto niner = ExpandCallsign(ParseCallsign("LUF189AF"), lex, {DigitStyle::kIcao});
  CHECK(niner[0].Text() == "lufthansa one eight niner alfa foxtrot");
}

TEST_CASE("unknown airline omits the telephony variant") {
  auto v = ExpandCallsign(ParseCallsign("XXX1"), testing::SmallTelephony());
  REQUIRE(v.size() == 2);
  CHECK(v[0] == SpokenVariant{Words("x-ray x-ray x-ray one"), VariantKind::kLetterSpelled});
  CHECK(v[1] == SpokenVariant{Words("one"), VariantKind::kShortened});
}

TEST_CASE("expansion properties over random callsigns") {
  TelephonyLexicon lex = testing::SmallTelephony();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 3000; ++i) {
    std::string raw = testing::RandomCallsignString(rng);
    // Bias a share of cases towards codes the lexicon knows.
    if (i % 3 == 0) raw.replace(0, 3, i % 2 ? "TVS" : "CSA");
    CAPTURE(raw);
    Callsign cs = ParseCallsign(raw);
    auto variants = ExpandCallsign(cs, lex);

    auto find = [&](VariantKind k) {
      return std::find_if(variants.begin(), variants.end(),
                          [k](const SpokenVariant &v) { return v.kind == k; });
    };
    auto full = find(VariantKind::kFullTelephony);
    auto spelled = find(VariantKind::kLetterSpelled);
    auto shortened = find(VariantKind::kShortened);
    REQUIRE(spelled != variants.end());
    REQUIRE(shortened != variants.end());
    CHECK((full != variants.end()) == (lex.Lookup(cs.airline_code) != nullptr));

    for (const auto &v : variants) {
      CHECK(!v.tokens.empty());
      for (const auto &tok : v.tokens) CHECK(IsSpokenAlphabetToken(tok, lex));
      const auto &s = shortened->tokens;
      REQUIRE(v.tokens.size() >= s.size());
      CHECK(std::equal(s.rbegin(), s.rend(), v.tokens.rbegin()));
    }
  }
}

TEST_CASE("spoken alphabet membership") {
  TelephonyLexicon lex = testing::SmallTelephony();
  CHECK(IsSpokenAlphabetToken("lines", lex));
  CHECK(IsSpokenAlphabetToken("niner", lex));
  CHECK(IsSpokenAlphabetToken("x-ray", lex));
  CHECK_FALSE(IsSpokenAlphabetToken("descend", lex));
}

}  // namespace
}  // namespace atcrole
