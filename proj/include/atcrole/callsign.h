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

// ICAO callsign parsing and expansion into spoken-word variants.
//
// A callsign such as "TVS84J" is an airline designator (TVS), a flight number
// (84) and an optional letter suffix (J). Over the radio it may be spoken with
// the airline's telephony designator ("skytravel eight four juliett"), with
// the designator spelled in the NATO alphabet ("tango victor sierra eight four
// juliett"), or shortened to the number and suffix ("eight four juliett").

#ifndef ATCROLE_CALLSIGN_H_
#define ATCROLE_CALLSIGN_H_

#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace atcrole {

class MalformedCallsign : public std::runtime_error {
 public:
  explicit MalformedCallsign(const std::string &raw)
      : std::runtime_error("malformed callsign: '" + raw + "'"), raw_(raw) {}
  const std::string &raw() const { return raw_; }

 private:
  std::string raw_;
};

class LexiconError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Callsign {
  std::string airline_code;  // [A-Z]{3}
  std::string number_part;   // [0-9]{1,4}
  std::string suffix;        // [A-Z]{0,2}

  std::string ToString() const {
    return airline_code + number_part + suffix;
  }
  bool operator==(const Callsign &) const = default;
  auto operator<=>(const Callsign &) const = default;
};

/// Parses "TVS84J"-style callsigns. Throws MalformedCallsign unless the input
/// matches [A-Z]{3}[0-9]{1,4}[A-Z]{0,2}.
Callsign ParseCallsign(std::string_view raw);

enum class DigitStyle {
  kPlain,  // zero one two ... nine
  kIcao,   // tree, fife, niner alternates
};

/// Spoken word for a digit '0'..'9'. Throws std::invalid_argument otherwise.
std::string SpokenDigit(char digit, DigitStyle style = DigitStyle::kPlain);

/// Lowercase NATO alphabet word for a letter (case-insensitive).
std::string NatoLetter(char letter);

/// Maps 3-letter ICAO airline designators to their spoken telephony
/// designator, stored as a token sequence ("air berlin" -> {"air","berlin"}).
class TelephonyLexicon {
 public:
  TelephonyLexicon() = default;

  /// Reads `CODE<TAB>designator` lines; '#' lines and blank lines are skipped.
  static TelephonyLexicon Read(std::istream &is);
  static TelephonyLexicon ReadFile(const std::string &path);

  /// Throws LexiconError on a bad code or an empty designator.
  void Add(const std::string &code, const std::string &designator);

  const std::vector<std::string> *Lookup(std::string_view code) const;
  size_t size() const { return entries_.size(); }

  /// True if `token` occurs in some telephony designator.
  bool HasDesignatorToken(std::string_view token) const;

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

enum class VariantKind { kFullTelephony, kLetterSpelled, kShortened };

const char *VariantKindName(VariantKind kind);

struct SpokenVariant {
  std::vector<std::string> tokens;
  VariantKind kind = VariantKind::kShortened;

  std::string Text() const;
  bool operator==(const SpokenVariant &) const = default;
};

struct ExpandOptions {
  DigitStyle digit_style = DigitStyle::kPlain;
};

/// Returns the spoken variants of `cs`, in the order full telephony (only
/// when the lexicon knows the airline), letter-spelled, shortened. Variants
/// with identical token sequences are reported once.
std::vector<SpokenVariant> ExpandCallsign(const Callsign &cs,
                                          const TelephonyLexicon &lex,
                                          const ExpandOptions &opts = {});

/// True if `token` belongs to the closed alphabet variants are drawn from:
/// telephony designator words, NATO letter words and digit words.
bool IsSpokenAlphabetToken(std::string_view token, const TelephonyLexicon &lex);

}  // namespace atcrole

#endif  // ATCROLE_CALLSIGN_H_
